//! Reference entries computed by an independent dense implementation of the
//! basis and reallocation formulas, frozen here as literals.

use wavepacket::diag::{monomial_expand, BetaProfile};
use wavepacket::gabor::vg_blocks;
use wavepacket::oracle::{blended_gabor_basis, meyer_basis, tg_matrix, tw_matrix};
use wavepacket::tensor::{c, C64};
use wavepacket::wavelet::{comparator_prefixes, wk_tilde_matrix};

fn close(got: C64, re: f64, im: f64) {
    assert!((got - c(re, im)).norm() < 1e-12, "got {got}, want {re}{im:+}i");
}

#[test]
fn meyer_quadratic_n4_entries() {
    let psi = meyer_basis(4, BetaProfile::Quadratic).unwrap();
    close(psi.hat[(3, 1)], -0.006638808497310587, 0.016027501512204972);
    close(psi.hat[(6, 8)], 0.0, 0.0);
    close(psi.hat[(13, 9)], -0.4993977281025862, 0.0);
}

#[test]
fn tw_quadratic_n5_entries() {
    let t = tw_matrix(5, BetaProfile::Quadratic).unwrap();
    close(t[(14, 14)], -0.6438315428897916, 0.7651672656224588);
    close(t[(18, 18)], -0.6438315428897916, -0.7651672656224588);
    close(t[(27, 27)], 0.38222247341125115, -0.9227666791532321);
    close(t[(27, 3)], 0.04533262001903112, 0.018777386029788765);
    close(t[(3, 27)], -0.049067674327418126, 0.0);
    close(t[(14, 18)], 0.0, 0.0);
}

#[test]
fn blended_deg7_n5_b2_entries() {
    let psi = blended_gabor_basis(5, 2, BetaProfile::Deg7).unwrap();
    close(psi.hat[(3, 0)], 0.3246366785098654, -0.13446891508254052);
    close(psi.hat[(6, 5)], 0.0, 0.0);
    close(psi.hat[(30, 2)], -0.35355339059327373, 0.0);
    close(psi.matrix[(0, 0)], 0.4901343149378791, 0.0);
    close(psi.matrix[(17, 11)], -0.004812498993403566, 0.0);
}

#[test]
fn tg_deg7_n5_b2_row9() {
    let t = tg_matrix(5, 2, BetaProfile::Deg7).unwrap();
    close(t[(9, 9)], 0.9182111871848119, -0.3803355268546497);
    close(t[(9, 25)], 0.04232607256670823, 0.10218417843253477);
    let nonzero = (0..32).filter(|&k| t[(9, k)].norm() > 1e-12).count();
    assert_eq!(nonzero, 2);
}

#[test]
fn ke_corner_for_linear_b2() {
    let k = vg_blocks(2, BetaProfile::Linear).k_e;
    let want = C64::from_polar(std::f64::consts::FRAC_PI_4.cos(), -std::f64::consts::FRAC_PI_4);
    assert!((k[(0, 0)] - want).norm() < 1e-15);
}

#[test]
fn tilde_block_first_entry() {
    for beta in BetaProfile::ALL {
        close(wk_tilde_matrix(6, beta).unwrap()[(0, 0)], -1.0, 0.0);
    }
}

#[test]
fn cubic_coefficients() {
    let mut coeffs: Vec<u128> = monomial_expand(3, 3).unwrap().into_iter().map(|m| m.coeff).collect();
    coeffs.sort_unstable();
    assert_eq!(coeffs, vec![1, 8, 18, 48, 60, 64, 144]);
}

#[test]
fn comparator_prefix_sets() {
    assert_eq!(comparator_prefixes(5), ["00", "0100", "01010"]);
    assert_eq!(comparator_prefixes(3), ["00", "010"]);
    assert_eq!(comparator_prefixes(2), ["00", "01"]);
}
