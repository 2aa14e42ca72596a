use wavepacket::circuit::{apply_circuit, circuit_to_unitary, lower_multicontrol};
use wavepacket::diag::BetaProfile;
use wavepacket::gabor::{assemble_vg_matrix, blended_gabor_circuit_with, BlockMode};
use wavepacket::oracle::{basis, perm_defs, shannon_basis, tg_matrix, tw_matrix};
use wavepacket::perm::{perm_table, q_perm_circuit};
use wavepacket::tensor::{basis_vector, dagger, kron, max_abs_diff, Matrix, C64};
use wavepacket::transform::{build_circuit, build_lowered, TransformKind, TransformParams};
use wavepacket::wavelet::{
    shannon_circuit, wk_matrix, wk_tilde_matrix, wl_block_matrix, wl_circuit, wl_tilde_matrix, wr_circuit,
};

fn permutation_matrix(table: &[usize]) -> Matrix {
    let mut p = Matrix::zeros(table.len());
    for (x, &y) in table.iter().enumerate() {
        p[(y, x)] = C64::new(1.0, 0.0);
    }
    p
}

#[test]
fn every_kind_matches_reference_up_to_n6() {
    for kind in TransformKind::ALL {
        for n in kind.min_n()..=6 {
            for b in 0..n {
                for beta in [BetaProfile::Linear, BetaProfile::Deg7] {
                    let Ok(p) = TransformParams::new(kind, n, Some(b), beta) else { continue };
                    let u = circuit_to_unitary(&build_circuit(&p).unwrap()).unwrap();
                    let err = u.max_abs_diff(&basis(&p).unwrap().analysis());
                    assert!(err < 1e-10, "{} err {err:e}", p.label());
                }
            }
        }
    }
}

#[test]
fn lowering_preserves_every_kind() {
    for kind in TransformKind::ALL {
        let p = TransformParams::new(kind, 5, None, BetaProfile::Quadratic).unwrap();
        let u = circuit_to_unitary(&build_circuit(&p).unwrap()).unwrap();
        let lowered = build_lowered(&p).unwrap();
        assert!(lowered.ancilla <= 2);
        assert!(circuit_to_unitary(&lowered).unwrap().max_abs_diff(&u) < 1e-12);
    }
}

#[test]
fn blended_block_modes_agree_with_custom_lowered() {
    let c = blended_gabor_circuit_with(6, 2, BetaProfile::Deg7, BlockMode::Custom).unwrap();
    let s = blended_gabor_circuit_with(6, 2, BetaProfile::Deg7, BlockMode::Synthesized).unwrap();
    let uc = circuit_to_unitary(&lower_multicontrol(&c)).unwrap();
    assert!(uc.max_abs_diff(&circuit_to_unitary(&s).unwrap()) < 1e-12);
}

#[test]
fn vg_conjugates_to_tg() {
    for (n, b) in [(3, 1), (5, 1), (5, 2), (6, 3)] {
        let m = n - b + 1;
        let q = kron(&permutation_matrix(&perm_defs::q_table(m)), &Matrix::identity(1 << (b - 1)));
        let vg = assemble_vg_matrix(b, n, BetaProfile::Quadratic);
        let tg = tg_matrix(n, b, BetaProfile::Quadratic).unwrap();
        assert!(dagger(&q).matmul(&vg).matmul(&q).max_abs_diff(&tg) < 1e-12);
        assert_eq!(perm_table(&q_perm_circuit(m).unwrap()).unwrap(), perm_defs::q_table(m));
    }
}

/// Embeds a block given by its row map into an `N × N` identity.
fn embed(nn: usize, block: &Matrix, rows: impl Fn(usize) -> usize) -> Matrix {
    let mut out = Matrix::identity(nn);
    for r in 0..block.dim() {
        for s in 0..block.dim() {
            out[(rows(r), rows(s))] = block[(r, s)];
        }
    }
    out
}

#[test]
fn level_circuits_match_their_blocks() {
    let beta = BetaProfile::Linear;
    for n in 3..=7 {
        let nn = 1usize << n;
        let half = nn / 2;
        let wr1 = embed(nn, &wk_tilde_matrix(n, beta).unwrap(), |r| half + r);
        assert!(circuit_to_unitary(&wr_circuit(n, 1, beta).unwrap()).unwrap().max_abs_diff(&wr1) < 1e-12);
        let wl1 = embed(nn, &wl_tilde_matrix(n, beta).unwrap(), |r| r);
        assert!(circuit_to_unitary(&wl_circuit(n, 1, beta).unwrap()).unwrap().max_abs_diff(&wl1) < 1e-12);
        for j in 2..=n {
            let a = nn >> j;
            let wr = embed(nn, &wk_matrix(n, j, beta).unwrap(), |r| if r < a { a + r } else { nn - 2 * a + r });
            let got = circuit_to_unitary(&wr_circuit(n, j, beta).unwrap()).unwrap();
            assert!(got.max_abs_diff(&wr) < 1e-12, "W_R n={n} j={j}");
            let wl = embed(nn, &wl_block_matrix(n, j, beta).unwrap(), |r| if r < a { r } else { nn - 3 * a + r });
            let got = circuit_to_unitary(&wl_circuit(n, j, beta).unwrap()).unwrap();
            assert!(got.max_abs_diff(&wl) < 1e-12, "W_L n={n} j={j}");
        }
    }
}

#[test]
fn level_circuits_commute_and_multiply_to_tw() {
    let (n, beta) = (5, BetaProfile::Quadratic);
    let mut parts: Vec<Matrix> = Vec::new();
    for j in 1..=n {
        parts.push(circuit_to_unitary(&wr_circuit(n, j, beta).unwrap()).unwrap());
        parts.push(circuit_to_unitary(&wl_circuit(n, j, beta).unwrap()).unwrap());
    }
    for a in &parts {
        for b in &parts {
            assert!(a.matmul(b).max_abs_diff(&b.matmul(a)) < 1e-12);
        }
    }
    let product = parts.iter().fold(Matrix::identity(1 << n), |acc, m| acc.matmul(m));
    assert!(product.max_abs_diff(&tw_matrix(n, beta).unwrap()) < 1e-12);
}

#[test]
fn level_supports_are_disjoint() {
    let (n, beta) = (6, BetaProfile::Deg7);
    let nn = 1usize << n;
    let mut owner = vec![None; nn];
    for j in 1..=n {
        for (tag, c) in [("R", wr_circuit(n, j, beta).unwrap()), ("L", wl_circuit(n, j, beta).unwrap())] {
            let u = circuit_to_unitary(&c).unwrap();
            for r in 0..nn {
                let moved = (0..nn)
                    .any(|s| (u[(r, s)] - if r == s { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).norm() > 1e-12);
                if moved {
                    assert!(owner[r].is_none(), "row {r} touched by {:?} and {tag}{j}", owner[r]);
                    owner[r] = Some((tag, j));
                }
            }
        }
    }
    assert!(owner[0].is_none(), "index 0 must pass through");
}

#[test]
fn shannon_constant_signal_lands_on_scaling_slot() {
    for n in 2..=8 {
        let nn = 1usize << n;
        let f = vec![C64::new(1.0 / (nn as f64).sqrt(), 0.0); nn];
        let a = apply_circuit(&shannon_circuit(n).unwrap(), &f).unwrap();
        assert!(max_abs_diff(&a, &basis_vector(nn, nn - 1)) < 1e-12);
    }
}

#[test]
fn basis_columns_map_to_unit_vectors() {
    let cases = [
        (TransformKind::GaborSharp, 5, 1, 5),
        (TransformKind::Shannon, 5, 0, 3),
        (TransformKind::GaborBlended, 6, 2, 17),
        (TransformKind::Meyer, 6, 0, 40),
    ];
    for (kind, n, b, k) in cases {
        let p = TransformParams::new(kind, n, Some(b), BetaProfile::Quadratic).unwrap();
        let psi = basis(&p).unwrap();
        let out = apply_circuit(&build_circuit(&p).unwrap(), &psi.matrix.column(k)).unwrap();
        assert!(max_abs_diff(&out, &basis_vector(1 << n, k)) < 1e-10, "{}", p.label());
    }
}

#[test]
fn shannon_level_supports_are_disjoint() {
    let psi = shannon_basis(6).unwrap();
    let mut used = [false; 64];
    let mut start = 0;
    for j in 1..=6 {
        let cols = 1usize << (6 - j);
        for (k, seen) in used.iter_mut().enumerate() {
            if (start..start + cols).any(|col| psi.hat[(k, col)].norm() > 0.0) {
                assert!(!*seen);
                *seen = true;
            }
        }
        start += cols;
    }
}

#[test]
fn sharp_spot_checks_at_n9_n10() {
    for n in [9, 10] {
        let p = TransformParams::new(TransformKind::GaborSharp, n, None, BetaProfile::Linear).unwrap();
        let u = circuit_to_unitary(&build_circuit(&p).unwrap()).unwrap();
        assert!(u.max_abs_diff(&basis(&p).unwrap().analysis()) < 1e-10);
    }
}
