//! Sharp and blended Gabor transform circuits.
//!
//! Both start with a full QFT and end with `S_{N,B}` followed by a
//! `(b+1)`-qubit inverse QFT on the low qubits. The blended circuit inserts
//! the reallocation `T_G` between them, conjugated into the block-diagonal
//! form `V_G` by `Q_{2N/B} ⊗ I_{B/2}`.

use crate::circuit::{Circuit, Control, Gate};
use crate::diag::{BetaProfile, DiagError, PhasePoly, RealPolynomial};
use crate::perm::{q_perm_circuit, s_perm_circuit};
use crate::qft::{iqft_circuit, qft_circuit};
use crate::tensor::{direct_sum, kron, Matrix, C64};
use crate::transform::{BuildError, TransformKind, TransformParams};
use std::f64::consts::PI;

/// How the `V_G` blocks are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMode {
    /// Dense `B × B` custom gates with multi-qubit controls.
    Custom,
    /// Hadamards around `Rz`-synthesized phase polynomials.
    #[default]
    Synthesized,
}

/// The four `B × B` blocks of `V_G`.
#[derive(Debug, Clone)]
pub struct VgBlocks {
    pub k_hat_e: Matrix,
    pub k_e: Matrix,
    pub k_o: Matrix,
    pub k_hat_o: Matrix,
}

fn diag_phases(v: &[f64]) -> Matrix {
    Matrix::from_diag(&v.iter().map(|&t| C64::from_polar(1.0, t)).collect::<Vec<_>>())
}

/// `(H ⊗ I) diag(e^{i a}, e^{i c}) (H ⊗ I)` for phase vectors `a`, `c`.
fn hadamard_sandwich(a: &[f64], c: &[f64]) -> Matrix {
    let hi = kron(&Matrix::hadamard(), &Matrix::identity(a.len()));
    hi.matmul(&direct_sum(&diag_phases(a), &diag_phases(c))).matmul(&hi)
}

fn d_minus(b: usize) -> Vec<f64> {
    let bb = (1usize << b) as f64;
    (0..1usize << (b - 1)).map(|k| k as f64 / bb - 0.5).collect()
}

fn d_plus(b: usize) -> Vec<f64> {
    let bb = (1usize << b) as f64;
    (0..1usize << (b - 1)).map(|k| k as f64 / bb).collect()
}

fn beta_of(beta: BetaProfile, d: &[f64]) -> Vec<f64> {
    d.iter().map(|&x| beta.eval(x).expect("window offsets lie in [-1/2, 1/2)")).collect()
}

/// Dense `K̂_e`, `K_e`, `K_o`, `K̂_o` for window exponent `b ≥ 1`.
pub fn vg_blocks(b: usize, beta: BetaProfile) -> VgBlocks {
    assert!(b >= 1, "V_G blocks need b >= 1");
    let (dm, dp) = (d_minus(b), d_plus(b));
    let (bm, bp) = (beta_of(beta, &dm), beta_of(beta, &dp));
    let phase = |sb: f64, bv: &[f64], d: &[f64]| -> Vec<f64> {
        bv.iter().zip(d).map(|(&bt, &x)| 0.5 * (sb * PI * bt + PI * x)).collect()
    };
    let (e_plus, e_minus) = (phase(1.0, &bm, &dm), phase(-1.0, &bm, &dm));
    let (o_minus, o_plus) = (phase(-1.0, &bp, &dp), phase(1.0, &bp, &dp));
    VgBlocks {
        k_hat_e: kron(&Matrix::identity(2), &diag_phases(&e_plus)),
        k_e: hadamard_sandwich(&e_plus, &e_minus),
        k_o: hadamard_sandwich(&o_minus, &o_plus),
        k_hat_o: kron(&Matrix::identity(2), &diag_phases(&o_minus)),
    }
}

/// `V_G` as an `N × N` block-diagonal matrix: `K̂_e`, then `K_o` and `K_e`
/// alternating, closing with `K̂_o`.
pub fn assemble_vg_matrix(b: usize, n: usize, beta: BetaProfile) -> Matrix {
    let blocks = vg_blocks(b, beta);
    let count = 1usize << (n - b);
    let bb = 1usize << b;
    let mut out = Matrix::zeros(1 << n);
    for i in 0..count {
        let blk = if i == 0 {
            &blocks.k_hat_e
        } else if i == count - 1 {
            &blocks.k_hat_o
        } else if i % 2 == 0 {
            &blocks.k_e
        } else {
            &blocks.k_o
        };
        for r in 0..bb {
            for c in 0..bb {
                out[(i * bb + r, i * bb + c)] = blk[(r, c)];
            }
        }
    }
    out
}

fn check(kind: TransformKind, n: usize, b: usize, beta: BetaProfile) -> Result<(), BuildError> {
    TransformParams::new(kind, n, Some(b), beta)?;
    Ok(())
}

/// `U_GS`: QFT, `S_{N,B}`, inverse QFT on the low `b+1` qubits.
pub fn sharp_gabor_circuit(n: usize, b: usize) -> Result<Circuit, BuildError> {
    check(TransformKind::GaborSharp, n, b, BetaProfile::Linear)?;
    let mut c = qft_circuit(n);
    c.append_shifted(&s_perm_circuit(n, b)?, 0);
    c.append_shifted(&iqft_circuit(b + 1), 0);
    Ok(c)
}

/// `U_GB` with the default block mode.
pub fn blended_gabor_circuit(n: usize, b: usize, beta: BetaProfile) -> Result<Circuit, BuildError> {
    blended_gabor_circuit_with(n, b, beta, BlockMode::default())
}

/// `U_GB = IQFT_{2B} · S_{N,B} · Q† V_G Q · QFT_N`, in that right-to-left order.
pub fn blended_gabor_circuit_with(
    n: usize,
    b: usize,
    beta: BetaProfile,
    mode: BlockMode,
) -> Result<Circuit, BuildError> {
    check(TransformKind::GaborBlended, n, b, beta)?;
    let q = q_perm_circuit(n - b + 1)?;
    let mut c = qft_circuit(n);
    c.append_shifted(&q, b - 1);
    c.extend(match mode {
        BlockMode::Custom => vg_custom_gates(n, b, beta)?,
        BlockMode::Synthesized => vg_synth_gates(n, b, beta)?,
    });
    c.append_shifted(&q.adjoint(), b - 1);
    c.append_shifted(&s_perm_circuit(n, b)?, 0);
    c.append_shifted(&iqft_circuit(b + 1), 0);
    Ok(c)
}

fn high_controls(n: usize, b: usize, on: bool) -> Vec<Control> {
    (b..n).rev().map(|q| Control { qubit: q, on }).collect()
}

fn vg_custom_gates(n: usize, b: usize, beta: BetaProfile) -> Result<Vec<Gate>, BuildError> {
    let blocks = vg_blocks(b, beta);
    let targets: Vec<usize> = (0..b).rev().collect();
    let block = |m: Matrix, ctrl: Vec<Control>| -> Result<Gate, BuildError> {
        Ok(Gate::custom(m, targets.clone())?.controlled(ctrl))
    };
    let ke_dag = crate::tensor::dagger(&blocks.k_e);
    let ko_dag = crate::tensor::dagger(&blocks.k_o);
    Ok(vec![
        block(blocks.k_e.clone(), vec![Control::off(b)])?,
        block(ke_dag.matmul(&blocks.k_hat_e), high_controls(n, b, false))?,
        block(blocks.k_o.clone(), vec![Control::on(b)])?,
        block(ko_dag.matmul(&blocks.k_hat_o), high_controls(n, b, true))?,
    ])
}

/// Multilinear form of `p(x)` over the `m` low register bits.
fn poly_bits(p: &RealPolynomial, m: usize) -> Result<PhasePoly, DiagError> {
    if m == 0 {
        Ok(PhasePoly::constant(p.eval(0.0)))
    } else {
        PhasePoly::from_poly(p, m)
    }
}

/// All four blocks share the Hadamard on qubit `b-1`, so `V_G` becomes one
/// Hadamard pair around a diagonal. The parity-controlled halves carry the
/// parity qubit inside the phase polynomial; the corner corrections are
/// wrapped in controls on every block qubit.
fn vg_synth_gates(n: usize, b: usize, beta: BetaProfile) -> Result<Vec<Gate>, BuildError> {
    let hq = b - 1;
    let bb = (1u64 << b) as f64;
    let base = beta.poly_on_half();
    // D₋ = −1/2 + x/B, β(D₋) = β(1/2 − x/B); D₊ = x/B.
    let dm = poly_bits(&RealPolynomial::linear(-0.5, 1.0 / bb), hq)?;
    let bm = poly_bits(&base.compose_affine(0.5, -1.0 / bb), hq)?;
    let dp = poly_bits(&RealPolynomial::linear(0.0, 1.0 / bb), hq)?;
    let bp = poly_bits(&base.compose_affine(0.0, 1.0 / bb), hq)?;

    // (π/2)D ± (1 − 2t)(π/2)β
    let even = dm.scale(PI / 2.0).add(&bm.scale(PI / 2.0)).add(&bm.times_bit(hq).scale(-PI));
    let odd = dp.scale(PI / 2.0).add(&bp.scale(-PI / 2.0)).add(&bp.times_bit(hq).scale(PI));
    let parity = even.times_not_bit(b).add(&odd.times_bit(b));

    let qubits: Vec<usize> = (0..n).collect();
    let mut gates = vec![Gate::h(hq)];
    gates.extend(parity.gates(&qubits, hq));
    let corr_e = bm.times_bit(hq).scale(PI);
    let corr_o = bp.times_bit(hq).scale(-PI);
    for (poly, on) in [(corr_e, false), (corr_o, true)] {
        let ctrl = high_controls(n, b, on);
        gates.extend(poly.gates(&qubits, hq).into_iter().map(|g| g.controlled(ctrl.clone())));
    }
    gates.push(Gate::h(hq));
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{circuit_to_unitary, gate_counts};
    use crate::oracle::{blended_gabor_basis, sharp_gabor_basis};
    use crate::tensor::unitarity_defect;

    #[test]
    fn ke_corner_entry() {
        let k = vg_blocks(2, BetaProfile::Linear).k_e;
        let want = C64::from_polar((PI / 4.0).cos(), -PI / 4.0);
        assert!((k[(0, 0)] - want).norm() < 1e-15);
    }

    #[test]
    fn blocks_are_unitary() {
        for beta in BetaProfile::ALL {
            for b in 1..=4 {
                let k = vg_blocks(b, beta);
                for m in [&k.k_hat_e, &k.k_e, &k.k_o, &k.k_hat_o] {
                    assert!(unitarity_defect(m) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sharp_layout_for_n6_b2() {
        let k = gate_counts(&sharp_gabor_circuit(6, 2).unwrap());
        // QFT(6): 6 H, 15 CRz, 3 SWAP; R_16: 3 CNOT, 3 SWAP; 1 CNOT; IQFT(3): 3 H, 3 CRz, 1 SWAP
        assert_eq!(k.single_qubit, 9);
        assert_eq!(k.two_qubit, 15 + 3 + 1 + 3);
        assert_eq!(k.swap, 3 + 3 + 1);
    }

    #[test]
    fn both_block_modes_agree() {
        for beta in BetaProfile::ALL {
            for (n, b) in [(3, 1), (4, 2), (5, 2)] {
                let u1 =
                    circuit_to_unitary(&blended_gabor_circuit_with(n, b, beta, BlockMode::Custom).unwrap()).unwrap();
                let u2 = circuit_to_unitary(&blended_gabor_circuit_with(n, b, beta, BlockMode::Synthesized).unwrap())
                    .unwrap();
                assert!(u1.max_abs_diff(&u2) < 1e-12, "{beta:?} n={n} b={b}");
            }
        }
    }

    #[test]
    fn blended_rejects_b_zero() {
        assert!(blended_gabor_circuit(4, 0, BetaProfile::Linear).is_err());
        assert_eq!(vg_blocks(1, BetaProfile::Linear).k_e.dim(), 2);
    }

    #[test]
    fn small_circuits_match_reference() {
        for (n, b) in [(2, 0), (4, 1), (5, 2)] {
            let u = circuit_to_unitary(&sharp_gabor_circuit(n, b).unwrap()).unwrap();
            assert!(u.max_abs_diff(&sharp_gabor_basis(n, b).unwrap().analysis()) < 1e-12);
        }
        for (n, b) in [(3, 1), (5, 1), (5, 3), (6, 2)] {
            let u = circuit_to_unitary(&blended_gabor_circuit(n, b, BetaProfile::Quadratic).unwrap()).unwrap();
            let want = blended_gabor_basis(n, b, BetaProfile::Quadratic).unwrap().analysis();
            assert!(u.max_abs_diff(&want) < 1e-10, "n={n} b={b}: {}", u.max_abs_diff(&want));
        }
    }
}
