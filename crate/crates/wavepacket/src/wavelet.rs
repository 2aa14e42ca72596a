//! Shannon and Meyer wavelet transform circuits.
//!
//! The Shannon transform is a QFT followed by the reshuffle `S_N`, which
//! peels one dyadic band per level with a small inverse QFT. The Meyer
//! transform inserts the reallocation `T_W` between the two. `T_W` is a
//! product of commuting level blocks `W_R^(j)` and `W_L^(j)`, each acting
//! on a pair of index ranges singled out by a comparator flag held in
//! ancilla qubit `n`.

use crate::circuit::{cancel_adjacent_inverses, Circuit, Control, Gate};
use crate::diag::{BetaProfile, DiagError, PhasePoly, RealPolynomial};
use crate::perm::wq_circuit;
use crate::qft::{iqft_circuit, qft_circuit};
use crate::tensor::{kron, Matrix, C64};
use crate::transform::{BuildError, InvalidParams, TransformKind, TransformParams};
use std::f64::consts::PI;

/// `S_N`: maps `f̂` to the Shannon coefficients, level 1 first and the
/// scaling coefficient last.
///
/// Level `k` (from `n` down to 2) swaps the first and third quarters of the
/// active range, runs an inverse QFT on the lower half, and recurses into the
/// upper half. The recursion bottoms out with a fully controlled `X`.
pub fn shannon_reshuffle_circuit(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    let mut acc: Vec<Control> = Vec::new();
    for k in (2..=n).rev() {
        let mut t_ctrl = vec![Control::off(k - 2)];
        t_ctrl.extend(acc.iter().copied());
        c.push(Gate::x(k - 1).controlled(t_ctrl));
        let mut f_ctrl = vec![Control::off(k - 1)];
        f_ctrl.extend(acc.iter().copied());
        c.append_controlled(&iqft_circuit(k - 1), &f_ctrl);
        acc.push(Control::on(k - 1));
    }
    if n >= 1 {
        c.push(Gate::x(0).controlled(acc));
    }
    c
}

/// `U_WS = S_N · QFT_N`.
pub fn shannon_circuit(n: usize) -> Result<Circuit, BuildError> {
    TransformParams::new(TransformKind::Shannon, n, None, BetaProfile::Linear)?;
    let mut c = qft_circuit(n);
    c.append_shifted(&shannon_reshuffle_circuit(n), 0);
    Ok(c)
}

/// Bit patterns (MSB first) whose prefix matches exactly the `m`-bit
/// values `x ≤ c`: for every set bit of `c`, the higher bits of `c` followed
/// by a 0, then `c` itself.
fn le_patterns(c: u64, m: usize) -> Vec<Vec<bool>> {
    let bits: Vec<bool> = (0..m).rev().map(|i| c >> i & 1 == 1).collect();
    let mut out: Vec<Vec<bool>> = (0..m)
        .filter(|&p| bits[p])
        .map(|p| {
            let mut v = bits[..p].to_vec();
            v.push(false);
            v
        })
        .collect();
    out.push(bits);
    out
}

/// Prefixes identifying `x < 2^m/3` among `m`-bit values, e.g.
/// `["00", "0100", "01010"]` for `m = 5`.
pub fn comparator_prefixes(m: usize) -> Vec<String> {
    le_patterns((1u64 << m) / 3, m)
        .into_iter()
        .map(|p| p.into_iter().map(|b| if b { '1' } else { '0' }).collect())
        .collect()
}

/// One MCX per pattern onto `flag`, controlled on `level` and the pattern
/// bits of the register `qubits[m-1..0]`. With `flip`, the register is read
/// complemented.
fn comparator_gates(c: u64, m: usize, level: &[Control], flag: usize, flip: bool) -> Vec<Gate> {
    le_patterns(c, m)
        .into_iter()
        .map(|pat| {
            let mut ctrl = level.to_vec();
            ctrl.extend(pat.iter().enumerate().map(|(i, &bit)| Control { qubit: m - 1 - i, on: bit != flip }));
            Gate::mcx(ctrl, flag)
        })
        .collect()
}

fn check_level(n: usize, j: usize, beta: BetaProfile) -> Result<(), BuildError> {
    TransformParams::new(TransformKind::Meyer, n, None, beta)?;
    if j < 1 || j > n {
        return Err(InvalidParams(format!("level j must satisfy 1 <= j <= n, got j={j}, n={n}")).into());
    }
    Ok(())
}

/// `D = −1/2 + 3q/2^{m+1}` for `q` in `0..count`.
fn level_d(m: usize, count: usize) -> Vec<f64> {
    (0..count).map(|q| -0.5 + 3.0 * q as f64 / (1u64 << (m + 1)) as f64).collect()
}

fn beta_neg(beta: BetaProfile, d: f64) -> f64 {
    beta.eval(d).expect("D lies in [-1/2, 1/2]")
}

/// Number of active rows per half at level `j`: `⌈N/(3·2^j)⌉`.
fn active(n: usize, j: usize) -> usize {
    (1usize << n).div_ceil(3 << j)
}

/// `diag(P₀, P₁) (H ⊗ I) diag(e^{−iθ}, e^{iθ}) (H ⊗ I)` on `2·half` rows
/// with the first `len` entries of each half active and the rest identity.
fn level_block(half: usize, len: usize, theta: &[f64], p0: &[f64], p1: &[f64], mid_sign: f64) -> Matrix {
    let mut out = Matrix::identity(2 * half);
    for q in 0..len {
        let h = kron(&Matrix::hadamard(), &Matrix::identity(1));
        let mid =
            Matrix::from_diag(&[C64::from_polar(1.0, -mid_sign * theta[q]), C64::from_polar(1.0, mid_sign * theta[q])]);
        let p = Matrix::from_diag(&[C64::from_polar(1.0, p0[q]), C64::from_polar(1.0, p1[q])]);
        let blk = p.matmul(&h).matmul(&mid).matmul(&h);
        for (r, rr) in [q, half + q].into_iter().enumerate() {
            for (s, ss) in [q, half + q].into_iter().enumerate() {
                out[(rr, ss)] = blk[(r, s)];
            }
        }
    }
    out
}

/// The `W_K` block of level `j ≥ 2` on `2^{n−j+1}` rows, ordered
/// `A+q` then `−A+q` for `A = N/2^j`.
pub fn wk_matrix(n: usize, j: usize, beta: BetaProfile) -> Result<Matrix, BuildError> {
    check_level(n, j, beta)?;
    if j < 2 {
        return Err(InvalidParams("wk_matrix needs j >= 2".into()).into());
    }
    let m = n - j;
    let len = active(n, j);
    let d = level_d(m, len);
    let theta: Vec<f64> = d.iter().map(|&x| PI / 2.0 * beta_neg(beta, x)).collect();
    let p0: Vec<f64> = d.iter().map(|&x| PI * (x / 3.0 + 5.0 / 12.0)).collect();
    let p1: Vec<f64> = d.iter().map(|&x| PI * (2.0 * x / 3.0 - 5.0 / 12.0)).collect();
    Ok(level_block(1 << m, len, &theta, &p0, &p1, 1.0))
}

/// The level-1 `W̃_K` diagonal on the upper half `N/2 + q`.
pub fn wk_tilde_matrix(n: usize, beta: BetaProfile) -> Result<Matrix, BuildError> {
    check_level(n, 1, beta)?;
    let d = level_d(n - 1, active(n, 1));
    let mut ph = vec![C64::new(1.0, 0.0); 1 << (n - 1)];
    for (q, &x) in d.iter().enumerate() {
        ph[q] = C64::from_polar(1.0, PI * (-5.0 / 12.0 + 2.0 * x / 3.0 - beta_neg(beta, x) / 2.0));
    }
    Ok(Matrix::from_diag(&ph))
}

/// The `W_L` block of level `j ≥ 2`, ordered `A−q` then `−A−q` and indexed
/// by `r = 2^m − q` (so row `r` of each half holds `q = 2^m − r`).
pub fn wl_block_matrix(n: usize, j: usize, beta: BetaProfile) -> Result<Matrix, BuildError> {
    check_level(n, j, beta)?;
    if j < 2 {
        return Err(InvalidParams("wl_block_matrix needs j >= 2".into()).into());
    }
    let m = n - j;
    let half = 1usize << m;
    let mut out = Matrix::identity(2 * half);
    for q in 1..active(n, j) {
        let r = half - q;
        let d = -0.5 + 3.0 * q as f64 / (2 * half) as f64;
        let theta = PI / 2.0 * beta_neg(beta, d);
        let blk = level_block(
            1,
            1,
            &[theta],
            &[0.75 * PI - 2.0 * PI * (d + 0.5) / 3.0],
            &[-0.25 * PI - PI * (d + 0.5) / 3.0],
            -1.0,
        );
        for (a, ra) in [r, half + r].into_iter().enumerate() {
            for (b, rb) in [r, half + r].into_iter().enumerate() {
                out[(ra, rb)] = blk[(a, b)];
            }
        }
    }
    Ok(out)
}

/// The level-1 `W_L` diagonal on the lower half, indexed by `x` with
/// `q = N/2 − x`.
pub fn wl_tilde_matrix(n: usize, beta: BetaProfile) -> Result<Matrix, BuildError> {
    check_level(n, 1, beta)?;
    let half = 1usize << (n - 1);
    let mut ph = vec![C64::new(1.0, 0.0); half];
    for q in 1..active(n, 1) {
        let d = -0.5 + 3.0 * q as f64 / (2 * half) as f64;
        ph[half - q] = C64::from_polar(1.0, PI * (5.0 / 12.0 - 2.0 * d / 3.0 + beta_neg(beta, d) / 2.0));
    }
    Ok(Matrix::from_diag(&ph))
}

fn poly_bits(p: &RealPolynomial, m: usize) -> Result<PhasePoly, DiagError> {
    if m == 0 {
        Ok(PhasePoly::constant(p.eval(0.0)))
    } else {
        PhasePoly::from_poly(p, m)
    }
}

/// Phase polynomials of one level block in terms of the register value
/// `x` on qubits `0..m`: `D(x) = d0 + d1·x` and `β(D) = β(−D)` on the
/// active range.
struct LevelPolys {
    d: PhasePoly,
    beta: PhasePoly,
}

fn level_polys(beta: BetaProfile, m: usize, d0: f64, d1: f64) -> Result<LevelPolys, DiagError> {
    Ok(LevelPolys {
        d: poly_bits(&RealPolynomial::linear(d0, d1), m)?,
        beta: poly_bits(&beta.poly_on_half().compose_affine(-d0, -d1), m)?,
    })
}

/// Block gates for one `j ≥ 2` level, all conditioned on `flag`:
/// `H(m)`, `diag` of `(2t−1)·s·θ`, `H(m)`, then `(1−t)P₀ + tP₁`.
fn level_block_gates(
    m: usize,
    flag: usize,
    theta: &PhasePoly,
    mid_sign: f64,
    p0: &PhasePoly,
    p1: &PhasePoly,
) -> Vec<Gate> {
    let qubits: Vec<usize> = (0..=flag).collect();
    let fl = vec![Control::on(flag)];
    let mid = theta.scale(-mid_sign).add(&theta.times_bit(m).scale(2.0 * mid_sign)).times_bit(flag);
    let p = p0.add(&p0.times_bit(m).scale(-1.0)).add(&p1.times_bit(m)).times_bit(flag);
    let mut g = vec![Gate::h(m).controlled(fl.clone())];
    g.extend(mid.gates(&qubits, flag));
    g.push(Gate::h(m).controlled(fl));
    g.extend(p.gates(&qubits, flag));
    g
}

/// `W_R^(j)` on `n` data qubits plus the comparator flag (qubit `n`).
pub fn wr_circuit(n: usize, j: usize, beta: BetaProfile) -> Result<Circuit, BuildError> {
    check_level(n, j, beta)?;
    let flag = n;
    let mut c = Circuit::with_gates(n, 1, Vec::new());
    let m = n - j;
    let bound = (1u64 << m) / 3;
    let two_m1 = (1u64 << (m + 1)) as f64;
    let lp = level_polys(beta, m, -0.5, 3.0 / two_m1)?;
    if j == 1 {
        let cmp = comparator_gates(bound, m, &[Control::on(n - 1)], flag, false);
        let phase =
            lp.d.scale(2.0 * PI / 3.0)
                .add(&lp.beta.scale(-PI / 2.0))
                .add(&PhasePoly::constant(-5.0 * PI / 12.0))
                .times_bit(flag);
        c.extend(cmp.iter().cloned());
        c.extend(phase.gates(&(0..=flag).collect::<Vec<_>>(), flag));
        c.extend(cmp);
        return Ok(c);
    }
    let level: Vec<Control> = (m + 1..n).rev().map(Control::on).collect();
    let cmp = comparator_gates(bound, m, &level, flag, false);
    let theta = lp.beta.scale(PI / 2.0);
    let p0 = lp.d.scale(PI / 3.0).add(&PhasePoly::constant(5.0 * PI / 12.0));
    let p1 = lp.d.scale(2.0 * PI / 3.0).add(&PhasePoly::constant(-5.0 * PI / 12.0));
    let wq = wq_circuit(n, j)?;
    c.extend(wq.gates.iter().cloned());
    c.extend(cmp.iter().cloned());
    c.extend(level_block_gates(m, flag, &theta, 1.0, &p0, &p1));
    c.extend(cmp);
    c.extend(wq.adjoint().gates);
    Ok(c)
}

/// `W_L^(j)` on `n` data qubits plus the comparator flag (qubit `n`).
/// Levels with no active row give an empty circuit.
pub fn wl_circuit(n: usize, j: usize, beta: BetaProfile) -> Result<Circuit, BuildError> {
    check_level(n, j, beta)?;
    let flag = n;
    let mut c = Circuit::with_gates(n, 1, Vec::new());
    let m = n - j;
    let count = (1u64 << m) / 3;
    if count == 0 {
        return Ok(c);
    }
    let bound = count - 1;
    // q = 2^m − x, so D = 1 − 3x/2^{m+1}.
    let two_m1 = (1u64 << (m + 1)) as f64;
    let lp = level_polys(beta, m, 1.0, -3.0 / two_m1)?;
    if j == 1 {
        let cmp = comparator_gates(bound, m, &[Control::off(n - 1)], flag, true);
        let phase =
            lp.d.scale(-2.0 * PI / 3.0)
                .add(&lp.beta.scale(PI / 2.0))
                .add(&PhasePoly::constant(5.0 * PI / 12.0))
                .times_bit(flag);
        c.extend(cmp.iter().cloned());
        c.extend(phase.gates(&(0..=flag).collect::<Vec<_>>(), flag));
        c.extend(cmp);
        return Ok(c);
    }
    let level: Vec<Control> = (m + 1..n).rev().map(Control::on).collect();
    let cmp = comparator_gates(bound, m, &level, flag, true);
    let theta = lp.beta.scale(PI / 2.0);
    // φ1 = 2π(D + 1/2)/3, φ2 = π(D + 1/2)/3
    let shifted = lp.d.add(&PhasePoly::constant(0.5));
    let p0 = shifted.scale(-2.0 * PI / 3.0).add(&PhasePoly::constant(0.75 * PI));
    let p1 = shifted.scale(-PI / 3.0).add(&PhasePoly::constant(-0.25 * PI));
    let wq = wq_circuit(n, j)?;
    c.push(Gate::x(m));
    c.extend(wq.gates.iter().cloned());
    c.extend(cmp.iter().cloned());
    c.extend(level_block_gates(m, flag, &theta, -1.0, &p0, &p1));
    c.extend(cmp);
    c.extend(wq.adjoint().gates);
    c.push(Gate::x(m));
    Ok(c)
}

/// `T_W`: all `W_R` levels then all `W_L` levels, with adjacent inverse
/// pairs (mostly between consecutive `W_Q` conjugations) removed.
pub fn tw_circuit(n: usize, beta: BetaProfile) -> Result<Circuit, BuildError> {
    TransformParams::new(TransformKind::Meyer, n, None, beta)?;
    let mut gates = Vec::new();
    for j in 1..=n {
        gates.extend(wr_circuit(n, j, beta)?.gates);
    }
    for j in 1..=n {
        gates.extend(wl_circuit(n, j, beta)?.gates);
    }
    Ok(Circuit::with_gates(n, 1, cancel_adjacent_inverses(gates)))
}

/// `U_WB = S_N · T_W · QFT_N`.
pub fn meyer_circuit(n: usize, beta: BetaProfile) -> Result<Circuit, BuildError> {
    let tw = tw_circuit(n, beta)?;
    let mut c = Circuit::with_gates(n, 1, qft_circuit(n).gates);
    c.extend(tw.gates);
    c.append_shifted(&shannon_reshuffle_circuit(n), 0);
    Ok(c)
}
