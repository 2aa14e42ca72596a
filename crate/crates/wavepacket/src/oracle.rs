//! Classical reference implementations, built straight from the basis and
//! reallocation definitions without any circuit machinery.
//!
//! Everything here is deliberately direct (dense, `O(N²)` per column) so it
//! can serve as ground truth for the synthesized circuits.

use crate::diag::{BetaProfile, BumpWindow};
use crate::tensor::{c, dagger, CVector, Matrix, C64};
use crate::transform::{InvalidParams, TransformKind, TransformParams};
use std::f64::consts::PI;

fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Signed representative of `k mod N` in `[−N/2, N/2)`.
fn signed(k: usize, nn: usize) -> i64 {
    let k = k as i64;
    if k >= nn as i64 / 2 {
        k - nn as i64
    } else {
        k
    }
}

fn wrap(k: i64, nn: usize) -> usize {
    k.rem_euclid(nn as i64) as usize
}

/// `F[k][j] = e^{+2πi kj/N}/√N`.
pub fn dft_matrix(nn: usize) -> Matrix {
    let s = 1.0 / (nn as f64).sqrt();
    Matrix::from_fn(nn, |k, j| C64::from_polar(s, 2.0 * PI * ((k * j) % nn) as f64 / nn as f64))
}

/// `F v` for a vector of power-of-two length.
pub fn dft(v: &[C64]) -> CVector {
    dft_signed(v, 1.0)
}

/// `F† v`.
pub fn idft(v: &[C64]) -> CVector {
    dft_signed(v, -1.0)
}

fn dft_signed(v: &[C64], sign: f64) -> CVector {
    let nn = v.len();
    let s = 1.0 / (nn as f64).sqrt();
    let tw: Vec<C64> = (0..nn).map(|m| C64::from_polar(s, sign * 2.0 * PI * m as f64 / nn as f64)).collect();
    (0..nn).map(|k| v.iter().enumerate().map(|(j, &x)| tw[(k * j) % nn] * x).sum()).collect()
}

/// An orthonormal basis: column `k` of `matrix` is `ψ_k` in space, column
/// `k` of `hat` is its Fourier transform.
#[derive(Debug, Clone)]
pub struct BasisMatrix {
    pub params: TransformParams,
    pub hat: Matrix,
    pub matrix: Matrix,
}

impl BasisMatrix {
    fn from_hat(params: TransformParams, hat_cols: Vec<CVector>) -> Self {
        let hat = Matrix::from_columns(&hat_cols);
        let spatial: Vec<CVector> = hat_cols.iter().map(|col| idft(col)).collect();
        BasisMatrix { params, hat, matrix: Matrix::from_columns(&spatial) }
    }

    /// `Ψ†`, the matrix of `f ↦ a`.
    pub fn analysis(&self) -> Matrix {
        dagger(&self.matrix)
    }
}

fn params(kind: TransformKind, n: usize, b: usize, beta: BetaProfile) -> Result<TransformParams, InvalidParams> {
    TransformParams::new(kind, n, Some(b), beta)
}

/// Sharp Gabor atoms: `ψ̂_{2Bj+p}(k) = e^{2πi pk/2B}/√(2B)` on
/// `k ∈ [jB, (j+1)B) ∪ [−(j+1)B, −jB)`, zero elsewhere.
pub fn sharp_gabor_basis(n: usize, b: usize) -> Result<BasisMatrix, InvalidParams> {
    let p = params(TransformKind::GaborSharp, n, b, BetaProfile::Linear)?;
    let (nn, bb) = (1usize << n, 1i64 << b);
    let norm = 1.0 / ((2 * bb) as f64).sqrt();
    let mut cols = Vec::with_capacity(nn);
    for j in 0..(nn as i64 / (2 * bb)) {
        for pp in 0..2 * bb {
            let col = (0..nn)
                .map(|kk| {
                    let k = signed(kk, nn);
                    let inside = (j * bb..(j + 1) * bb).contains(&k) || (-(j + 1) * bb..-j * bb).contains(&k);
                    if inside {
                        C64::from_polar(norm, 2.0 * PI * (pp * k) as f64 / (2 * bb) as f64)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .collect();
            cols.push(col);
        }
    }
    Ok(BasisMatrix::from_hat(p, cols))
}

/// `g` periodized with period `πN/B`; the window is supported on
/// `(−π, π)` and the period is at least `4π`, so three copies suffice.
fn g_per(g: BumpWindow, x: f64, nn: usize, bb: usize) -> f64 {
    let period = PI * nn as f64 / bb as f64;
    (-1..=1).map(|q| g.eval(x + q as f64 * period)).sum()
}

/// Blended Gabor atoms built from the periodized bump `g`.
pub fn blended_gabor_basis(n: usize, b: usize, beta: BetaProfile) -> Result<BasisMatrix, InvalidParams> {
    let p = params(TransformKind::GaborBlended, n, b, beta)?;
    let (nn, bb) = (1usize << n, 1usize << b);
    let g = BumpWindow { beta };
    let bf = bb as f64;
    let norm = 1.0 / (2.0 * bf).sqrt();
    let mut cols = Vec::with_capacity(nn);
    for j in 0..nn / (2 * bb) {
        let jb = (j * bb) as f64;
        for pp in 0..2 * bb {
            let col = (0..nn)
                .map(|k| {
                    let kf = k as f64;
                    let up = cis(0.5 * PI * (0.5 - (kf - jb) / bf)) * g_per(g, PI * ((kf - jb) / bf - 0.5), nn, bb);
                    let down = cis(0.5 * PI * (-0.5 - (kf + jb) / bf)) * g_per(g, PI * ((kf + jb) / bf + 0.5), nn, bb);
                    C64::from_polar(norm, 2.0 * PI * ((pp * k) % (2 * bb)) as f64 / (2.0 * bf)) * (up + down)
                })
                .collect();
            cols.push(col);
        }
    }
    Ok(BasisMatrix::from_hat(p, cols))
}

/// Whether signed frequency `k` lies in the level-`j` Shannon band
/// `[2^{n−j−1}, 2^{n−j}) ∪ [−2^{n−j}, −2^{n−j−1})`.
fn in_shannon_band(k: i64, n: usize, j: usize) -> bool {
    let lo2 = 1i64 << (n - j);
    let hi2 = 1i64 << (n - j + 1);
    let k2 = 2 * k;
    (lo2..hi2).contains(&k2) || (-hi2..-lo2).contains(&k2)
}

/// Wavelet coefficient order: level 1 positions, level 2 positions, …,
/// level n, then the scaling slot.
fn wavelet_slots(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|j| (0..1usize << (n - j)).map(move |p| (j, p))).collect()
}

/// Shannon wavelets: `ψ̂_{j,p}(k) = e^{2πi pk/2^{n−j}}/√(2^{n−j})` on the
/// level-`j` band, plus the scaling function `χ_{{0}}`.
pub fn shannon_basis(n: usize) -> Result<BasisMatrix, InvalidParams> {
    let p = params(TransformKind::Shannon, n, 0, BetaProfile::Linear)?;
    let nn = 1usize << n;
    let mut cols: Vec<CVector> = wavelet_slots(n)
        .into_iter()
        .map(|(j, pp)| {
            let per = 1usize << (n - j);
            let norm = 1.0 / (per as f64).sqrt();
            (0..nn)
                .map(|kk| {
                    let k = signed(kk, nn);
                    if in_shannon_band(k, n, j) {
                        C64::from_polar(norm, 2.0 * PI * wrap(pp as i64 * k, per) as f64 / per as f64)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    cols.push(crate::tensor::basis_vector(nn, 0));
    Ok(BasisMatrix::from_hat(p, cols))
}

/// Phase-shifted Meyer mother wavelet in frequency.
pub fn psi_ms_hat(omega: f64, beta: BetaProfile) -> C64 {
    if omega < 0.0 {
        return psi_ms_hat(-omega, beta).conj();
    }
    let g = BumpWindow { beta };
    let phase = cis(PI / 4.0 - omega / 2.0);
    if (2.0 * PI / 3.0..=4.0 * PI / 3.0).contains(&omega) {
        phase * g.eval(1.5 * omega - 2.0 * PI)
    } else if (4.0 * PI / 3.0..=8.0 * PI / 3.0).contains(&omega) {
        phase * g.eval(0.75 * omega - PI)
    } else {
        c(0.0, 0.0)
    }
}

/// Discrete Meyer wavelets sampled from `psi_ms_hat`, periodized at level 1.
pub fn meyer_basis(n: usize, beta: BetaProfile) -> Result<BasisMatrix, InvalidParams> {
    let p = params(TransformKind::Meyer, n, 0, beta)?;
    let nn = 1usize << n;
    let mut cols: Vec<CVector> = wavelet_slots(n)
        .into_iter()
        .map(|(j, pp)| {
            let per = 1usize << (n - j);
            let norm = 1.0 / (per as f64).sqrt();
            let shifts: &[f64] = if j == 1 { &[-1.0, 0.0, 1.0] } else { &[0.0] };
            (0..nn)
                .map(|kk| {
                    let k = signed(kk, nn);
                    let window: C64 = shifts
                        .iter()
                        .map(|q| psi_ms_hat((1u64 << (j + 1)) as f64 * PI * (k as f64 / nn as f64 + q), beta))
                        .sum();
                    C64::from_polar(norm, 2.0 * PI * wrap(pp as i64 * k, per) as f64 / per as f64) * window
                })
                .collect()
        })
        .collect();
    cols.push(crate::tensor::basis_vector(nn, 0));
    Ok(BasisMatrix::from_hat(p, cols))
}

/// The basis for any transform choice.
pub fn basis(p: &TransformParams) -> Result<BasisMatrix, InvalidParams> {
    match p.kind {
        TransformKind::GaborSharp => sharp_gabor_basis(p.n, p.b),
        TransformKind::GaborBlended => blended_gabor_basis(p.n, p.b, p.beta),
        TransformKind::Shannon => shannon_basis(p.n),
        TransformKind::Meyer => meyer_basis(p.n, p.beta),
    }
}

/// Coefficients `a_k = ⟨f, ψ_k⟩ = Σ_t f(t) conj(ψ_k(t))`.
pub fn transform_reference(p: &TransformParams, f: &[C64]) -> Result<CVector, InvalidParams> {
    if f.len() != p.dim() {
        return Err(InvalidParams(format!("signal length {} does not match N = {}", f.len(), p.dim())));
    }
    let psi = basis(p)?;
    Ok((0..p.dim()).map(|k| crate::tensor::inner(f, &psi.matrix.column(k))).collect())
}

/// Gabor reallocation `h = T_G f̂`, every index written exactly once.
pub fn h_realloc_gabor(fhat: &[C64], n: usize, b: usize, beta: BetaProfile) -> Result<CVector, InvalidParams> {
    params(TransformKind::GaborBlended, n, b, beta)?;
    let (nn, bb) = (1usize << n, 1i64 << b);
    if fhat.len() != nn {
        return Err(InvalidParams(format!("spectrum length {} does not match N = {nn}", fhat.len())));
    }
    let g = BumpWindow { beta };
    let f = |k: i64| fhat[wrap(k, nn)];
    let bf = bb as f64;
    let mut h = vec![c(0.0, 0.0); nn];
    let half = nn as i64 / (2 * bb);
    for j in -half..half {
        for q in 0..bb / 2 {
            let s = q as f64 * PI / bf;
            h[wrap(j * bb + q, nn)] = f(j * bb + q) * g.eval(-PI / 2.0 + s) * cis(0.5 * (-PI / 2.0 + s))
                + f(-j * bb + q) * g.eval(PI / 2.0 + s) * cis(0.5 * (PI / 2.0 + s));
            h[wrap(j * bb + bb / 2 + q, nn)] = f(j * bb + bb / 2 + q) * g.eval(s) * cis(0.5 * s)
                + f(-(j * bb + 3 * bb / 2) + q) * g.eval(-PI + s) * cis(0.5 * (-PI + s));
        }
    }
    Ok(h)
}

/// Wavelet reallocation `h = T_W f̂`. Indices no level touches (including
/// 0, the scaling slot) are copied through.
pub fn h_realloc_wavelet(fhat: &[C64], n: usize, beta: BetaProfile) -> Result<CVector, InvalidParams> {
    params(TransformKind::Meyer, n, 0, beta)?;
    let nn = 1usize << n;
    if fhat.len() != nn {
        return Err(InvalidParams(format!("spectrum length {} does not match N = {nn}", fhat.len())));
    }
    let g = BumpWindow { beta };
    let f = |k: i64| fhat[wrap(k, nn)];
    let nf = nn as f64;
    let mut h = fhat.to_vec();
    for j in 1..=n {
        let a = (nn >> j) as i64;
        let lvl = (1u64 << j) as f64;
        let mut q = 0i64;
        while 3 * (q as u64) * (1u64 << j) < nn as u64 {
            let qf = q as f64;
            let x = 3.0 * PI * qf * lvl / 2.0 / nf;
            let e1 = PI * qf * lvl / nf;
            let e2 = PI * qf * lvl / 2.0 / nf;
            if q >= 1 {
                h[wrap(a - q, nn)] = -cis(-PI / 4.0 - e1) * g.eval(PI / 2.0 - x) * f(a - q)
                    - cis(PI / 4.0 - e1) * g.eval(-PI / 2.0 - x) * f(-a - q);
                if j >= 2 {
                    h[wrap(-a - q, nn)] = cis(PI / 4.0 - e2) * g.eval(-PI / 2.0 - x) * f(a - q)
                        + cis(-PI / 4.0 - e2) * g.eval(PI / 2.0 - x) * f(-a - q);
                }
            }
            if j >= 2 {
                h[wrap(a + q, nn)] = cis(PI / 4.0 + e2) * g.eval(-PI / 2.0 + x) * f(a + q)
                    + cis(-PI / 4.0 + e2) * g.eval(PI / 2.0 + x) * f(-a + q);
            }
            h[wrap(-a + q, nn)] = -cis(-PI / 4.0 + e1) * g.eval(PI / 2.0 + x) * f(a + q)
                - cis(PI / 4.0 + e1) * g.eval(-PI / 2.0 + x) * f(-a + q);
            q += 1;
        }
    }
    Ok(h)
}

fn realloc_matrix(nn: usize, mut map: impl FnMut(&[C64]) -> CVector) -> Matrix {
    let cols: Vec<CVector> = (0..nn).map(|k| map(&crate::tensor::basis_vector(nn, k))).collect();
    Matrix::from_columns(&cols)
}

/// Dense `T_G`.
pub fn tg_matrix(n: usize, b: usize, beta: BetaProfile) -> Result<Matrix, InvalidParams> {
    params(TransformKind::GaborBlended, n, b, beta)?;
    Ok(realloc_matrix(1 << n, |v| h_realloc_gabor(v, n, b, beta).expect("validated")))
}

/// Dense `T_W`.
pub fn tw_matrix(n: usize, beta: BetaProfile) -> Result<Matrix, InvalidParams> {
    params(TransformKind::Meyer, n, 0, beta)?;
    Ok(realloc_matrix(1 << n, |v| h_realloc_wavelet(v, n, beta).expect("validated")))
}

/// Windowed inverse DFT of `h` over signed frequencies `band`, with period `per`.
fn windowed(h: &[C64], band: impl Iterator<Item = i64>, pp: usize, per: usize) -> C64 {
    let nn = h.len();
    let norm = 1.0 / (per as f64).sqrt();
    band.map(|k| C64::from_polar(norm, -2.0 * PI * wrap(pp as i64 * k, per) as f64 / per as f64) * h[wrap(k, nn)]).sum()
}

/// Largest deviation, over all `(j, p)`, between the windowed sum of the
/// reallocated spectrum and `⟨f̂, ψ̂_{j,p}⟩` for blended Gabor atoms.
pub fn gabor_packet_residual(fhat: &[C64], n: usize, b: usize, beta: BetaProfile) -> Result<f64, InvalidParams> {
    let h = h_realloc_gabor(fhat, n, b, beta)?;
    let psi = blended_gabor_basis(n, b, beta)?;
    let (nn, bb) = (1usize << n, 1i64 << b);
    let mut worst = 0.0f64;
    for j in 0..nn as i64 / (2 * bb) {
        for pp in 0..2 * bb as usize {
            let band = (j * bb..(j + 1) * bb).chain(-(j + 1) * bb..-j * bb);
            let lhs = windowed(&h, band, pp, 2 * bb as usize);
            let rhs = crate::tensor::inner(fhat, &psi.hat.column(2 * bb as usize * j as usize + pp));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// Largest deviation, over all `(j, p)` and the scaling slot, between the
/// windowed sum of the reallocated spectrum and `⟨f̂, ψ̂_{j,p}⟩` for Meyer
/// wavelets.
pub fn wavelet_packet_residual(fhat: &[C64], n: usize, beta: BetaProfile) -> Result<f64, InvalidParams> {
    let h = h_realloc_wavelet(fhat, n, beta)?;
    let psi = meyer_basis(n, beta)?;
    let nn = 1i64 << n;
    let mut worst = 0.0f64;
    for (slot, (j, pp)) in wavelet_slots(n).into_iter().enumerate() {
        let band = (-nn / 2..nn / 2).filter(|&k| in_shannon_band(k, n, j));
        let lhs = windowed(&h, band, pp, 1 << (n - j));
        let rhs = crate::tensor::inner(fhat, &psi.hat.column(slot));
        worst = worst.max((lhs - rhs).norm());
    }
    worst = worst.max((h[0] - fhat[0]).norm());
    Ok(worst)
}

/// Defining index maps of the permutation matrices, written from their case
/// equations (no bit manipulation shared with the circuit builders).
pub mod perm_defs {
    /// `L|x⟩ = |x+1 mod M⟩`.
    pub fn shift_table(m: usize) -> Vec<usize> {
        let mm = 1usize << m;
        (0..mm).map(|x| (x + 1) % mm).collect()
    }

    /// `R|j⟩ = |2j⟩`, `R|M−1−j⟩ = |2j+1⟩` for `j < M/2`.
    pub fn r_table(m: usize) -> Vec<usize> {
        let mm = 1usize << m;
        let mut t = vec![usize::MAX; mm];
        for j in 0..mm / 2 {
            t[j] = 2 * j;
            t[mm - 1 - j] = 2 * j + 1;
        }
        if mm == 1 {
            t[0] = 0;
        }
        t
    }

    /// The five cases defining `Q_M`.
    pub fn q_table(m: usize) -> Vec<usize> {
        let mm = 1usize << m;
        let mut t = vec![usize::MAX; mm];
        for (j, slot) in t.iter_mut().take(mm / 2).enumerate() {
            *slot = 2 * j;
        }
        t[mm - 1] = mm - 1;
        t[mm / 2] = 1;
        for j in 1..mm / 4 {
            t[mm - 2 * j] = 4 * j + 1;
            t[mm - 2 * j - 1] = 4 * j - 1;
        }
        t
    }

    /// `S_{N,B}`: block `j` and block `N/B−1−j` go to the two halves of output
    /// block pair `2j`, even `j` keeping the lower block first.
    pub fn s_table(n: usize, b: usize) -> Vec<usize> {
        let (nn, bb) = (1usize << n, 1usize << b);
        let mut t = vec![usize::MAX; nn];
        for j in 0..nn / (2 * bb) {
            for k in 0..bb {
                let (first, second) = (2 * bb * j + k, 2 * bb * j + bb + k);
                let even = j % 2 == 0;
                t[bb * j + k] = if even { first } else { second };
                t[bb * (nn / bb - 1 - j) + k] = if even { second } else { first };
            }
        }
        t
    }

    /// `T_N`: first and third quarters exchanged.
    pub fn t_table(n: usize) -> Vec<usize> {
        let nn = 1usize << n;
        let q = nn / 4;
        (0..nn)
            .map(|x| match x / q {
                0 => x + 2 * q,
                2 => x - 2 * q,
                _ => x,
            })
            .collect()
    }

    /// Constraints on `W_Q(2^j)` acting on the top `j` of `n` bits:
    /// prefix `0…01` must become `1…10`, prefix `1…11` must stay, lower
    /// `n−j` bits unchanged. Other inputs are unconstrained (`None`).
    pub fn wq_required(n: usize, j: usize) -> Vec<Option<usize>> {
        let nn = 1usize << n;
        let low = n - j;
        let all_ones = (1usize << j) - 1;
        (0..nn)
            .map(|x| {
                let (prefix, rest) = (x >> low, x & ((1 << low) - 1));
                if prefix == 1 {
                    Some(((all_ones - 1) << low) | rest)
                } else if prefix == all_ones {
                    Some(x)
                } else {
                    None
                }
            })
            .collect()
    }
}
