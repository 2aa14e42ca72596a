//! Diagonal unitaries `exp(i q(x))` for real polynomials `q` of the register
//! integer `x`, plus the blending profiles `β` and the bump window `g`.
//!
//! Writing `x = Σ_j 2^j x_j` turns every power `x^s` into a multilinear
//! polynomial in the bits `x_j` with integer coefficients. A multilinear
//! term `c ∏_{j∈J} x_j` is a phase `e^{ic}` on the states where all bits in
//! `J` are set, which is an `Rz(c)` on one qubit of `J` controlled on the
//! rest. The empty monomial is a phase on every state.

use crate::circuit::{Circuit, Control, Gate};
use crate::tensor::{Matrix, C64};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagError {
    #[error("beta argument {0} outside [-1, 1]")]
    DomainError(f64),
    #[error("monomial expansion of x^{s} on {m} qubits is too large")]
    TooLarge { m: usize, s: usize },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
}

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 16;
const MAX_EXPANSION: u128 = 1_000_000;

/// Real polynomial with coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, DiagError> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(DiagError::InvalidPolynomial("non-finite coefficient".into()));
        }
        let p = RealPolynomial { coeffs }.trimmed();
        if p.degree() > MAX_DEGREE {
            return Err(DiagError::InvalidPolynomial(format!("degree {} exceeds {MAX_DEGREE}", p.degree())));
        }
        Ok(p)
    }

    pub fn constant(c: f64) -> Self {
        RealPolynomial { coeffs: vec![c] }.trimmed()
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: f64, c1: f64) -> Self {
        RealPolynomial { coeffs: vec![c0, c1] }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        RealPolynomial { coeffs: (0..len).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect() }.trimmed()
    }

    pub fn scale(&self, s: f64) -> Self {
        RealPolynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }.trimmed()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RealPolynomial { coeffs: Vec::new() };
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial { coeffs: out }.trimmed()
    }

    /// `x ↦ p(a + c·x)`.
    pub fn compose_affine(&self, a: f64, c: f64) -> Self {
        let inner = RealPolynomial::linear(a, c);
        self.coeffs
            .iter()
            .rev()
            .fold(RealPolynomial { coeffs: Vec::new() }, |acc, &k| acc.mul(&inner).add(&RealPolynomial::constant(k)))
    }
}

/// Blending profile `β`: even, with `β(x) + β(1-x) = 1` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaProfile {
    /// `β(x) = x` on `[0, 1/2]`.
    Linear,
    /// `β(x) = 2x²` on `[0, 1/2]`.
    Quadratic,
    /// `β(x) = x⁴(35 − 84x + 70x² − 20x³)` on `[0, 1]`.
    Deg7,
}

impl BetaProfile {
    pub const ALL: [BetaProfile; 3] = [BetaProfile::Linear, BetaProfile::Quadratic, BetaProfile::Deg7];

    pub fn name(self) -> &'static str {
        match self {
            BetaProfile::Linear => "linear",
            BetaProfile::Quadratic => "quadratic",
            BetaProfile::Deg7 => "deg7",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == s)
    }

    /// Base polynomial on its declared domain.
    fn base(self) -> RealPolynomial {
        let c = match self {
            BetaProfile::Linear => vec![0.0, 1.0],
            BetaProfile::Quadratic => vec![0.0, 0.0, 2.0],
            BetaProfile::Deg7 => vec![0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0],
        };
        RealPolynomial { coeffs: c }
    }

    /// Whether the base polynomial covers only `[0, 1/2]` and is extended by
    /// `β(x) = 1 − β(1 − x)`.
    fn half_domain(self) -> bool {
        !matches!(self, BetaProfile::Deg7)
    }

    /// A polynomial equal to `β` on `[0, 1/2]`.
    pub fn poly_on_half(self) -> RealPolynomial {
        self.base()
    }

    pub fn eval(self, x: f64) -> Result<f64, DiagError> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(DiagError::DomainError(x));
        }
        let y = x.abs();
        let base = self.base();
        Ok(if self.half_domain() && y > 0.5 { 1.0 - base.eval(1.0 - y) } else { base.eval(y) })
    }
}

/// `β(x)` with even and complement extensions.
pub fn eval_beta(p: BetaProfile, x: f64) -> Result<f64, DiagError> {
    p.eval(x)
}

/// Bump window `g(s) = cos((π/2) β(s/π))` on `|s| < π`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BumpWindow {
    pub beta: BetaProfile,
}

impl BumpWindow {
    pub fn eval(self, s: f64) -> f64 {
        if s.abs() < PI {
            (PI / 2.0 * self.beta.eval(s / PI).expect("|s/π| < 1")).cos()
        } else {
            0.0
        }
    }
}

pub fn eval_g(w: BumpWindow, s: f64) -> f64 {
    w.eval(s)
}

/// One term `coeff · ∏_{j ∈ bits} x_j` of a bit expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    /// Ascending bit indices.
    pub bits: Vec<usize>,
    pub coeff: u128,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exact expansion `x^s = Σ_J c_J ∏_{j∈J} x_j` for `x` on `m` bits.
///
/// Sums the multinomial terms `s!/∏k_j! · ∏ 2^{j k_j}` over all exponent
/// vectors `k` with `Σ k_j = s`, grouped by their support. The term count
/// guard is `m^s ≤ 10^6`.
pub fn monomial_expand(m: usize, s: usize) -> Result<Vec<Monomial>, DiagError> {
    let too_large = DiagError::TooLarge { m, s };
    if s > MAX_DEGREE || (m as u128).checked_pow(s as u32).is_none_or(|v| v > MAX_EXPANSION) {
        return Err(too_large);
    }
    let mut acc: BTreeMap<u64, u128> = BTreeMap::new();
    fn rec(j: usize, m: usize, rem: usize, mask: u64, coef: u128, acc: &mut BTreeMap<u64, u128>) -> Option<()> {
        if j == m {
            if rem == 0 {
                let e = acc.entry(mask).or_insert(0);
                *e = e.checked_add(coef)?;
            }
            return Some(());
        }
        for k in 0..=rem {
            let pow = 1u128.checked_shl(u32::try_from(j * k).ok()?).filter(|_| j * k < 128)?;
            let c = coef.checked_mul(binomial(rem, k))?.checked_mul(pow)?;
            let bit = if k > 0 { 1u64 << j } else { 0 };
            rec(j + 1, m, rem - k, mask | bit, c, acc)?;
        }
        Some(())
    }
    if m == 0 {
        return Ok(if s == 0 { vec![Monomial { bits: vec![], coeff: 1 }] } else { vec![] });
    }
    rec(0, m, s, 0, 1, &mut acc).ok_or(too_large)?;
    Ok(acc
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(mask, coeff)| Monomial { bits: (0..m).filter(|&j| mask >> j & 1 == 1).collect(), coeff })
        .collect())
}

/// Real multilinear polynomial in register bits, keyed by bit mask.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhasePoly {
    terms: BTreeMap<u64, f64>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    /// Multilinear form of `q(x)` for `x` on `m` bits.
    pub fn from_poly(q: &RealPolynomial, m: usize) -> Result<Self, DiagError> {
        let mut p = Self::zero();
        for (s, &qs) in q.coeffs().iter().enumerate() {
            if qs == 0.0 {
                continue;
            }
            for mono in monomial_expand(m, s)? {
                let mask = mono.bits.iter().fold(0u64, |acc, &b| acc | 1 << b);
                p.add_term(mask, qs * mono.coeff as f64);
            }
        }
        Ok(p)
    }

    pub fn add_term(&mut self, mask: u64, c: f64) {
        *self.terms.entry(mask).or_insert(0.0) += c;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&mask, &c) in &other.terms {
            out.add_term(mask, c);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        PhasePoly { terms: self.terms.iter().map(|(&k, &v)| (k, v * s)).collect() }
    }

    /// Product with the bit `x_bit` (idempotent on bits).
    pub fn times_bit(&self, bit: usize) -> Self {
        let mut out = Self::zero();
        for (&mask, &c) in &self.terms {
            out.add_term(mask | 1 << bit, c);
        }
        out
    }

    /// Product with `1 − x_bit`.
    pub fn times_not_bit(&self, bit: usize) -> Self {
        self.add(&self.times_bit(bit).scale(-1.0))
    }

    pub fn eval(&self, x: u64) -> f64 {
        self.terms.iter().filter(|(&mask, _)| x & mask == mask).map(|(_, &c)| c).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Gate list realizing `diag(e^{i·p(x)})` where register bit `j` lives on
    /// physical qubit `qubits[j]`.
    ///
    /// Terms come out by increasing support size and, within a size, from
    /// the highest bits down. Each term is an `Rz` on the lowest qubit of its
    /// support controlled on the others. The constant term uses
    /// `X Rz(c) X Rz(c)` on `anchor`.
    pub fn gates(&self, qubits: &[usize], anchor: usize) -> Vec<Gate> {
        let mut order: Vec<(u64, f64)> = self.terms().filter(|&(_, c)| c != 0.0).collect();
        order.sort_by(|a, b| a.0.count_ones().cmp(&b.0.count_ones()).then(b.0.cmp(&a.0)));
        let mut out = Vec::new();
        for (mask, c) in order {
            if mask == 0 {
                out.extend([Gate::x(anchor), Gate::rz(anchor, c), Gate::x(anchor), Gate::rz(anchor, c)]);
                continue;
            }
            let bits: Vec<usize> = (0..64).filter(|&j| mask >> j & 1 == 1).collect();
            let target = qubits[bits[0]];
            let controls = bits[1..].iter().rev().map(|&j| Control::on(qubits[j])).collect();
            out.push(Gate::rz(target, c).controlled(controls));
        }
        out
    }
}

/// Circuit on `m` qubits with unitary `diag{e^{i q(x)} : x ∈ [2^m]}`.
pub fn exp_poly_circuit(m: usize, q: &RealPolynomial) -> Result<Circuit, DiagError> {
    if m == 0 {
        return Err(DiagError::InvalidPolynomial("register must have at least one qubit".into()));
    }
    let p = PhasePoly::from_poly(q, m)?;
    let qubits: Vec<usize> = (0..m).collect();
    Ok(Circuit::with_gates(m, 0, p.gates(&qubits, 0)))
}

/// Named diagonal argument lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalSpec {
    /// `D₊ = {k/B : 0 ≤ k < B/2}`.
    DPlus { b: usize },
    /// `D₋ = D₊ − 1/2`.
    DMinus { b: usize },
    /// `D = {−1/2 + 3q·2^{j−1}/N : 0 ≤ q < ⌈N/(3·2^j)⌉}`.
    Wavelet { n: usize, j: usize },
    /// `D` continued over `0 ≤ q < N/2^j`.
    WaveletPadded { n: usize, j: usize },
}

impl DiagonalSpec {
    pub fn entries(self) -> Vec<f64> {
        match self {
            DiagonalSpec::DPlus { b } => {
                let bb = (1usize << b) as f64;
                (0..(1usize << b) / 2).map(|k| k as f64 / bb).collect()
            }
            DiagonalSpec::DMinus { b } => DiagonalSpec::DPlus { b }.entries().into_iter().map(|d| d - 0.5).collect(),
            DiagonalSpec::Wavelet { n, j } => {
                let den = 3usize << j;
                let count = (1usize << n).div_ceil(den);
                (0..count).map(|q| wavelet_d(n, j, q)).collect()
            }
            DiagonalSpec::WaveletPadded { n, j } => (0..(1usize << (n - j))).map(|q| wavelet_d(n, j, q)).collect(),
        }
    }
}

fn wavelet_d(n: usize, j: usize, q: usize) -> f64 {
    -0.5 + 3.0 * q as f64 * (1u64 << (j - 1)) as f64 / (1u64 << n) as f64
}

/// `diag{e^{i(α β(d_k) + γ d_k + δ)}}` over the entries of `d`.
pub fn exp_affine_of_beta_diag(d: DiagonalSpec, alpha: f64, gamma: f64, delta: f64, p: BetaProfile) -> Matrix {
    let phases: Vec<C64> = d
        .entries()
        .into_iter()
        .map(|dk| C64::from_polar(1.0, alpha * p.eval(dk).expect("entries lie in [-1, 1]") + gamma * dk + delta))
        .collect();
    Matrix::from_diag(&phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::circuit_to_unitary;

    #[test]
    fn beta_presets_hit_anchor_values() {
        for b in BetaProfile::ALL {
            assert!((b.eval(0.0).unwrap()).abs() < 1e-12);
            assert!((b.eval(1.0).unwrap() - 1.0).abs() < 1e-12);
            assert!((b.eval(0.5).unwrap() - 0.5).abs() < 1e-12);
            assert_eq!(b.eval(-0.3).unwrap(), b.eval(0.3).unwrap());
        }
        assert_eq!(BetaProfile::Linear.eval(0.25).unwrap(), 0.25);
        assert!(matches!(BetaProfile::Linear.eval(1.5), Err(DiagError::DomainError(_))));
    }

    #[test]
    fn window_values() {
        for beta in BetaProfile::ALL {
            let g = BumpWindow { beta };
            assert_eq!(g.eval(0.0), 1.0);
            assert_eq!(g.eval(PI), 0.0);
            assert_eq!(g.eval(-PI), 0.0);
            let s = g.eval(PI / 2.0).powi(2) + g.eval(-PI / 2.0).powi(2);
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cubic_expansion_matches_figure() {
        let got: Vec<(Vec<usize>, u128)> =
            monomial_expand(3, 3).unwrap().into_iter().map(|t| (t.bits, t.coeff)).collect();
        let mut want = vec![
            (vec![0], 1),
            (vec![1], 8),
            (vec![2], 64),
            (vec![0, 1], 18),
            (vec![0, 2], 60),
            (vec![1, 2], 144),
            (vec![0, 1, 2], 48),
        ];
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn linear_expansion_is_binary() {
        for m in 1..=10 {
            let t = monomial_expand(m, 1).unwrap();
            assert_eq!(t.len(), m);
            for mono in t {
                assert_eq!(mono.bits.len(), 1);
                assert_eq!(mono.coeff, 1u128 << mono.bits[0]);
            }
        }
    }

    #[test]
    fn expansion_guard() {
        assert_eq!(monomial_expand(11, 6), Err(DiagError::TooLarge { m: 11, s: 6 }));
        assert!(monomial_expand(10, 6).is_ok());
    }

    #[test]
    fn cubic_circuit_gate_order_matches_figure() {
        let q = RealPolynomial::new(vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let c = exp_poly_circuit(3, &q).unwrap();
        let want = vec![
            Gate::rz(2, 64.0),
            Gate::rz(1, 8.0),
            Gate::rz(0, 1.0),
            Gate::rz(1, 144.0).controlled(vec![Control::on(2)]),
            Gate::rz(0, 60.0).controlled(vec![Control::on(2)]),
            Gate::rz(0, 18.0).controlled(vec![Control::on(1)]),
            Gate::rz(0, 48.0).controlled(vec![Control::on(2), Control::on(1)]),
        ];
        assert_eq!(c.gates, want);
        let u = circuit_to_unitary(&c).unwrap();
        for x in 0..8usize {
            assert!((u[(x, x)] - C64::from_polar(1.0, (x * x * x) as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_gives_empty_circuit() {
        let c = exp_poly_circuit(4, &RealPolynomial::constant(0.0)).unwrap();
        assert!(c.gates.is_empty());
    }

    #[test]
    fn constant_term_is_a_global_phase() {
        let c = exp_poly_circuit(2, &RealPolynomial::constant(0.7)).unwrap();
        let u = circuit_to_unitary(&c).unwrap();
        assert!(u.max_abs_diff(&Matrix::identity(4).scale(C64::from_polar(1.0, 0.7))) < 1e-15);
    }

    #[test]
    fn compose_affine_evaluates_consistently() {
        let p = BetaProfile::Deg7.poly_on_half();
        let r = p.compose_affine(0.5, -0.1);
        for x in [0.0, 1.0, 2.5, 4.0] {
            assert!((r.eval(x) - p.eval(0.5 - 0.1 * x)).abs() < 1e-13);
        }
    }

    #[test]
    fn d_minus_entries() {
        assert_eq!(DiagonalSpec::DMinus { b: 2 }.entries(), vec![-0.5, -0.25]);
        let m = exp_affine_of_beta_diag(DiagonalSpec::DMinus { b: 2 }, 0.0, PI / 2.0, 0.0, BetaProfile::Linear);
        assert!((m[(0, 0)] - C64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
        assert!((m[(1, 1)] - C64::from_polar(1.0, -PI / 8.0)).norm() < 1e-15);
        let id = exp_affine_of_beta_diag(DiagonalSpec::Wavelet { n: 5, j: 2 }, 0.0, 0.0, 0.0, BetaProfile::Deg7);
        assert_eq!(id, Matrix::identity(3));
        assert_eq!(DiagonalSpec::Wavelet { n: 5, j: 2 }.entries()[0], -0.5);
    }
}
