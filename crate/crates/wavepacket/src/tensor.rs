//! Dense complex linear algebra in double precision.
//!
//! Matrices are stored row-major. Basis index `x` of a register of qubits
//! reads qubit `i` as bit `i` of `x`, so in a Kronecker product the first
//! factor owns the most significant bits.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// A complex column vector (statevector, signal or coefficient vector).
pub type CVector = Vec<C64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Matrix { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entrywise from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Row-major construction; panics if `rows` is not square.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Matrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CVector]) -> Self {
        let dim = cols.len();
        Self::from_fn(dim, |r, c| cols[c][r])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> CVector {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)])
    }

    pub fn hadamard() -> Self {
        let h = c(FRAC_1_SQRT_2, 0.0);
        Self::from_rows(vec![vec![h, h], vec![h, -h]])
    }

    /// `diag(1, e^{iθ})`.
    pub fn rz(theta: f64) -> Self {
        Self::from_diag(&[c(1.0, 0.0), C64::from_polar(1.0, theta)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let orow = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// True when every off-diagonal entry is exactly representable as zero
    /// within `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self[(r, c)].norm() <= tol))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Kronecker product; `a` acts on the most significant bits.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.dim(), b.dim());
    Matrix::from_fn(da * db, |r, col| a[(r / db, col / db)] * b[(r % db, col % db)])
}

/// Block-diagonal `[[a, 0], [0, b]]`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.dim(), b.dim());
    let mut m = Matrix::zeros(da + db);
    for r in 0..da {
        for col in 0..da {
            m[(r, col)] = a[(r, col)];
        }
    }
    for r in 0..db {
        for col in 0..db {
            m[(da + r, da + col)] = b[(r, col)];
        }
    }
    m
}

/// Conjugate transpose.
pub fn dagger(a: &Matrix) -> Matrix {
    Matrix::from_fn(a.dim(), |r, col| a[(col, r)].conj())
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &Matrix) -> f64 {
    let n = u.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..n {
                s += u[(k, i)].conj() * u[(k, j)];
            }
            if i == j {
                s -= 1.0;
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}

/// Matrix-vector product.
pub fn apply(u: &Matrix, v: &[C64]) -> Result<CVector, TensorError> {
    if v.len() != u.dim() {
        return Err(TensorError::DimensionMismatch { expected: u.dim(), got: v.len() });
    }
    Ok((0..u.dim()).map(|r| u.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
}

/// Euclidean norm.
pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨u, v⟩ = Σ u_k · conj(v_k)` (conjugate on the second argument).
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Largest entry modulus of `u - v`.
pub fn max_abs_diff(u: &[C64], v: &[C64]) -> f64 {
    assert_eq!(u.len(), v.len(), "vector length mismatch");
    u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Standard basis vector `e_k` of dimension `dim`.
pub fn basis_vector(dim: usize, k: usize) -> CVector {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// Returns `log2(len)` when `len` is a power of two.
pub fn log2_exact(len: usize) -> Option<usize> {
    (len.is_power_of_two()).then(|| len.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_puts_first_factor_on_high_bits() {
        let xi = kron(&Matrix::pauli_x(), &Matrix::identity(2));
        let out = apply(&xi, &basis_vector(4, 0b00)).unwrap();
        assert_eq!(out, basis_vector(4, 0b10));
    }

    #[test]
    fn kron_of_hadamards_is_not_the_dft() {
        let hh = kron(&Matrix::hadamard(), &Matrix::hadamard());
        let f4 = Matrix::from_fn(4, |k, j| C64::from_polar(0.5, 2.0 * std::f64::consts::PI * (k * j) as f64 / 4.0));
        assert!(hh.max_abs_diff(&f4) > 0.1);
    }

    #[test]
    fn direct_sum_with_scalar_block() {
        let m = direct_sum(&Matrix::identity(1), &Matrix::pauli_x());
        assert_eq!(m.dim(), 3);
        assert_eq!(apply(&m, &basis_vector(3, 0)).unwrap(), basis_vector(3, 0));
        assert_eq!(apply(&m, &basis_vector(3, 1)).unwrap(), basis_vector(3, 2));
    }

    #[test]
    fn defect_of_nonunitary_diagonal() {
        let m = Matrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(unitarity_defect(&m), 3.0);
        assert_eq!(unitarity_defect(&Matrix::identity(8)), 0.0);
    }

    #[test]
    fn dagger_of_rz_negates_angle() {
        assert!(dagger(&Matrix::rz(0.7)).max_abs_diff(&Matrix::rz(-0.7)) < 1e-15);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        let err = apply(&Matrix::identity(4), &basis_vector(2, 0)).unwrap_err();
        assert_eq!(err, TensorError::DimensionMismatch { expected: 4, got: 2 });
    }
}
