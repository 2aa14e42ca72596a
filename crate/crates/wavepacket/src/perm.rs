//! Permutation circuits: cyclic shift `L`, `R_M`, `Q_M`, `S_{N,B}`, the
//! quarter transposition `T_N` and the wavelet regrouping `W_Q`.
//!
//! Every constructor returns a circuit on qubits `0..m` (or `0..n`); callers
//! embed them with [`Circuit::append_shifted`].

use crate::circuit::{circuit_to_unitary, Circuit, CircuitError, Control, Gate};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PermError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("circuit is not a permutation: column {column} has an entry of modulus {modulus}")]
    NotAPermutation { column: usize, modulus: f64 },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// `|x⟩ ↦ |x+1 mod 2^m⟩`: multi-controlled NOTs from the top bit down, each
/// controlled on every lower bit being 1.
pub fn shift_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    for t in (0..m).rev() {
        c.push(Gate::mcx((0..t).map(Control::on).collect(), t));
    }
    c
}

/// `R_M`: `|j⟩ ↦ |2j⟩` and `|M-1-j⟩ ↦ |2j+1⟩` for `j < M/2`.
///
/// The top bit is XORed into every other bit, then rotated down to the
/// bottom by a swap cascade.
pub fn r_perm_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    if m == 0 {
        return c;
    }
    let top = m - 1;
    for q in (0..top).rev() {
        c.push(Gate::cnot(top, q));
    }
    for q in (1..m).rev() {
        c.push(Gate::swap(q, q - 1));
    }
    c
}

/// `Q_M = R_M (I₂⊗L) CNOT (I₂⊗L)†`, gates in time order: `L†` on the lower
/// `m-1` qubits, CNOT from the top qubit onto qubit 0, `L`, then `R_M`.
pub fn q_perm_circuit(m: usize) -> Result<Circuit, PermError> {
    if m < 2 {
        return Err(PermError::InvalidParams(format!("Q_M needs m >= 2, got {m}")));
    }
    let l = shift_circuit(m - 1);
    let mut c = Circuit::new(m);
    c.append_shifted(&l.adjoint(), 0);
    c.push(Gate::cnot(m - 1, 0));
    c.append_shifted(&l, 0);
    c.append_shifted(&r_perm_circuit(m), 0);
    Ok(c)
}

/// `S_{N,B} = (I⊗CNOT⊗I)(R_{N/B}⊗I_B)`: `R` on the top `n-b` qubits, then a
/// CNOT from qubit `b+1` onto qubit `b`.
pub fn s_perm_circuit(n: usize, b: usize) -> Result<Circuit, PermError> {
    if n < b + 2 {
        return Err(PermError::InvalidParams(format!("S_(N,B) needs n >= b + 2, got n={n}, b={b}")));
    }
    let mut c = Circuit::new(n);
    c.append_shifted(&r_perm_circuit(n - b), b);
    c.push(Gate::cnot(b + 1, b));
    Ok(c)
}

/// `T_N`: swaps the first and third quarters of the index range.
pub fn t_perm_circuit(n: usize) -> Result<Circuit, PermError> {
    if n < 2 {
        return Err(PermError::InvalidParams(format!("T_N needs n >= 2, got {n}")));
    }
    Ok(Circuit::with_gates(n, 0, vec![Gate::x(n - 1).controlled(vec![Control::off(n - 2)])]))
}

/// `W_Q(2^j)` on the top `j` of `n` qubits: sends the prefix `0…01` to
/// `1…10` and fixes `1…11`.
///
/// Zero-controlled NOTs from the top qubit flip the middle `j-2` bits, then
/// the top qubit trades places with qubit `n-j`. The lower `n-j` bits are
/// untouched, and qubit `n-j` ends up holding the old top bit.
pub fn wq_circuit(n: usize, j: usize) -> Result<Circuit, PermError> {
    if j < 2 || j > n {
        return Err(PermError::InvalidParams(format!("W_Q needs 2 <= j <= n, got j={j}, n={n}")));
    }
    let top = n - 1;
    let mut c = Circuit::new(n);
    for q in (n - j + 1..top).rev() {
        c.push(Gate::x(q).controlled(vec![Control::off(top)]));
    }
    c.push(Gate::swap(top, n - j));
    Ok(c)
}

const ONE_TOL: f64 = 1e-8;

/// Reads the permutation `σ` with `U|x⟩ = |σ(x)⟩` off a circuit.
pub fn perm_table(c: &Circuit) -> Result<Vec<usize>, PermError> {
    let u = circuit_to_unitary(c)?;
    let dim = u.dim();
    let mut table = Vec::with_capacity(dim);
    let mut seen = vec![false; dim];
    for x in 0..dim {
        let mut hit = None;
        for y in 0..dim {
            let modulus = u[(y, x)].norm();
            if modulus > 1.0 - ONE_TOL {
                if hit.is_some() {
                    return Err(PermError::NotAPermutation { column: x, modulus });
                }
                hit = Some(y);
            } else if modulus > ONE_TOL {
                return Err(PermError::NotAPermutation { column: x, modulus });
            }
        }
        let y = hit.ok_or(PermError::NotAPermutation { column: x, modulus: 0.0 })?;
        if std::mem::replace(&mut seen[y], true) {
            return Err(PermError::NotAPermutation { column: x, modulus: 1.0 });
        }
        table.push(y);
    }
    Ok(table)
}
