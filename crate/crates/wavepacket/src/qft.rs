//! Exact quantum Fourier transform, `|j⟩ ↦ N^{-1/2} Σ_k e^{+2πi jk/N} |k⟩`.

use crate::circuit::{Circuit, Control, Gate};
use std::f64::consts::PI;

/// QFT on qubits `0..m` (qubit `m-1` most significant).
///
/// For each qubit from the top down: a Hadamard, then controlled phases
/// `Rz(2π / 2^{i-l+1})` from every lower qubit `l`; finally the bit order is
/// reversed with swaps.
pub fn qft_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    for i in (0..m).rev() {
        c.push(Gate::h(i));
        for l in (0..i).rev() {
            let theta = 2.0 * PI / (1u64 << (i - l + 1)) as f64;
            c.push(Gate::rz(i, theta).controlled(vec![Control::on(l)]));
        }
    }
    for i in 0..m / 2 {
        c.push(Gate::swap(i, m - 1 - i));
    }
    c
}

pub fn iqft_circuit(m: usize) -> Circuit {
    qft_circuit(m).adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{circuit_to_unitary, gate_counts};
    use crate::tensor::{c, Matrix};

    #[test]
    fn one_qubit_is_hadamard() {
        assert!(circuit_to_unitary(&qft_circuit(1)).unwrap().max_abs_diff(&Matrix::hadamard()) < 1e-15);
        assert!(circuit_to_unitary(&iqft_circuit(1)).unwrap().max_abs_diff(&Matrix::hadamard()) < 1e-15);
    }

    #[test]
    fn two_qubit_entry_has_plus_sign() {
        let u = circuit_to_unitary(&qft_circuit(2)).unwrap();
        assert!((u[(1, 1)] - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn counts_follow_the_ladder() {
        for m in 1..=9 {
            let k = gate_counts(&qft_circuit(m));
            assert_eq!(k.single_qubit, m);
            assert_eq!(k.two_qubit, m * (m - 1) / 2);
            assert_eq!(k.swap, m / 2);
            assert!(k.multi_control.is_empty());
        }
    }
}
