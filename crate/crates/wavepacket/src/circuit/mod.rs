//! Gate-level circuit representation and its exact evaluation.
//!
//! A [`Circuit`] acts on `n` data qubits followed by `ancilla` helper qubits
//! (indices `n..n+ancilla`). Ancillas start in |0⟩ and every evaluation entry
//! point checks that they come back to |0⟩.

mod count;
mod json;
mod lower;
mod sim;

pub use count::{elementary_cost, gate_counts, GateCounts};
pub use json::{circuit_from_json, circuit_to_json, to_fixed_json, FixedFloatFormatter};
pub use lower::{absorb_swaps, cancel_adjacent_inverses, lower_multicontrol};
pub use sim::{apply_circuit, apply_gates, circuit_to_unitary, MAX_DENSE_QUBITS, MAX_STATEVECTOR_QUBITS};

use crate::tensor::{dagger, unitarity_defect, Matrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("{qubits} qubits exceed the limit of {limit} for this evaluation")]
    DimensionTooLarge { qubits: usize, limit: usize },
    #[error("ancilla qubits not returned to |0>: leaked weight {leak:e}")]
    AncillaLeakage { leak: f64 },
    #[error("state has length {got}, circuit expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("malformed circuit JSON: {0}")]
    Json(String),
}

/// Fixed single-qubit gates. `Rz(θ)` is `diag(1, e^{iθ})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneQ {
    X,
    Y,
    Z,
    H,
    Rz(f64),
}

impl OneQ {
    pub fn matrix(self) -> Matrix {
        match self {
            OneQ::X => Matrix::pauli_x(),
            OneQ::Y => Matrix::pauli_y(),
            OneQ::Z => Matrix::pauli_z(),
            OneQ::H => Matrix::hadamard(),
            OneQ::Rz(t) => Matrix::rz(t),
        }
    }

    pub fn inverse(self) -> OneQ {
        match self {
            OneQ::Rz(t) => OneQ::Rz(-t),
            other => other,
        }
    }
}

/// A control qubit with its polarity (`on` = |1⟩).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Control {
    pub qubit: usize,
    pub on: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, on: true }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, on: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Single {
        op: OneQ,
        target: usize,
    },
    /// Dense block on `targets`; `targets[0]` is the most significant bit of
    /// the block index.
    Custom {
        matrix: Matrix,
        targets: Vec<usize>,
    },
    Swap {
        a: usize,
        b: usize,
    },
    Controlled {
        controls: Vec<Control>,
        inner: Box<Gate>,
    },
}

impl Gate {
    pub fn x(q: usize) -> Gate {
        Gate::Single { op: OneQ::X, target: q }
    }
    pub fn y(q: usize) -> Gate {
        Gate::Single { op: OneQ::Y, target: q }
    }
    pub fn z(q: usize) -> Gate {
        Gate::Single { op: OneQ::Z, target: q }
    }
    pub fn h(q: usize) -> Gate {
        Gate::Single { op: OneQ::H, target: q }
    }
    pub fn rz(q: usize, theta: f64) -> Gate {
        Gate::Single { op: OneQ::Rz(theta), target: q }
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::Swap { a, b }
    }
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::x(target).controlled(vec![Control::on(control)])
    }

    /// Multi-controlled NOT.
    pub fn mcx(controls: Vec<Control>, target: usize) -> Gate {
        Gate::x(target).controlled(controls)
    }

    /// Dense block gate, rejected unless the matrix is unitary to 1e-12 and
    /// its dimension matches the target count.
    pub fn custom(matrix: Matrix, targets: Vec<usize>) -> Result<Gate, CircuitError> {
        if matrix.dim() != 1usize << targets.len() {
            return Err(CircuitError::InvalidGate(format!(
                "custom matrix of dim {} on {} targets",
                matrix.dim(),
                targets.len()
            )));
        }
        let defect = unitarity_defect(&matrix);
        if defect > 1e-12 {
            return Err(CircuitError::InvalidGate(format!("custom matrix not unitary (defect {defect:e})")));
        }
        Ok(Gate::Custom { matrix, targets })
    }

    /// Wraps the gate in controls. An empty control list returns the gate as is.
    pub fn controlled(self, controls: Vec<Control>) -> Gate {
        if controls.is_empty() {
            self
        } else {
            Gate::Controlled { controls, inner: Box::new(self) }
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Single { op, target } => Gate::Single { op: op.inverse(), target: *target },
            Gate::Custom { matrix, targets } => Gate::Custom { matrix: dagger(matrix), targets: targets.clone() },
            Gate::Swap { a, b } => Gate::Swap { a: *a, b: *b },
            Gate::Controlled { controls, inner } => {
                Gate::Controlled { controls: controls.clone(), inner: Box::new(inner.inverse()) }
            }
        }
    }

    /// Whether the gate is its own inverse without inspecting matrix data.
    pub fn is_self_inverse(&self) -> bool {
        match self {
            Gate::Single { op, .. } => !matches!(op, OneQ::Rz(_)),
            Gate::Swap { .. } => true,
            Gate::Custom { .. } => false,
            Gate::Controlled { inner, .. } => inner.is_self_inverse(),
        }
    }

    /// Qubits acted on by the innermost operation.
    pub fn targets(&self) -> Vec<usize> {
        match self {
            Gate::Single { target, .. } => vec![*target],
            Gate::Custom { targets, .. } => targets.clone(),
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::Controlled { inner, .. } => inner.targets(),
        }
    }

    /// All controls, outermost first, flattened through nesting.
    pub fn all_controls(&self) -> Vec<Control> {
        let mut out = Vec::new();
        let mut g = self;
        while let Gate::Controlled { controls, inner } = g {
            out.extend_from_slice(controls);
            g = inner;
        }
        out
    }

    /// The operation left after stripping all control layers.
    pub fn core(&self) -> &Gate {
        let mut g = self;
        while let Gate::Controlled { inner, .. } = g {
            g = inner;
        }
        g
    }

    pub fn qubits(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.all_controls().iter().map(|c| c.qubit).collect();
        q.extend(self.targets());
        q
    }

    /// Relabels every qubit index through `f`.
    pub fn map_qubits(&self, f: &impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::Single { op, target } => Gate::Single { op: *op, target: f(*target) },
            Gate::Custom { matrix, targets } => {
                Gate::Custom { matrix: matrix.clone(), targets: targets.iter().map(|&t| f(t)).collect() }
            }
            Gate::Swap { a, b } => Gate::Swap { a: f(*a), b: f(*b) },
            Gate::Controlled { controls, inner } => Gate::Controlled {
                controls: controls.iter().map(|c| Control { qubit: f(c.qubit), on: c.on }).collect(),
                inner: Box::new(inner.map_qubits(f)),
            },
        }
    }

    fn validate(&self, width: usize) -> Result<(), CircuitError> {
        let qs = self.qubits();
        if let Some(&bad) = qs.iter().find(|&&q| q >= width) {
            return Err(CircuitError::InvalidGate(format!("qubit {bad} out of range for {width} qubits")));
        }
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qs.len() {
            return Err(CircuitError::InvalidGate(format!("repeated qubit in gate {qs:?}")));
        }
        Ok(())
    }
}

/// Ordered gate list over `n` data qubits and `ancilla` helper qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n: usize,
    pub ancilla: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, ancilla: 0, gates: Vec::new() }
    }

    pub fn with_gates(n: usize, ancilla: usize, gates: Vec<Gate>) -> Self {
        Circuit { n, ancilla, gates }
    }

    pub fn width(&self) -> usize {
        self.n + self.ancilla
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    /// Appends `other`'s gates with every qubit index shifted by `offset`.
    pub fn append_shifted(&mut self, other: &Circuit, offset: usize) {
        self.gates.extend(other.gates.iter().map(|g| g.map_qubits(&|q| q + offset)));
    }

    /// Appends `other`'s gates, each wrapped in `controls`.
    pub fn append_controlled(&mut self, other: &Circuit, controls: &[Control]) {
        self.gates.extend(other.gates.iter().map(|g| g.clone().controlled(controls.to_vec())));
    }

    /// Reversed gate order with each gate inverted.
    pub fn adjoint(&self) -> Circuit {
        Circuit { n: self.n, ancilla: self.ancilla, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Checks index ranges and per-gate qubit distinctness.
    pub fn validate(&self) -> Result<(), CircuitError> {
        self.gates.iter().try_for_each(|g| g.validate(self.width()))
    }

    pub fn to_unitary(&self) -> Result<Matrix, CircuitError> {
        circuit_to_unitary(self)
    }
}

/// Free-function form of [`Circuit::adjoint`].
pub fn adjoint(c: &Circuit) -> Circuit {
    c.adjoint()
}
