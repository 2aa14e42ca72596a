//! Transform selection and parameter validation shared by the circuit
//! builders, the reference oracle and the command line.

use crate::circuit::{absorb_swaps, lower_multicontrol, Circuit, CircuitError};
use crate::diag::{BetaProfile, DiagError};
use crate::gabor::{blended_gabor_circuit_with, sharp_gabor_circuit, BlockMode};
use crate::perm::PermError;
use crate::wavelet::{meyer_circuit, shannon_circuit};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid parameters: {0}")]
pub struct InvalidParams(pub String);

/// Failure while synthesizing a transform circuit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Largest supported qubit count for any transform.
pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    GaborSharp,
    GaborBlended,
    Shannon,
    Meyer,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] =
        [TransformKind::GaborSharp, TransformKind::GaborBlended, TransformKind::Shannon, TransformKind::Meyer];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::GaborSharp => "gabor-sharp",
            TransformKind::GaborBlended => "gabor-blended",
            TransformKind::Shannon => "shannon",
            TransformKind::Meyer => "meyer",
        }
    }

    pub fn is_gabor(self) -> bool {
        matches!(self, TransformKind::GaborSharp | TransformKind::GaborBlended)
    }

    /// Whether the transform depends on a blending profile.
    pub fn uses_beta(self) -> bool {
        matches!(self, TransformKind::GaborBlended | TransformKind::Meyer)
    }

    /// Smallest valid qubit count.
    pub fn min_n(self) -> usize {
        match self {
            TransformKind::GaborSharp | TransformKind::Shannon => 2,
            TransformKind::GaborBlended | TransformKind::Meyer => 3,
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = InvalidParams;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| InvalidParams(format!("unknown transform kind '{s}'")))
    }
}

/// Window exponent used when none is given: `⌊(n−1)/2⌋`.
pub fn default_b(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// A validated transform choice. `b` is meaningful for Gabor kinds and
/// `beta` for blended kinds; both are carried regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformParams {
    pub kind: TransformKind,
    pub n: usize,
    pub b: usize,
    pub beta: BetaProfile,
}

impl TransformParams {
    pub fn new(kind: TransformKind, n: usize, b: Option<usize>, beta: BetaProfile) -> Result<Self, InvalidParams> {
        let p = TransformParams { kind, n, b: b.unwrap_or_else(|| default_b(n)), beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), InvalidParams> {
        let TransformParams { kind, n, b, .. } = *self;
        if n < kind.min_n() || n > MAX_QUBITS {
            return Err(InvalidParams(format!("{kind} needs {} <= n <= {MAX_QUBITS}, got n={n}", kind.min_n())));
        }
        match kind {
            TransformKind::GaborSharp if b + 2 > n => {
                Err(InvalidParams(format!("gabor-sharp needs 0 <= b <= n-2, got n={n}, b={b}")))
            }
            TransformKind::GaborBlended if b < 1 || b + 2 > n => {
                Err(InvalidParams(format!("gabor-blended needs 1 <= b <= n-2, got n={n}, b={b}")))
            }
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Short label such as `meyer n=5 beta=deg7`.
    pub fn label(&self) -> String {
        let mut s = format!("{} n={}", self.kind, self.n);
        if self.kind.is_gabor() {
            s += &format!(" b={}", self.b);
        }
        if self.kind.uses_beta() {
            s += &format!(" beta={}", self.beta.name());
        }
        s
    }
}

/// Synthesizes the transform circuit, mapping a signal to its coefficients.
/// Blended Gabor blocks use `mode`; other kinds ignore it.
pub fn build_circuit_with(p: &TransformParams, mode: BlockMode) -> Result<Circuit, BuildError> {
    p.validate()?;
    match p.kind {
        TransformKind::GaborSharp => sharp_gabor_circuit(p.n, p.b),
        TransformKind::GaborBlended => blended_gabor_circuit_with(p.n, p.b, p.beta, mode),
        TransformKind::Shannon => shannon_circuit(p.n),
        TransformKind::Meyer => meyer_circuit(p.n, p.beta),
    }
}

/// [`build_circuit_with`] using the default block mode.
pub fn build_circuit(p: &TransformParams) -> Result<Circuit, BuildError> {
    build_circuit_with(p, BlockMode::default())
}

/// The transform circuit compiled for counting and execution: uncontrolled
/// SWAPs folded into one final wire permutation, then multi-controlled runs
/// rewritten around one shared ancilla.
pub fn build_lowered(p: &TransformParams) -> Result<Circuit, BuildError> {
    Ok(lower_multicontrol(&absorb_swaps(&build_circuit(p)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in TransformKind::ALL {
            assert_eq!(k.name().parse::<TransformKind>().unwrap(), k);
        }
        assert!("haar".parse::<TransformKind>().is_err());
    }

    #[test]
    fn parameter_ranges() {
        let lin = BetaProfile::Linear;
        assert_eq!(TransformParams::new(TransformKind::GaborSharp, 6, None, lin).unwrap().b, 2);
        assert!(TransformParams::new(TransformKind::GaborSharp, 2, Some(0), lin).is_ok());
        assert!(TransformParams::new(TransformKind::GaborSharp, 4, Some(3), lin).is_err());
        assert!(TransformParams::new(TransformKind::GaborBlended, 5, Some(0), lin).is_err());
        assert!(TransformParams::new(TransformKind::GaborBlended, 3, None, lin).is_ok());
        assert!(TransformParams::new(TransformKind::Meyer, 2, None, lin).is_err());
        assert!(TransformParams::new(TransformKind::Shannon, 27, None, lin).is_err());
    }

    #[test]
    fn lowered_circuits_keep_at_most_two_ancillas() {
        for kind in TransformKind::ALL {
            let p = TransformParams::new(kind, 6, None, BetaProfile::Linear).unwrap();
            assert!(build_lowered(&p).unwrap().ancilla <= 2);
        }
    }
}
