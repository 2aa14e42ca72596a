//! Circuit JSON interchange.
//!
//! Floats are written in fixed 17-significant-digit scientific notation so
//! identical circuits always serialize to identical bytes.

use super::{Circuit, CircuitError, Control, Gate, OneQ};
use crate::tensor::{c, Matrix};
use serde::{Deserialize, Serialize};
use std::io;

/// `serde_json` formatter that prints every float as `{:.16e}`.
#[derive(Debug, Default, Clone, Copy)]
pub struct FixedFloatFormatter;

impl serde_json::ser::Formatter for FixedFloatFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes any value compactly with [`FixedFloatFormatter`].
pub fn to_fixed_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloatFormatter);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    n: usize,
    ancilla: usize,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
struct ControlDoc {
    qubit: usize,
    on: bool,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    controls: Option<Vec<ControlDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner: Option<Box<GateDoc>>,
}

impl GateDoc {
    fn plain(kind: &str, targets: Vec<usize>) -> Self {
        GateDoc { kind: kind.into(), targets, theta: None, matrix: None, controls: None, inner: None }
    }
}

fn gate_doc(g: &Gate) -> GateDoc {
    match g {
        Gate::Single { op, target } => {
            let kind = match op {
                OneQ::X => "x",
                OneQ::Y => "y",
                OneQ::Z => "z",
                OneQ::H => "h",
                OneQ::Rz(_) => "rz",
            };
            let mut d = GateDoc::plain(kind, vec![*target]);
            if let OneQ::Rz(t) = op {
                d.theta = Some(*t);
            }
            d
        }
        Gate::Swap { a, b } => GateDoc::plain("swap", vec![*a, *b]),
        Gate::Custom { matrix, targets } => {
            let mut d = GateDoc::plain("custom", targets.clone());
            let dim = matrix.dim();
            d.matrix = Some((0..dim).map(|r| matrix.row(r).iter().map(|z| [z.re, z.im]).collect()).collect());
            d
        }
        Gate::Controlled { controls, inner } => {
            let mut d = GateDoc::plain("controlled", inner.targets());
            d.controls = Some(controls.iter().map(|c| ControlDoc { qubit: c.qubit, on: c.on }).collect());
            d.inner = Some(Box::new(gate_doc(inner)));
            d
        }
    }
}

fn one_target(d: &GateDoc) -> Result<usize, CircuitError> {
    match d.targets.as_slice() {
        [t] => Ok(*t),
        other => Err(CircuitError::Json(format!("gate '{}' needs one target, got {other:?}", d.kind))),
    }
}

fn gate_from_doc(d: &GateDoc) -> Result<Gate, CircuitError> {
    let single = |op| Ok(Gate::Single { op, target: one_target(d)? });
    match d.kind.as_str() {
        "x" => single(OneQ::X),
        "y" => single(OneQ::Y),
        "z" => single(OneQ::Z),
        "h" => single(OneQ::H),
        "rz" => {
            let t = d.theta.ok_or_else(|| CircuitError::Json("rz gate without theta".into()))?;
            single(OneQ::Rz(t))
        }
        "swap" => match d.targets.as_slice() {
            [a, b] => Ok(Gate::swap(*a, *b)),
            other => Err(CircuitError::Json(format!("swap needs two targets, got {other:?}"))),
        },
        "custom" => {
            let rows = d.matrix.as_ref().ok_or_else(|| CircuitError::Json("custom gate without matrix".into()))?;
            let dim = rows.len();
            if rows.iter().any(|r| r.len() != dim) {
                return Err(CircuitError::Json("custom matrix is not square".into()));
            }
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|p| c(p[0], p[1])).collect()).collect());
            Gate::custom(m, d.targets.clone())
        }
        "controlled" => {
            let controls =
                d.controls.as_ref().ok_or_else(|| CircuitError::Json("controlled gate without controls".into()))?;
            let inner = d.inner.as_ref().ok_or_else(|| CircuitError::Json("controlled gate without inner".into()))?;
            Ok(Gate::Controlled {
                controls: controls.iter().map(|c| Control { qubit: c.qubit, on: c.on }).collect(),
                inner: Box::new(gate_from_doc(inner)?),
            })
        }
        other => Err(CircuitError::Json(format!("unknown gate kind '{other}'"))),
    }
}

pub fn circuit_to_json(c: &Circuit) -> String {
    let doc = CircuitDoc { n: c.n, ancilla: c.ancilla, gates: c.gates.iter().map(gate_doc).collect() };
    to_fixed_json(&doc)
}

pub fn circuit_from_json(s: &str) -> Result<Circuit, CircuitError> {
    let doc: CircuitDoc = serde_json::from_str(s).map_err(|e| CircuitError::Json(e.to_string()))?;
    let gates = doc.gates.iter().map(gate_from_doc).collect::<Result<Vec<_>, _>>()?;
    let circuit = Circuit { n: doc.n, ancilla: doc.ancilla, gates };
    circuit.validate()?;
    Ok(circuit)
}
