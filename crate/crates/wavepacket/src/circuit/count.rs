use super::{Circuit, Gate};
use serde::Serialize;
use std::collections::BTreeMap;

/// Gate tallies by category plus an elementary-equivalent total.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub single_qubit: usize,
    /// Singly-controlled one-qubit gates.
    pub two_qubit: usize,
    pub swap: usize,
    /// Keyed by number of controls; holds every controlled gate that is not
    /// a singly-controlled one-qubit gate or a controlled dense block.
    pub multi_control: BTreeMap<usize, usize>,
    pub custom_block: usize,
    pub elementary: u64,
}

const TOFFOLI_COST: u64 = 15;

/// Cost of a one-qubit gate under `k` controls: free-standing and singly
/// controlled gates are elementary; more controls go through a Toffoli
/// ladder of `2(k-1)` Toffolis around one singly-controlled gate.
fn controlled_1q_cost(k: usize) -> u64 {
    if k <= 1 {
        1
    } else {
        2 * (k as u64 - 1) * TOFFOLI_COST + 1
    }
}

/// Elementary-equivalent cost of one gate.
pub fn elementary_cost(g: &Gate) -> u64 {
    let k = g.all_controls().len();
    match g.core() {
        Gate::Single { .. } => controlled_1q_cost(k),
        Gate::Swap { .. } if k == 0 => 1,
        // two plain CNOTs around one CNOT that carries the extra controls
        Gate::Swap { .. } => 2 + controlled_1q_cost(k + 1),
        Gate::Custom { targets, .. } => 4u64.saturating_pow((targets.len() + k) as u32),
        Gate::Controlled { .. } => unreachable!("core strips control layers"),
    }
}

pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut out = GateCounts::default();
    for g in &c.gates {
        let k = g.all_controls().len();
        match (g.core(), k) {
            (Gate::Custom { .. }, _) => out.custom_block += 1,
            (Gate::Single { .. }, 0) => out.single_qubit += 1,
            (Gate::Single { .. }, 1) => out.two_qubit += 1,
            (Gate::Swap { .. }, 0) => out.swap += 1,
            _ => *out.multi_control.entry(k).or_insert(0) += 1,
        }
        out.elementary += elementary_cost(g);
    }
    out
}
