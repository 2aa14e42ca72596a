use super::{Circuit, Control, Gate, OneQ};

fn sorted_controls(g: &Gate) -> Option<Vec<Control>> {
    match g {
        Gate::Controlled { controls, .. } if controls.len() >= 2 => {
            let mut c = controls.clone();
            c.sort_unstable();
            Some(c)
        }
        _ => None,
    }
}

/// Rewrites multi-controlled blocks with one shared clean ancilla.
///
/// Each maximal run of consecutive gates whose outermost control set is the
/// same (two or more controls) becomes: a multi-controlled NOT computing the
/// control predicate into the ancilla, the run's inner gates controlled on
/// the ancilla alone, and the same multi-controlled NOT again to uncompute.
/// A lone multi-controlled NOT is already primitive and is kept. The ancilla
/// is appended after the existing qubits only if some run was rewritten.
pub fn lower_multicontrol(c: &Circuit) -> Circuit {
    let anc = c.width();
    let mut out = Vec::with_capacity(c.gates.len());
    let mut used = false;
    let mut i = 0;
    while i < c.gates.len() {
        let g = &c.gates[i];
        let Some(key) = sorted_controls(g) else {
            out.push(g.clone());
            i += 1;
            continue;
        };
        let mut j = i + 1;
        while j < c.gates.len() && sorted_controls(&c.gates[j]).as_ref() == Some(&key) {
            j += 1;
        }
        let run = &c.gates[i..j];
        let lone_mcx = run.len() == 1
            && matches!(g, Gate::Controlled { inner, .. } if matches!(**inner, Gate::Single { op: OneQ::X, .. }));
        if lone_mcx {
            out.push(g.clone());
        } else {
            used = true;
            out.push(Gate::mcx(key.clone(), anc));
            for r in run {
                if let Gate::Controlled { inner, .. } = r {
                    out.push((**inner).clone().controlled(vec![Control::on(anc)]));
                }
            }
            out.push(Gate::mcx(key, anc));
        }
        i = j;
    }
    Circuit { n: c.n, ancilla: c.ancilla + usize::from(used), gates: out }
}

/// Removes adjacent gate/inverse pairs, repeatedly, using a stack.
pub fn cancel_adjacent_inverses(gates: Vec<Gate>) -> Vec<Gate> {
    let mut stack: Vec<Gate> = Vec::with_capacity(gates.len());
    for g in gates {
        let cancels = match stack.last() {
            Some(top) if !matches!(g.core(), Gate::Custom { .. }) => *top == g.inverse(),
            _ => false,
        };
        if cancels {
            stack.pop();
        } else if !is_trivial(&g) {
            stack.push(g);
        }
    }
    stack
}

fn is_trivial(g: &Gate) -> bool {
    matches!(g.core(), Gate::Single { op: OneQ::Rz(t), .. } if *t == 0.0)
}

/// Moves every uncontrolled SWAP to the end of the circuit by relabeling
/// the gates after it, then realizes the accumulated wire permutation with
/// the fewest swaps (one per cycle element beyond the first).
pub fn absorb_swaps(c: &Circuit) -> Circuit {
    let w = c.width();
    // the content expected on wire `v` currently sits on wire `pos[v]`
    let mut pos: Vec<usize> = (0..w).collect();
    let mut out = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        match g {
            Gate::Swap { a, b } => pos.swap(*a, *b),
            _ => out.push(g.map_qubits(&|q| pos[q])),
        }
    }
    // dest[w]: the wire whose content currently sits on wire w
    let mut dest = vec![0; w];
    for (v, &p) in pos.iter().enumerate() {
        dest[p] = v;
    }
    for q in 0..w {
        while dest[q] != q {
            let t = dest[q];
            out.push(Gate::swap(q, t));
            dest.swap(q, t);
        }
    }
    Circuit { n: c.n, ancilla: c.ancilla, gates: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::circuit_to_unitary;

    #[test]
    fn unchanged_without_multicontrols() {
        let c = Circuit::with_gates(2, 0, vec![Gate::h(0), Gate::cnot(0, 1)]);
        assert_eq!(lower_multicontrol(&c), c);
    }

    #[test]
    fn doubly_controlled_block_gets_one_ancilla() {
        let g = Gate::h(0).controlled(vec![Control::on(2), Control::off(1)]);
        let c = Circuit::with_gates(3, 0, vec![g]);
        let l = lower_multicontrol(&c);
        assert_eq!(l.ancilla, 1);
        assert_eq!(l.gates.len(), 3);
        let (a, b) = (circuit_to_unitary(&c).unwrap(), circuit_to_unitary(&l).unwrap());
        assert!(a.max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn runs_share_one_compute_pair() {
        let cs = vec![Control::on(2), Control::on(3)];
        let gates = vec![Gate::h(0).controlled(cs.clone()), Gate::cnot(0, 1).controlled(cs)];
        let l = lower_multicontrol(&Circuit::with_gates(4, 0, gates));
        assert_eq!(l.gates.len(), 4);
    }

    #[test]
    fn lone_toffoli_is_primitive() {
        let c = Circuit::with_gates(3, 0, vec![Gate::mcx(vec![Control::on(1), Control::on(2)], 0)]);
        assert_eq!(lower_multicontrol(&c), c);
    }

    #[test]
    fn cancellation_pairs() {
        let gates =
            vec![Gate::h(0), Gate::cnot(0, 1), Gate::rz(1, 0.5), Gate::rz(1, -0.5), Gate::cnot(0, 1), Gate::x(2)];
        assert_eq!(cancel_adjacent_inverses(gates), vec![Gate::h(0), Gate::x(2)]);
    }

    #[test]
    fn absorbed_swaps_preserve_the_unitary() {
        use crate::qft::qft_circuit;
        for n in 2..=5 {
            let mut c = qft_circuit(n);
            c.push(Gate::swap(0, n - 1));
            c.push(Gate::h(0).controlled(vec![Control::off(n - 1)]));
            let a = absorb_swaps(&c);
            assert!(a.to_unitary().unwrap().max_abs_diff(&c.to_unitary().unwrap()) < 1e-12);
            assert!(a.gates.iter().filter(|g| matches!(g, Gate::Swap { .. })).count() < n);
        }
    }
}
