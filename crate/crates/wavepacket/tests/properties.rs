use proptest::prelude::*;
use wavepacket::circuit::{
    absorb_swaps, apply_circuit, cancel_adjacent_inverses, circuit_from_json, circuit_to_json, circuit_to_unitary,
    lower_multicontrol, Circuit, Control, Gate,
};
use wavepacket::diag::{exp_poly_circuit, BetaProfile, RealPolynomial};
use wavepacket::oracle::{basis, dft, h_realloc_gabor, h_realloc_wavelet, perm_defs};
use wavepacket::perm::{perm_table, q_perm_circuit, r_perm_circuit, s_perm_circuit, shift_circuit, t_perm_circuit};
use wavepacket::tensor::{inner, max_abs_diff, norm, C64};
use wavepacket::transform::{build_circuit, TransformKind, TransformParams};
use wavepacket::wavelet::comparator_prefixes;

fn signal(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

fn kind() -> impl Strategy<Value = TransformKind> {
    prop::sample::select(TransformKind::ALL.to_vec())
}

fn beta() -> impl Strategy<Value = BetaProfile> {
    prop::sample::select(BetaProfile::ALL.to_vec())
}

const W: usize = 4;

fn gate() -> impl Strategy<Value = Gate> {
    let q = 0..W;
    let single = (0..5usize, q.clone(), -3.0f64..3.0).prop_map(|(k, t, th)| match k {
        0 => Gate::x(t),
        1 => Gate::y(t),
        2 => Gate::h(t),
        3 => Gate::z(t),
        _ => Gate::rz(t, th),
    });
    let swap = (q.clone(), 1..W).prop_map(|(a, d)| Gate::swap(a, (a + d) % W));
    let base = prop_oneof![3 => single, 1 => swap];
    (base, prop::collection::vec((0..W, any::<bool>()), 0..3)).prop_map(|(g, ctrl)| {
        let used = g.qubits();
        let mut controls: Vec<Control> = Vec::new();
        for (qb, on) in ctrl {
            if !used.contains(&qb) && controls.iter().all(|c| c.qubit != qb) {
                controls.push(Control { qubit: qb, on });
            }
        }
        g.controlled(controls)
    })
}

fn circuit() -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate(), 0..24).prop_map(|g| Circuit::with_gates(W, 0, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_preserve_norm(k in kind(), n in 3usize..=7, bt in beta(), f in signal(7)) {
        let p = TransformParams::new(k, n, None, bt).unwrap();
        let f = &f[..1 << n];
        let a = apply_circuit(&build_circuit(&p).unwrap(), f).unwrap();
        prop_assert!((norm(&a) - norm(f)).abs() < 1e-12);
    }

    #[test]
    fn circuit_output_matches_reference_coefficients(k in kind(), n in 3usize..=6, bt in beta(), f in signal(6)) {
        let p = TransformParams::new(k, n, None, bt).unwrap();
        let f = &f[..1 << n];
        let a = apply_circuit(&build_circuit(&p).unwrap(), f).unwrap();
        let want = wavepacket::oracle::transform_reference(&p, f).unwrap();
        prop_assert!(max_abs_diff(&a, &want) < 1e-10);
    }

    #[test]
    fn plancherel_holds_for_every_basis(k in kind(), bt in beta(), col in 0usize..32, f in signal(5)) {
        let p = TransformParams::new(k, 5, None, bt).unwrap();
        let psi = basis(&p).unwrap();
        let space = inner(&f, &psi.matrix.column(col));
        let freq = inner(&dft(&f), &psi.hat.column(col));
        prop_assert!((space - freq).norm() < 1e-12);
    }

    #[test]
    fn reallocations_are_linear(bt in beta(), u in signal(6), v in signal(6), s in -2.0f64..2.0) {
        let w: Vec<C64> = u.iter().zip(&v).map(|(a, b)| a * s + b).collect();
        let hg = |x: &[C64]| h_realloc_gabor(x, 6, 2, bt).unwrap();
        let hw = |x: &[C64]| h_realloc_wavelet(x, 6, bt).unwrap();
        for h in [&hg as &dyn Fn(&[C64]) -> Vec<C64>, &hw] {
            let lhs = h(&w);
            let rhs: Vec<C64> = h(&u).iter().zip(h(&v)).map(|(a, b)| a * s + b).collect();
            prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
            prop_assert!((norm(&h(&u)) - norm(&u)).abs() < 1e-12);
        }
    }

    #[test]
    fn compiler_passes_preserve_unitaries(c in circuit()) {
        let u = circuit_to_unitary(&c).unwrap();
        prop_assert!(circuit_to_unitary(&lower_multicontrol(&c)).unwrap().max_abs_diff(&u) < 1e-12);
        prop_assert!(circuit_to_unitary(&absorb_swaps(&c)).unwrap().max_abs_diff(&u) < 1e-12);
        let cancelled = Circuit::with_gates(W, 0, cancel_adjacent_inverses(c.gates.clone()));
        prop_assert!(circuit_to_unitary(&cancelled).unwrap().max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn adjoint_inverts(c in circuit(), f in signal(W)) {
        let back = apply_circuit(&c.adjoint(), &apply_circuit(&c, &f).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&back, &f) < 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact(c in circuit()) {
        let text = circuit_to_json(&c);
        let back = circuit_from_json(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(circuit_to_json(&back), text);
    }

    #[test]
    fn phase_polynomial_synthesis_is_exact(
        m in 1usize..=4,
        coeffs in prop::collection::vec(-2.0f64..2.0, 1..=4),
    ) {
        let q = RealPolynomial::new(coeffs).unwrap();
        let u = circuit_to_unitary(&exp_poly_circuit(m, &q).unwrap()).unwrap();
        for x in 0..1usize << m {
            let want = C64::from_polar(1.0, q.eval(x as f64));
            prop_assert!((u[(x, x)] - want).norm() < 1e-9);
        }
        prop_assert!(u.is_diagonal(1e-12));
    }
}

#[test]
fn permutation_circuits_match_definitions() {
    for m in 1..=8 {
        assert_eq!(perm_table(&shift_circuit(m)).unwrap(), perm_defs::shift_table(m));
        assert_eq!(perm_table(&r_perm_circuit(m)).unwrap(), perm_defs::r_table(m));
    }
    for m in 2..=8 {
        assert_eq!(perm_table(&q_perm_circuit(m).unwrap()).unwrap(), perm_defs::q_table(m));
        assert_eq!(perm_table(&t_perm_circuit(m).unwrap()).unwrap(), perm_defs::t_table(m));
        for b in 0..=m - 2 {
            assert_eq!(perm_table(&s_perm_circuit(m, b).unwrap()).unwrap(), perm_defs::s_table(m, b));
        }
    }
}

#[test]
fn comparator_matches_exhaustive_enumeration() {
    for m in 2..=12 {
        let prefixes = comparator_prefixes(m);
        for x in 0u64..1 << m {
            let bits: String = (0..m).rev().map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect();
            let matched = prefixes.iter().filter(|p| bits.starts_with(p.as_str())).count();
            assert!(matched <= 1, "prefixes overlap at m={m} x={x}");
            assert_eq!(matched == 1, 3 * x < 1 << m, "m={m} x={x}");
        }
    }
}
