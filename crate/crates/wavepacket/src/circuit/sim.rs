//! Statevector and dense evaluation.
//!
//! The kernel works on a batch of `w` vectors stored as `2^width` rows of
//! length `w`; a statevector is the `w = 1` case and a dense unitary is
//! obtained by pushing all data basis states through at once.

use super::{Circuit, CircuitError, Gate, OneQ};
use crate::tensor::{Matrix, C64};
use std::f64::consts::FRAC_1_SQRT_2;

/// Dense evaluation limit on data plus ancilla qubits.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Statevector evaluation limit on data plus ancilla qubits.
pub const MAX_STATEVECTOR_QUBITS: usize = 26;

const LEAK_TOL: f64 = 1e-10;

enum Kernel {
    X(usize),
    /// `diag(1, phase)` on the target.
    Phase(usize, C64),
    Mat2(usize, [C64; 4]),
    Swap(usize, usize),
    Block(Vec<usize>, Matrix),
}

struct Compiled {
    mask: usize,
    val: usize,
    kernel: Kernel,
}

fn compile(g: &Gate) -> Compiled {
    let mut mask = 0usize;
    let mut val = 0usize;
    for c in g.all_controls() {
        mask |= 1 << c.qubit;
        if c.on {
            val |= 1 << c.qubit;
        }
    }
    let kernel = match g.core() {
        Gate::Single { op, target } => {
            let t = *target;
            match op {
                OneQ::X => Kernel::X(t),
                OneQ::Z => Kernel::Phase(t, C64::new(-1.0, 0.0)),
                OneQ::Rz(theta) => Kernel::Phase(t, C64::from_polar(1.0, *theta)),
                OneQ::H => {
                    let h = C64::new(FRAC_1_SQRT_2, 0.0);
                    Kernel::Mat2(t, [h, h, h, -h])
                }
                OneQ::Y => {
                    let z = C64::new(0.0, 0.0);
                    Kernel::Mat2(t, [z, C64::new(0.0, -1.0), C64::new(0.0, 1.0), z])
                }
            }
        }
        Gate::Swap { a, b } => Kernel::Swap(*a, *b),
        Gate::Custom { matrix, targets } => Kernel::Block(targets.clone(), matrix.clone()),
        Gate::Controlled { .. } => unreachable!("core strips control layers"),
    };
    Compiled { mask, val, kernel }
}

/// Calls `f` on every index in `0..dim` whose `fixed` bits equal `val`.
#[inline]
fn for_each_base(dim: usize, fixed: usize, val: usize, mut f: impl FnMut(usize)) {
    let free = (dim - 1) & !fixed;
    let mut sub = 0usize;
    loop {
        f(sub | val);
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
}

#[inline]
fn swap_rows(state: &mut [C64], w: usize, i: usize, j: usize) {
    if w == 1 {
        state.swap(i, j);
    } else {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let (a, b) = state.split_at_mut(hi * w);
        a[lo * w..lo * w + w].swap_with_slice(&mut b[..w]);
    }
}

fn apply_compiled(state: &mut [C64], w: usize, dim: usize, g: &Compiled) {
    match &g.kernel {
        Kernel::X(t) => {
            let tb = 1 << t;
            for_each_base(dim, g.mask | tb, g.val, |i| swap_rows(state, w, i, i | tb));
        }
        Kernel::Phase(t, ph) => {
            let tb = 1 << t;
            let ph = *ph;
            for_each_base(dim, g.mask | tb, g.val | tb, |i| {
                for z in &mut state[i * w..i * w + w] {
                    *z *= ph;
                }
            });
        }
        Kernel::Mat2(t, m) => {
            let tb = 1 << t;
            let m = *m;
            for_each_base(dim, g.mask | tb, g.val, |i| {
                let j = i | tb;
                for k in 0..w {
                    let a = state[i * w + k];
                    let b = state[j * w + k];
                    state[i * w + k] = m[0] * a + m[1] * b;
                    state[j * w + k] = m[2] * a + m[3] * b;
                }
            });
        }
        Kernel::Swap(a, b) => {
            let (ba, bb) = (1 << a, 1 << b);
            for_each_base(dim, g.mask | ba | bb, g.val, |i| swap_rows(state, w, i | ba, i | bb));
        }
        Kernel::Block(targets, m) => {
            let k = targets.len();
            let bd = 1usize << k;
            let offsets: Vec<usize> = (0..bd)
                .map(|s| (0..k).filter(|&l| s >> (k - 1 - l) & 1 == 1).map(|l| 1usize << targets[l]).sum())
                .collect();
            let tmask: usize = offsets[bd - 1];
            let mut buf = vec![C64::new(0.0, 0.0); bd * w];
            for_each_base(dim, g.mask | tmask, g.val, |i| {
                for (s, &off) in offsets.iter().enumerate() {
                    buf[s * w..s * w + w].copy_from_slice(&state[(i | off) * w..(i | off) * w + w]);
                }
                for (r, &off) in offsets.iter().enumerate() {
                    let row = &mut state[(i | off) * w..(i | off) * w + w];
                    row.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                    for s in 0..bd {
                        let coef = m[(r, s)];
                        if coef == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for (z, &b) in row.iter_mut().zip(&buf[s * w..s * w + w]) {
                            *z += coef * b;
                        }
                    }
                }
            });
        }
    }
}

/// Applies `gates` to a batch of `w` vectors laid out as `2^width` rows.
pub fn apply_gates(state: &mut [C64], w: usize, width: usize, gates: &[Gate]) -> Result<(), CircuitError> {
    let dim = 1usize << width;
    if state.len() != dim * w {
        return Err(CircuitError::DimensionMismatch { expected: dim * w, got: state.len() });
    }
    for g in gates {
        g.validate(width)?;
        apply_compiled(state, w, dim, &compile(g));
    }
    Ok(())
}

/// Runs `psi` (length `2^n`) through the circuit with ancillas in |0⟩.
pub fn apply_circuit(c: &Circuit, psi: &[C64]) -> Result<Vec<C64>, CircuitError> {
    let data_dim = 1usize << c.n;
    if psi.len() != data_dim {
        return Err(CircuitError::DimensionMismatch { expected: data_dim, got: psi.len() });
    }
    if c.width() > MAX_STATEVECTOR_QUBITS {
        return Err(CircuitError::DimensionTooLarge { qubits: c.width(), limit: MAX_STATEVECTOR_QUBITS });
    }
    let mut state = vec![C64::new(0.0, 0.0); 1usize << c.width()];
    state[..data_dim].copy_from_slice(psi);
    apply_gates(&mut state, 1, c.width(), &c.gates)?;
    let leak: f64 = state[data_dim..].iter().map(|z| z.norm_sqr()).sum();
    if leak > LEAK_TOL {
        return Err(CircuitError::AncillaLeakage { leak });
    }
    state.truncate(data_dim);
    if leak > 0.0 {
        let kept: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        let target: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if kept > 0.0 {
            let s = (target / kept).sqrt();
            state.iter_mut().for_each(|z| *z *= s);
        }
    }
    Ok(state)
}

/// Dense `2^n × 2^n` data-qubit unitary of the circuit.
pub fn circuit_to_unitary(c: &Circuit) -> Result<Matrix, CircuitError> {
    if c.width() > MAX_DENSE_QUBITS {
        return Err(CircuitError::DimensionTooLarge { qubits: c.width(), limit: MAX_DENSE_QUBITS });
    }
    let w = 1usize << c.n;
    let rows = 1usize << c.width();
    let mut state = vec![C64::new(0.0, 0.0); rows * w];
    for x in 0..w {
        state[x * w + x] = C64::new(1.0, 0.0);
    }
    apply_gates(&mut state, w, c.width(), &c.gates)?;
    let mut leak = 0.0f64;
    for x in 0..w {
        let off: f64 = (w..rows).map(|r| state[r * w + x].norm_sqr()).sum();
        leak = leak.max(off);
    }
    let u = Matrix::from_fn(w, |r, x| state[r * w + x]);
    if leak > LEAK_TOL {
        return Err(CircuitError::AncillaLeakage { leak });
    }
    Ok(u)
}
