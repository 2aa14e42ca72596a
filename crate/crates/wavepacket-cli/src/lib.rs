//! Command implementations behind the `wavepacket` binary.
//!
//! Each `cmd_*` function does the work of one subcommand and returns a
//! report value; the binary only parses flags and prints. Every file this
//! crate writes goes through [`to_fixed_json`], so repeated runs produce
//! byte-identical output.

use anyhow::{bail, ensure, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use wavepacket::circuit::{
    apply_circuit, circuit_to_json, circuit_to_unitary, gate_counts, to_fixed_json, Circuit, GateCounts,
};
use wavepacket::diag::BetaProfile;
use wavepacket::gabor::assemble_vg_matrix;
use wavepacket::oracle::{
    basis, dft, gabor_packet_residual, tg_matrix, transform_reference, tw_matrix, wavelet_packet_residual, BasisMatrix,
};
use wavepacket::tensor::{max_abs_diff, unitarity_defect, Matrix, C64};
use wavepacket::transform::{build_circuit, build_lowered, default_b, TransformKind, TransformParams};

/// Largest `n` accepted by [`cmd_verify`] (dense unitaries).
pub const VERIFY_MAX_N: usize = 10;
/// Largest `n` accepted by [`cmd_transform`].
pub const TRANSFORM_MAX_N: usize = 20;
/// Largest `n` accepted by [`cmd_basis_dump`].
pub const DUMP_MAX_N: usize = 9;

/// Number of probe signals used for the reallocation residuals.
const PROBE_SIGNALS: usize = 4;
const PROBE_SEED: u64 = 0x5eed_cafe;

/// A signal or coefficient vector on disk: `{"n": .., "data": [[re, im], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalFile {
    pub n: usize,
    pub data: Vec<[f64; 2]>,
}

impl SignalFile {
    pub fn from_values(n: usize, values: &[C64]) -> Self {
        SignalFile { n, data: values.iter().map(|z| [z.re, z.im]).collect() }
    }

    /// Checks the length and finiteness invariants and returns the values.
    pub fn values(&self) -> Result<Vec<C64>> {
        ensure!(self.n < usize::BITS as usize, "signal n={} is too large", self.n);
        let want = 1usize << self.n;
        ensure!(self.data.len() == want, "signal has {} entries, n={} needs {want}", self.data.len(), self.n);
        if let Some(i) = self.data.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
            bail!("signal entry {i} is not finite");
        }
        Ok(self.data.iter().map(|p| C64::new(p[0], p[1])).collect())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: SignalFile =
            serde_json::from_str(&text).with_context(|| format!("parsing signal file {}", path.display()))?;
        file.values()?;
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &to_fixed_json(self))
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Parses a `kind, n, b?, beta?` choice into validated parameters.
pub fn params(kind: TransformKind, n: usize, b: Option<usize>, beta: Option<BetaProfile>) -> Result<TransformParams> {
    Ok(TransformParams::new(kind, n, b, beta.unwrap_or(BetaProfile::Linear))?)
}

// ---------------------------------------------------------------- build

#[derive(Debug, Clone, Serialize)]
pub struct BuildSummary {
    pub label: String,
    pub data_qubits: usize,
    pub ancilla: usize,
    pub gates: usize,
    pub counts: GateCounts,
    /// Elementary-equivalent total of the lowered circuit.
    pub lowered_elementary: u64,
    pub lowered_ancilla: usize,
}

impl std::fmt::Display for BuildSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.label)?;
        writeln!(f, "  qubits: {} data + {} ancilla", self.data_qubits, self.ancilla)?;
        let c = &self.counts;
        writeln!(
            f,
            "  gates: {} ({} one-qubit, {} two-qubit, {} swap, {} dense block)",
            self.gates, c.single_qubit, c.two_qubit, c.swap, c.custom_block
        )?;
        for (k, count) in &c.multi_control {
            writeln!(f, "  gates with {k} controls: {count}")?;
        }
        write!(
            f,
            "  elementary-equivalent: {} as built, {} lowered ({} ancilla)",
            c.elementary, self.lowered_elementary, self.lowered_ancilla
        )
    }
}

/// Synthesizes the circuit, writes its JSON to `out` and returns a summary.
/// With `lowered`, the written circuit is the compiled form used for counts.
pub fn cmd_build(p: &TransformParams, out: &Path, lowered: bool) -> Result<BuildSummary> {
    let low = build_lowered(p)?;
    let circuit = if lowered { low.clone() } else { build_circuit(p)? };
    write_text(out, &circuit_to_json(&circuit))?;
    Ok(BuildSummary {
        label: p.label(),
        data_qubits: circuit.n,
        ancilla: circuit.ancilla,
        gates: circuit.gates.len(),
        counts: gate_counts(&circuit),
        lowered_elementary: gate_counts(&low).elementary,
        lowered_ancilla: low.ancilla,
    })
}

// ---------------------------------------------------------------- verify

/// One named residual and whether it met the tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub tol: f64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, value: f64) {
        // NaN never passes
        let pass = value <= self.tol;
        self.checks.push(Check { name: name.into(), value, pass });
    }

    fn fail(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.checks.push(Check { name: format!("{} ({err})", name.into()), value: f64::NAN, pass: false });
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} (tol {:e})", self.label, self.tol)?;
        for c in &self.checks {
            writeln!(f, "  {:<4} {:<28} {:.3e}", if c.pass { "ok" } else { "FAIL" }, c.name, c.value)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn random_signal(rng: &mut impl Rng, len: usize) -> Vec<C64> {
    (0..len).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

/// Builds the circuit and the oracle basis and measures how far apart they
/// are. Failures are recorded in the report rather than returned, so the
/// only error is an out-of-range `n`.
pub fn cmd_verify(p: &TransformParams, tol: f64) -> Result<VerifyReport> {
    ensure!(p.n <= VERIFY_MAX_N, "verify supports n <= {VERIFY_MAX_N}, got n={}", p.n);
    let mut report = VerifyReport { label: p.label(), tol, checks: Vec::new() };

    let psi = match basis(p) {
        Ok(psi) => psi,
        Err(e) => {
            report.fail("oracle basis", e);
            return Ok(report);
        }
    };
    report.push("basis orthonormality", unitarity_defect(&psi.matrix));

    match build_circuit(p).map_err(anyhow::Error::from).and_then(|c| Ok(circuit_to_unitary(&c)?)) {
        Ok(u) => {
            report.push("circuit vs oracle", u.max_abs_diff(&psi.analysis()));
            report.push("circuit unitarity", unitarity_defect(&u));
        }
        Err(e) => report.fail("circuit vs oracle", e),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let probes: Vec<Vec<C64>> = (0..PROBE_SIGNALS).map(|_| random_signal(&mut rng, p.dim())).collect();
    let lowered = || -> Result<(f64, usize)> {
        let low = build_lowered(p)?;
        let mut worst = 0.0f64;
        for f in &probes {
            worst = worst.max(max_abs_diff(&apply_circuit(&low, f)?, &transform_reference(p, f)?));
        }
        Ok((worst, low.ancilla))
    };
    match lowered() {
        Ok((worst, ancilla)) => {
            report.push("lowered circuit vs oracle", worst);
            if ancilla > 2 {
                report.fail("lowered ancilla count", format!("{ancilla} > 2"));
            }
        }
        Err(e) => report.fail("lowered circuit", e),
    }

    let residuals = || -> Result<Option<f64>> {
        let mut worst = None;
        for f in &probes {
            let fhat = dft(f);
            let r = match p.kind {
                TransformKind::GaborBlended => gabor_packet_residual(&fhat, p.n, p.b, p.beta)?,
                TransformKind::Meyer => wavelet_packet_residual(&fhat, p.n, p.beta)?,
                TransformKind::GaborSharp | TransformKind::Shannon => return Ok(None),
            };
            worst = Some(r.max(worst.unwrap_or(0.0)));
        }
        Ok(worst)
    };
    match residuals() {
        Ok(Some(r)) => report.push("reallocation identity", r),
        Ok(None) => {}
        Err(e) => report.fail("reallocation identity", e),
    }
    Ok(report)
}

// ---------------------------------------------------------------- transform

/// Applies the transform (or its adjoint) to the signal in `input` and
/// writes the result to `out`. Runs on the statevector path only.
pub fn cmd_transform(p: &TransformParams, input: &Path, out: &Path, inverse: bool) -> Result<SignalFile> {
    ensure!(p.n <= TRANSFORM_MAX_N, "transform supports n <= {TRANSFORM_MAX_N}, got n={}", p.n);
    let file = SignalFile::read(input)?;
    ensure!(file.n == p.n, "signal has n={}, transform expects n={}", file.n, p.n);
    let result = SignalFile::from_values(p.n, &transform_values(p, &file.values()?, inverse)?);
    result.write(out)?;
    Ok(result)
}

/// In-memory form of [`cmd_transform`].
pub fn transform_values(p: &TransformParams, f: &[C64], inverse: bool) -> Result<Vec<C64>> {
    let mut c: Circuit = build_circuit(p)?;
    if inverse {
        c = c.adjoint();
    }
    Ok(apply_circuit(&c, f)?)
}

// ---------------------------------------------------------------- gatecount

#[derive(Debug, Clone, Serialize)]
pub struct GateCountRow {
    pub n: usize,
    pub b: usize,
    pub elementary: u64,
    pub ancilla: usize,
    pub ratio_n2: f64,
    pub ratio_n3: f64,
}

/// How `b` is chosen for each `n` of a Gabor sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BPolicy {
    /// `⌊(n−1)/2⌋`.
    Default,
    Fixed(usize),
}

/// Lowered elementary-equivalent counts for every `n` in `ns`.
pub fn cmd_gatecount(
    kind: TransformKind,
    ns: impl IntoIterator<Item = usize>,
    policy: BPolicy,
    beta: Option<BetaProfile>,
) -> Result<Vec<GateCountRow>> {
    ns.into_iter()
        .map(|n| {
            let b = match policy {
                BPolicy::Default => default_b(n),
                BPolicy::Fixed(b) => b,
            };
            let p = params(kind, n, Some(b), beta)?;
            let c = build_lowered(&p)?;
            let e = gate_counts(&c).elementary;
            Ok(GateCountRow {
                n,
                b,
                elementary: e,
                ancilla: c.ancilla,
                ratio_n2: e as f64 / (n * n) as f64,
                ratio_n3: e as f64 / (n * n * n) as f64,
            })
        })
        .collect()
}

pub fn format_gatecount(kind: TransformKind, rows: &[GateCountRow]) -> String {
    let mut s = format!(
        "{kind}\n{:>4} {:>4} {:>12} {:>8} {:>10} {:>10}\n",
        "n", "b", "count", "ancilla", "count/n^2", "count/n^3"
    );
    for r in rows {
        let b = if kind.is_gabor() { r.b.to_string() } else { "-".into() };
        let _ = writeln!(
            s,
            "{:>4} {:>4} {:>12} {:>8} {:>10.3} {:>10.4}",
            r.n, b, r.elementary, r.ancilla, r.ratio_n2, r.ratio_n3
        );
    }
    s
}

// ---------------------------------------------------------------- basis dump

/// Which matrix the heatmap CSV shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatmapSource {
    /// Basis vectors in space, one per column.
    Psi,
    /// Basis vectors in frequency.
    PsiHat,
    /// The reallocation `T_G` (blended Gabor) or `T_W` (Meyer).
    Realloc,
    /// The block form `V_G` of the blended Gabor reallocation.
    Vg,
}

#[derive(Serialize)]
struct BasisDoc<'a> {
    kind: &'a str,
    n: usize,
    b: Option<usize>,
    beta: Option<&'a str>,
    hat: Vec<Vec<[f64; 2]>>,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim()).map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// JSON document for a basis: parameters plus `hat` and `matrix` as
/// row-major `[re, im]` pairs.
pub fn basis_json(psi: &BasisMatrix) -> String {
    let p = &psi.params;
    to_fixed_json(&BasisDoc {
        kind: p.kind.name(),
        n: p.n,
        b: p.kind.is_gabor().then_some(p.b),
        beta: p.kind.uses_beta().then(|| p.beta.name()),
        hat: rows_of(&psi.hat),
        matrix: rows_of(&psi.matrix),
    })
}

/// `row,col,magnitude` lines for every entry of `m`.
pub fn heatmap_csv(m: &Matrix) -> String {
    let mut s = String::from("row,col,magnitude\n");
    for r in 0..m.dim() {
        for (c, z) in m.row(r).iter().enumerate() {
            let _ = writeln!(s, "{r},{c},{:.16e}", z.norm());
        }
    }
    s
}

/// Path of the heatmap written next to `out`.
pub fn heatmap_path(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

/// Writes the basis JSON to `out` and the magnitude heatmap of `source`
/// to [`heatmap_path`]`(out)`.
pub fn cmd_basis_dump(p: &TransformParams, out: &Path, source: HeatmapSource) -> Result<PathBuf> {
    ensure!(p.n <= DUMP_MAX_N, "basis-dump supports n <= {DUMP_MAX_N}, got n={}", p.n);
    let psi = basis(p)?;
    let heat = match (source, p.kind) {
        (HeatmapSource::Psi, _) => psi.matrix.clone(),
        (HeatmapSource::PsiHat, _) => psi.hat.clone(),
        (HeatmapSource::Realloc, TransformKind::GaborBlended) => tg_matrix(p.n, p.b, p.beta)?,
        (HeatmapSource::Realloc, TransformKind::Meyer) => tw_matrix(p.n, p.beta)?,
        (HeatmapSource::Vg, TransformKind::GaborBlended) => assemble_vg_matrix(p.b, p.n, p.beta),
        (HeatmapSource::Realloc | HeatmapSource::Vg, kind) => {
            bail!("{kind} has no reallocation matrix of that form")
        }
    };
    write_text(out, &basis_json(&psi))?;
    let csv = heatmap_path(out);
    write_text(&csv, &heatmap_csv(&heat))?;
    Ok(csv)
}
