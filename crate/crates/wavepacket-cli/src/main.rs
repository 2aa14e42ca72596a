use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use wavepacket::diag::BetaProfile;
use wavepacket::transform::TransformKind;
use wavepacket_cli::{
    cmd_basis_dump, cmd_build, cmd_gatecount, cmd_transform, cmd_verify, format_gatecount, params, BPolicy,
    HeatmapSource,
};

#[derive(Parser)]
#[command(name = "wavepacket", version, about = "Build, verify and apply wave packet transform circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TransformArgs {
    /// gabor-sharp, gabor-blended, shannon or meyer
    #[arg(long, value_parser = parse_kind)]
    kind: TransformKind,
    /// Number of data qubits (signal length 2^n)
    #[arg(long)]
    n: usize,
    /// Window exponent for Gabor kinds [default: (n-1)/2 rounded down]
    #[arg(long)]
    b: Option<usize>,
    /// Blending profile: linear, quadratic or deg7 [default: linear]
    #[arg(long, value_parser = parse_beta)]
    beta: Option<BetaProfile>,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit and write it as JSON
    Build {
        #[command(flatten)]
        t: TransformArgs,
        #[arg(long)]
        out: PathBuf,
        /// Write the compiled circuit (swaps absorbed, multi-controls lowered)
        #[arg(long)]
        lowered: bool,
    },
    /// Compare the circuit with the classical reference; exit 0 iff every residual <= tol
    Verify {
        #[command(flatten)]
        t: TransformArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Apply the transform to a signal file
    Transform {
        #[command(flatten)]
        t: TransformArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Apply the inverse transform
        #[arg(long)]
        inverse: bool,
    },
    /// Print lowered gate counts over a range of n
    Gatecount {
        #[arg(long, value_parser = parse_kind)]
        kind: TransformKind,
        /// A single n or an inclusive range such as 4..12
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Fixed window exponent for Gabor kinds [default: (n-1)/2 rounded down per n]
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_parser = parse_beta)]
        beta: Option<BetaProfile>,
    },
    /// Write the basis matrix as JSON plus a magnitude heatmap CSV
    BasisDump {
        #[command(flatten)]
        t: TransformArgs,
        #[arg(long)]
        out: PathBuf,
        /// Matrix shown in the heatmap
        #[arg(long, value_enum, default_value_t = Heatmap::Psi)]
        heatmap: Heatmap,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Heatmap {
    Psi,
    PsiHat,
    Realloc,
    Vg,
}

fn parse_kind(s: &str) -> Result<TransformKind, String> {
    s.parse().map_err(|e: wavepacket::transform::InvalidParams| e.0)
}

fn parse_beta(s: &str) -> Result<BetaProfile, String> {
    BetaProfile::from_name(s).ok_or_else(|| format!("unknown beta profile '{s}' (linear, quadratic, deg7)"))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => num(s).map(|n| n..=n),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { t, out, lowered } => {
            let summary = cmd_build(&params(t.kind, t.n, t.b, t.beta)?, &out, lowered)?;
            println!("{summary}");
            println!("wrote {}", out.display());
        }
        Command::Verify { t, tol } => {
            let report = cmd_verify(&params(t.kind, t.n, t.b, t.beta)?, tol)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Transform { t, input, out, inverse } => {
            cmd_transform(&params(t.kind, t.n, t.b, t.beta)?, &input, &out, inverse)?;
            println!("wrote {}", out.display());
        }
        Command::Gatecount { kind, n, b, beta } => {
            if n.is_empty() {
                bail!("empty n range");
            }
            let policy = b.map_or(BPolicy::Default, BPolicy::Fixed);
            print!("{}", format_gatecount(kind, &cmd_gatecount(kind, n, policy, beta)?));
        }
        Command::BasisDump { t, out, heatmap } => {
            let source = match heatmap {
                Heatmap::Psi => HeatmapSource::Psi,
                Heatmap::PsiHat => HeatmapSource::PsiHat,
                Heatmap::Realloc => HeatmapSource::Realloc,
                Heatmap::Vg => HeatmapSource::Vg,
            };
            let csv = cmd_basis_dump(&params(t.kind, t.n, t.b, t.beta)?, &out, source)?;
            println!("wrote {} and {}", out.display(), csv.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
