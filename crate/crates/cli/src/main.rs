//! `stateclone`: run the canned experiments and print their reports.
//!
//! Exit status: 0 success, 1 a report check failed, 2 unreadable or
//! unparseable config (or bad arguments), 3 domain violation, 4 any other
//! validation failure. Errors go to stderr as a single JSON object.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;
use stateclone::experiment::{self, parse_complex, ExperimentKind, ExperimentSpec, OutputFormat, StateSpec};
use stateclone::Error;

#[derive(Parser, Debug)]
#[command(name = "stateclone", version, about = "State-dependent quantum copying experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Atomic-system config (TOML); defaults to a built-in hydrogen-like atom
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Input state: "a+bi,c+di,...", "plus", "minus" or "basis:K"
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_state)]
    state: Option<StateSpec>,

    /// Seed for random states and bases
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report format: json, csv or table
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Copy a state with the matched ancilla
    CloneDemo(CloneArgs),
    /// Copy with the ancilla frozen at one basis element
    FixedAncilla {
        #[command(flatten)]
        clone: CloneArgs,
        /// Ancilla basis index to freeze (0-based)
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Check s = s² for one overlap, or sweep s over [0, 1]
    NoCloningWitness {
        /// Overlap ⟨ψ|φ⟩, e.g. "0.5" or "0.3+0.4i"
        #[arg(long, allow_hyphen_values = true, value_parser = parse_overlap)]
        overlap: Option<Complex64>,
    },
    /// Tabulate dipole amplitudes and containment per excited level and mode
    SelectionRules,
    /// List the clonable polarization domain
    Domain,
    /// Copy a photon with the excited manifold as the ancilla
    StimulatedClone,
    /// Polarization state of a spontaneously emitted photon
    Spontaneous,
}

#[derive(Args, Debug)]
struct CloneArgs {
    /// Dimension of the random state when --state does not fix it
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// Use a seeded random ancilla basis instead of the computational one
    #[arg(long)]
    random_basis: bool,
}

fn parse_state(s: &str) -> Result<StateSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_overlap(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn build_spec(cli: Cli) -> (ExperimentSpec, Option<PathBuf>) {
    let c = cli.common;
    let kind = match &cli.command {
        Command::CloneDemo(_) => ExperimentKind::CloneDemo,
        Command::FixedAncilla { .. } => ExperimentKind::FixedAncilla,
        Command::NoCloningWitness { .. } => ExperimentKind::NoCloningWitness,
        Command::SelectionRules => ExperimentKind::SelectionRules,
        Command::Domain => ExperimentKind::Domain,
        Command::StimulatedClone => ExperimentKind::StimulatedClone,
        Command::Spontaneous => ExperimentKind::Spontaneous,
    };
    let mut spec = ExperimentSpec::new(kind);
    spec.config = c.config;
    spec.state = c.state;
    spec.seed = c.seed;
    spec.format = c.format;
    match cli.command {
        Command::CloneDemo(a) => {
            spec.dim = a.dim;
            spec.random_basis = a.random_basis;
        }
        Command::FixedAncilla { clone, index } => {
            spec.dim = clone.dim;
            spec.random_basis = clone.random_basis;
            spec.index = index;
        }
        Command::NoCloningWitness { overlap } => spec.overlap = overlap,
        _ => {}
    }
    (spec, c.out)
}

fn error_kind(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Config(_) => ("config", 2),
        Error::DomainViolation { .. } => ("domain_violation", 3),
        _ => ("validation", 4),
    }
}

fn fail(kind: &str, code: u8, message: String) -> ExitCode {
    let body = json!({ "error": { "kind": kind, "exit_code": code, "message": message } });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (spec, out) = build_spec(Cli::parse());

    let report = match experiment::run(&spec) {
        Ok(r) => r,
        Err(e) => {
            let (kind, code) = error_kind(&e);
            return fail(kind, code, e.to_string());
        }
    };
    let text = match report.render(spec.format) {
        Ok(t) => t,
        Err(e) => return fail("validation", 4, e.to_string()),
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                return fail("io", 4, format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        log::error!("one or more report checks failed");
        ExitCode::from(1)
    }
}
