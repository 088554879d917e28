//! `parhiggs`: command-line front end for the parabolic Higgs invariants.
//!
//! Exit status: 0 success, 2 malformed input, 3 well-formed input outside the
//! scope of a result (for example non-generic weights), 1 internal failure.

mod commands;
mod instance;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parhiggs_core::{rational, Rational};
use serde_json::json;

use crate::commands::Output;
use crate::instance::Instance;
use crate::report::Report;

#[derive(Parser)]
#[command(name = "parhiggs", version, about = "Exact invariants of parabolic U(p,q)-Higgs bundles and triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Digits after the point in decimal annotations.
    #[arg(long, global = true, default_value_t = 6)]
    decimal_places: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct Input {
    /// Problem-instance JSON file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct PointInput {
    #[command(flatten)]
    input: Input,
    /// Marked point to use when the surface has several.
    #[arg(long)]
    point: Option<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// U(p,q)-Higgs instances.
    #[command(subcommand)]
    Higgs(HiggsCommand),
    /// Parabolic triples (a Higgs instance stands for its minima triple).
    #[command(subcommand)]
    Triple(TripleCommand),
    /// Weighted flags at one point.
    #[command(subcommand)]
    Flag(FlagCommand),
    /// Representation varieties.
    #[command(subcommand)]
    Reps(RepsCommand),
    /// Orbifold exponent data.
    #[command(subcommand)]
    Orbifold(RepsCommand),
    /// Genericity checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand)]
enum HiggsCommand {
    /// Toledo invariant, bounds and the connectedness verdict.
    Classify(Input),
    /// Toledo invariant, bounds and the minima triple.
    Invariants(Input),
    /// Expected moduli dimension.
    Dimension(Input),
}

#[derive(Subcommand)]
enum TripleCommand {
    /// Stability window.
    Window(Input),
    /// Numerical walls in an open interval (default: the window).
    Walls {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lo: Option<Rational>,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        hi: Option<Rational>,
        /// Also list sigma-independent coincidences.
        #[arg(long)]
        dependent: bool,
    },
    /// Lower edge of the top chamber.
    SigmaL(Input),
    /// Existence at large sigma for equal ranks.
    Nonempty(Input),
}

#[derive(Subcommand)]
enum FlagCommand {
    /// Cokernel excess, by every applicable method.
    Rp(PointInput),
    /// Staircase support and the greedy representative.
    GenericMap(PointInput),
    /// Destabilizing weight subset.
    Subset(PointInput),
}

#[derive(Subcommand)]
enum RepsCommand {
    /// Degrees giving nonempty connected components.
    Components(Input),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Whether sigma avoids all walls and coincidences.
    Generic {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        sigma: Rational,
    },
}

/// A failed command with its exit status.
#[derive(Debug)]
pub enum Failure {
    Validation { kind: String, message: String },
    Domain { kind: String, message: String },
    Internal(String),
}

impl Failure {
    pub fn validation(kind: &str, message: String) -> Self {
        Failure::Validation { kind: kind.into(), message }
    }

    pub fn internal(message: String) -> Self {
        Failure::Internal(message)
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Validation { .. } => 2,
            Failure::Domain { .. } => 3,
            Failure::Internal(_) => 1,
        }
    }

    fn parts(&self) -> (&str, &str) {
        match self {
            Failure::Validation { kind, message } | Failure::Domain { kind, message } => (kind, message),
            Failure::Internal(message) => ("Internal", message),
        }
    }
}

impl From<parhiggs_core::Error> for Failure {
    fn from(e: parhiggs_core::Error) -> Self {
        let (kind, message) = (e.kind().to_string(), e.to_string());
        if e.is_validation() {
            Failure::Validation { kind, message }
        } else {
            Failure::Domain { kind, message }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let report = Report::new(cli.decimal_places);
    let load = |input: &Input| Instance::read(&input.input);
    match &cli.command {
        Command::Higgs(HiggsCommand::Classify(i)) => commands::higgs_classify(&load(i)?, report),
        Command::Higgs(HiggsCommand::Invariants(i)) => commands::higgs_invariants(&load(i)?, report),
        Command::Higgs(HiggsCommand::Dimension(i)) => commands::higgs_dimension(&load(i)?, report),
        Command::Triple(TripleCommand::Window(i)) => commands::triple_window(&load(i)?, report),
        Command::Triple(TripleCommand::Walls { input, lo, hi, dependent }) => {
            commands::triple_walls(&load(input)?, report, lo.clone(), hi.clone(), *dependent)
        }
        Command::Triple(TripleCommand::SigmaL(i)) => commands::triple_sigma_l(&load(i)?, report),
        Command::Triple(TripleCommand::Nonempty(i)) => commands::triple_nonempty(&load(i)?, report),
        Command::Flag(FlagCommand::Rp(p)) => commands::flag_rp(&load(&p.input)?, report, p.point.as_deref()),
        Command::Flag(FlagCommand::GenericMap(p)) => {
            commands::flag_generic_map(&load(&p.input)?, report, p.point.as_deref())
        }
        Command::Flag(FlagCommand::Subset(p)) => commands::flag_subset(&load(&p.input)?, report, p.point.as_deref()),
        Command::Reps(RepsCommand::Components(i)) => commands::reps_components(&load(i)?, report),
        Command::Orbifold(RepsCommand::Components(i)) => commands::orbifold_components(&load(i)?, report),
        Command::Check(CheckCommand::Generic { input, sigma }) => {
            commands::check_generic(&load(input)?, report, sigma.clone())
        }
    }
}

fn render(format: Format, out: &Output) -> String {
    match format {
        Format::Json => report::to_json(&out.value),
        Format::Text => report::to_text(&out.value),
        Format::Csv => out.csv.clone().unwrap_or_else(|| report::flat_csv(&out.value)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(render(cli.format, &out).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (kind, message) = failure.parts();
            if cli.format == Format::Json {
                let value = json!({ "error": { "kind": kind, "message": message, "exit_code": failure.code() } });
                print!("{}", report::to_json(&value));
            } else {
                eprintln!("error ({kind}): {message}");
            }
            ExitCode::from(failure.code())
        }
    }
}
