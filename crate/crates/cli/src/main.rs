//! `redge`: command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

mod commands;
mod output;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use redge::Rational;

use output::{Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "redge", version, about = "Exact Random Edge analysis on 3-polytope digraphs")]
struct Cli {
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    DualCyclic,
    Backbone,
    Example2,
    Example3,
}

impl From<FamilyArg> for redge::constructions::Family {
    fn from(f: FamilyArg) -> Self {
        use redge::constructions::Family;
        match f {
            FamilyArg::DualCyclic => Family::DualCyclic,
            FamilyArg::Backbone => Family::Backbone,
            FamilyArg::Example2 => Family::Example2,
            FamilyArg::Example3 => Family::Example3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportFormat {
    Dot,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// DPG input file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family member as a DPG file.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// n for dual-cyclic, k otherwise.
        #[arg(long)]
        param: usize,
    },
    /// Check the realizability conditions.
    Validate(InputArg),
    /// Exact expected number of steps from one vertex.
    Eval {
        #[command(flatten)]
        input: InputArg,
        /// Defaults to the top vertex.
        #[arg(long)]
        start: Option<usize>,
    },
    /// Probability that the walk uses each edge.
    Probs {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        start: Option<usize>,
    },
    /// Monte Carlo estimate of the expected number of steps.
    Simulate {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// The (alpha, beta) inequality system.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Upper bound on f(n) from a feasible point.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<Rational>,
        #[arg(long)]
        beta: Option<Rational>,
    },
    /// Exact f(n) by exhaustive enumeration.
    Enumerate {
        #[arg(long)]
        facets: usize,
        /// Worker threads; 0 uses every core, 1 runs sequentially.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Permit n = 10.
        #[arg(long)]
        allow_long: bool,
    },
    /// Recompute every reference number and compare with the manifest.
    Reproduce {
        /// Manifest file; defaults to the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Convert a DPG file to another format.
    Export {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
    },
}

#[derive(Subcommand, Debug)]
enum CertAction {
    /// List every inequality with its case label and source.
    Show,
    /// Feasibility of one point.
    Check {
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        beta: Rational,
    },
    /// Minimize a nonnegative objective over the system.
    Solve {
        /// Objective coefficients `a,b` for `a*alpha + b*beta`.
        #[arg(long, default_value = "1,2")]
        obj: String,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = Output::new(cli.out, cli.quiet);
    match cli.command {
        Command::Gen { family, param } => commands::gen(&mut out, family.into(), param),
        Command::Validate(i) => commands::validate(&mut out, &i.input),
        Command::Eval { input, start } => commands::eval(&mut out, &input.input, start),
        Command::Probs { input, start } => commands::probs(&mut out, &input.input, start),
        Command::Simulate {
            input,
            start,
            trials,
            seed,
            jobs,
        } => commands::simulate(&mut out, &input.input, start, trials, seed, jobs),
        Command::Cert { action } => match action {
            CertAction::Show => commands::cert_show(&mut out),
            CertAction::Check { alpha, beta } => commands::cert_check(&mut out, alpha, beta),
            CertAction::Solve { obj } => commands::cert_solve(&mut out, &obj),
        },
        Command::Bound { n, alpha, beta } => commands::bound(&mut out, n, alpha, beta),
        Command::Enumerate {
            facets,
            jobs,
            checkpoint,
            allow_long,
        } => commands::enumerate(&mut out, facets, jobs, checkpoint, allow_long),
        Command::Reproduce { manifest } => reproduce::run(&mut out, manifest.as_deref()),
        Command::Export { input, format } => commands::export(&mut out, &input.input, format),
    }?;
    out.finish()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
