//! `spinor-polar`: command-line front end of the spinor-polar toolkit.
//!
//! Reads one JSON job file, runs the requested computation, and prints a
//! deterministic JSON report. Exit status: 0 when every requested check
//! passes its tolerance, 1 on a tolerance failure, 2 on input errors.
//!
//! The report always goes to stdout. It is additionally written to the file
//! named by `--output`, or — when `--output` is absent — to
//! `$SPINOR_POLAR_REPORT_DIR/report.json` if that variable is set.

mod input;
mod report;
mod run;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spinor-polar",
    version,
    about = "Classification, polar decomposition, and first-order residuals of spinor fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lounesto class of a spinor.
    Classify(Job),
    /// All sixteen bilinear covariants of a spinor.
    Bilinears(Job),
    /// Residuals of the ten Fierz identities.
    Fierz(Job),
    /// Polar decomposition (regular or singular) with a round-trip check.
    Polar(Job),
    /// Component-form and polar-form first-order residuals at sample points.
    DiracCheck(Job),
    /// The constant flagpole matrix of a connection, with an optional
    /// annihilation check.
    FlagpoleMatrix(Job),
    /// Doubly-chiral plane-wave expansion along a straight path.
    Expand(Job),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Bilinears(_) => "bilinears",
            Command::Fierz(_) => "fierz",
            Command::Polar(_) => "polar",
            Command::DiracCheck(_) => "dirac-check",
            Command::FlagpoleMatrix(_) => "flagpole-matrix",
            Command::Expand(_) => "expand",
        }
    }

    fn job(&self) -> &Job {
        match self {
            Command::Classify(j)
            | Command::Bilinears(j)
            | Command::Fierz(j)
            | Command::Polar(j)
            | Command::DiracCheck(j)
            | Command::FlagpoleMatrix(j)
            | Command::Expand(j) => j,
        }
    }
}

#[derive(Args)]
struct Job {
    /// JSON job file with the spinor / connection / path data.
    #[arg(long, short)]
    input: PathBuf,

    /// Also write the report to this file.
    #[arg(long, short)]
    output: Option<PathBuf>,

    /// Relative tolerance for classification decisions.
    #[arg(long, default_value_t = spinor_polar::DEFAULT_CLASS_TOL)]
    tol_class: f64,

    /// Tolerance for residual checks.
    #[arg(long, default_value_t = spinor_polar::DEFAULT_RESIDUAL_TOL)]
    tol_residual: f64,

    /// Finite-difference step for sampled fields.
    #[arg(long, default_value_t = spinor_polar::DEFAULT_FD_STEP)]
    fd_step: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = cli.command.job();

    let settings = run::Settings {
        tol_class: job.tol_class,
        tol_residual: job.tol_residual,
        fd_step: job.fd_step,
    };
    let doc = match input::InputDoc::load(&job.input) {
        Ok(doc) => doc,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };

    let outcome = match run::run(cli.command.name(), &doc, settings) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };

    let rendered = report::render(&outcome.report);
    print!("{rendered}");

    let destination = job.output.clone().or_else(|| {
        std::env::var_os("SPINOR_POLAR_REPORT_DIR")
            .map(|dir| PathBuf::from(dir).join("report.json"))
    });
    if let Some(path) = destination {
        if let Err(err) = std::fs::write(&path, &rendered) {
            eprintln!("error: cannot write report to {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }

    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
