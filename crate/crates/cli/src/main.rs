//! `gslie`: verify the Lie symmetry analysis of the Grad-Shafranov
//! equation family from first principles and diff the derived tables
//! against the published ones.

use clap::{Args, Parser, Subcommand};
use gslie_cli::commands;
use gslie_cli::config::{ConfigError, RunConfig};
use gslie_cli::report::Report;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gslie",
    about = "Symbolic-numeric verification of Grad-Shafranov Lie symmetry analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args, Clone)]
struct Overrides {
    /// JSON config file with the RunConfig fields
    #[arg(long, global = true)]
    config: Option<String>,
    /// Equation coefficient a (rational text)
    #[arg(long, global = true)]
    a: Option<String>,
    /// Equation exponent p (rational text)
    #[arg(long, global = true)]
    p: Option<String>,
    /// Flux function F(u) (expression text)
    #[arg(long = "F", global = true)]
    f: Option<String>,
    /// Flux function G(u) (expression text)
    #[arg(long = "G", global = true)]
    g: Option<String>,
    /// RNG seed for all sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count for numeric verdicts
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Residual tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON report here
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the catalog of symmetry generators (or one --candidate)
    CheckSymmetries {
        /// Candidate field "xi1,xi2,phi" checked against the configured equation
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Recompute the commutator, quotient, and adjoint tables and diff them
    /// against the printed transcriptions
    Tables,
    /// Center, derived series, Killing form, Levi decomposition
    Algebra,
    /// Classify a1*X1+a2*X2+a3*X3+a4*X4 into the optimal system
    Classify {
        a1: String,
        a2: String,
        a3: String,
        a4: String,
        /// Additionally rescale the a*X1+b*X2+X4 family (off by default)
        #[arg(long)]
        full_normalize: bool,
    },
    /// Verify every catalog solution against its equation
    VerifySolutions,
    /// Evaluate one special function: series vs quadrature oracle
    Specfun { name: String, x: f64 },
    /// Generate the determining equations for the configured equation
    Determining,
}

fn build_config(overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let mut config = match &overrides.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(a) = &overrides.a {
        config.equation.a = a.clone();
    }
    if let Some(p) = &overrides.p {
        config.equation.p = p.clone();
    }
    if let Some(f) = &overrides.f {
        config.equation.f = f.clone();
    }
    if let Some(g) = &overrides.g {
        config.equation.g = g.clone();
    }
    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    if let Some(samples) = overrides.samples {
        config.samples = samples;
    }
    if let Some(tol) = overrides.tol {
        config.tol = tol;
    }
    config.validate()?;
    Ok(config)
}

fn run() -> Result<Report, ConfigError> {
    let cli = Cli::parse();
    let config = build_config(&cli.overrides)?;
    let report = match &cli.command {
        Command::CheckSymmetries { candidate } => {
            commands::cmd_check_symmetries(&config, candidate.as_deref())?
        }
        Command::Tables => commands::cmd_tables(&config)?,
        Command::Algebra => commands::cmd_algebra(&config)?,
        Command::Classify {
            a1,
            a2,
            a3,
            a4,
            full_normalize,
        } => {
            let coeffs = vec![a1.clone(), a2.clone(), a3.clone(), a4.clone()];
            commands::cmd_classify(&coeffs, &config, *full_normalize)?
        }
        Command::VerifySolutions => commands::cmd_verify_solutions(&config)?,
        Command::Specfun { name, x } => commands::cmd_specfun(name, *x, &config)?,
        Command::Determining => commands::cmd_determining(&config)?,
    };
    if let Some(path) = &cli.overrides.out {
        std::fs::write(path, report.to_json())
            .map_err(|e| ConfigError(format!("cannot write {path}: {e}")))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run() {
        Ok(report) => {
            print!("{}", report.render_text());
            ExitCode::from(commands::status_exit_code(report.status))
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
