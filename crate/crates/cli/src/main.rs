#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Bohr-type inequality laboratory.
#[derive(Debug, Parser)]
#[command(name = "bohrlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub cfg: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve every catalogued radius equation.
    Radii,
    /// Sweep sampled self-maps up to each stated radius.
    Verify,
    /// Evaluate extremals just beyond each stated radius.
    Sharpness,
    /// Reproduce the harmonic radius tables.
    Table,
    /// Run the lemma oracles on sampled self-maps.
    Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Root-finding tolerance (at least 1e-14).
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Series truncation order (at least 8).
    #[arg(long, global = true, default_value_t = 200)]
    pub trunc: usize,
    /// Number of sampled functions (at least 1).
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> std::result::Result<(), String> {
        if !(self.tol >= bohrlab::radius::MIN_TOLERANCE) {
            return Err(format!("--tol must be at least 1e-14, got {}", self.tol));
        }
        if self.samples < 1 {
            return Err("--samples must be at least 1".to_string());
        }
        if self.trunc < 8 {
            return Err(format!("--trunc must be at least 8, got {}", self.trunc));
        }
        Ok(())
    }
}

pub const EXIT_USAGE: u8 = 1;

/// A finished command: the report and the exit status.
pub struct Outcome {
    pub report: String,
    pub code: u8,
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("BOHRLAB_THREADS") {
        let n: usize = v.parse().with_context(|| format!("BOHRLAB_THREADS={v}"))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()?;
        }
    }
    Ok(())
}

fn emit(cfg: &RunConfig, report: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, report).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(msg) = cli.cfg.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    let outcome = commands::run(cli.command, &cli.cfg);
    match emit(&cli.cfg, &outcome.report) {
        Ok(()) => ExitCode::from(outcome.code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
