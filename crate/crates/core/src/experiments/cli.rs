//! `csbm-lab` command line.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use super::config::load_config;
use super::diagnose::{diagnostic_params, emit_diagnostics_csv, run_diagnostics};
use super::{emit_csv, run_sweep, ExperimentKind, SweepConfig};
use crate::error::Error;
use crate::model::sample_csbm;

/// Directory for results when neither `--out` nor an absolute `output` is
/// given.
pub const OUT_DIR_ENV: &str = "CSBM_LAB_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "csbm-lab", version, about = "Graph attention experiments on the contextual stochastic block model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Overrides {
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per grid point.
    #[arg(long)]
    trials: Option<usize>,
    /// Output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a sweep and write trial and summary CSV files.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Dump one sampled graph as text.
    Sample {
        /// Sweep file; the default is clean_vary_q_positive at q = 0.33.
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the concentration checks and write a diagnostics CSV.
    Diagnose {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// List experiment kinds.
    ListExperiments,
}

fn apply(cfg: &mut SweepConfig, o: &Overrides) -> Result<(), Error> {
    if let Some(seed) = o.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = o.trials {
        cfg.trials = trials;
    }
    cfg.validate()
}

/// `--out`, else the config's `output` (relative paths resolved against
/// `$CSBM_LAB_OUT_DIR` when set), else `<dir>/<experiment><suffix>.csv`.
pub fn resolve_output(cli_out: Option<&Path>, cfg: &SweepConfig, suffix: &str) -> PathBuf {
    if let Some(out) = cli_out {
        return out.to_path_buf();
    }
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (&cfg.output, dir) {
        (Some(path), Some(dir)) if path.is_relative() => dir.join(path),
        (Some(path), _) => path.clone(),
        (None, dir) => dir
            .unwrap_or_default()
            .join(format!("{}{suffix}.csv", cfg.kind.as_str())),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } | Error::Csv { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Sweep { config, overrides } => {
            let mut cfg = load_config(&config)?;
            apply(&mut cfg, &overrides)?;
            let out = resolve_output(overrides.out.as_deref(), &cfg, "");
            let result = run_sweep(&cfg)?;
            let summary = emit_csv(&result, &out)?;
            println!(
                "{}: {} rows -> {} (summary {})",
                cfg.kind,
                result.trials.len(),
                out.display(),
                summary.display()
            );
        }
        Command::Sample { config, seed, out } => {
            let mut cfg = match config {
                Some(path) => load_config(&path)?,
                None => SweepConfig::new(ExperimentKind::CleanVaryQPositive),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let params = diagnostic_params(&cfg)?;
            let sample = sample_csbm(&params, cfg.seed)?;
            match out {
                Some(path) => {
                    let mut file = io::BufWriter::new(fs::File::create(&path).map_err(|e| Error::io(&path, e))?);
                    sample
                        .write_dump(&mut file)
                        .and_then(|_| file.flush())
                        .map_err(|e| Error::io(&path, e))?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut lock = stdout.lock();
                    sample.write_dump(&mut lock).map_err(|e| Error::io("<stdout>", e))?;
                }
            }
        }
        Command::Diagnose { config, overrides } => {
            let mut cfg = load_config(&config)?;
            apply(&mut cfg, &overrides)?;
            let out = resolve_output(overrides.out.as_deref(), &cfg, "_diagnostics");
            let rows = run_diagnostics(&cfg)?;
            emit_diagnostics_csv(cfg.kind.as_str(), &rows, &out)?;
            let passed = rows.iter().filter(|r| r.report.passed).count();
            println!("{}: {passed}/{} checks passed -> {}", cfg.kind, rows.len(), out.display());
        }
        Command::ListExperiments => {
            for kind in ExperimentKind::ALL {
                println!("{:<24} {}", kind.as_str(), kind.description());
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_with_one() {
        assert_eq!(cli_main(["csbm-lab"]), EXIT_CONFIG);
        assert_eq!(cli_main(["csbm-lab", "sweep"]), EXIT_CONFIG);
        assert_eq!(cli_main(["csbm-lab", "list-experiments", "--bogus"]), EXIT_CONFIG);
        assert_eq!(cli_main(["csbm-lab", "list-experiments"]), EXIT_OK);
    }

    #[test]
    fn explicit_out_wins() {
        let cfg = SweepConfig::new(ExperimentKind::CleanVaryMu);
        assert_eq!(
            resolve_output(Some(Path::new("x/y.csv")), &cfg, ""),
            Path::new("x/y.csv")
        );
    }
}
