//! Runs a reduced clean vary-q sweep and writes the CSV pair.
//!
//! `cargo run --release --example sweep_clean_q [output.csv]`

use std::path::PathBuf;

use csbm_attention::experiments::{emit_csv, run_sweep, ExperimentKind, Method, SweepConfig};

fn main() -> csbm_attention::Result<()> {
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("clean_vary_q_positive.csv"));

    let mut cfg = SweepConfig::new(ExperimentKind::CleanVaryQPositive);
    cfg.grid.points = 6;
    cfg.trials = 10;
    cfg.seed = 1;
    let result = run_sweep(&cfg)?;
    let summary = emit_csv(&result, &out)?;

    for (point, q) in result.grid.iter().enumerate() {
        let acc = |m| result.summary(point, m).and_then(|s| s.metric("accuracy")).map_or(f64::NAN, |v| v.0);
        println!("q = {q:.3}: gat {:.4} gcn {:.4}", acc(Method::Gat), acc(Method::Gcn));
    }
    println!("wrote {} and {}", out.display(), summary.display());
    Ok(())
}
