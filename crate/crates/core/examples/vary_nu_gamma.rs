//! How attention mass moves from uniform to intra-class as ‖ν‖ grows.
//!
//! `cargo run --release --example vary_nu_gamma`

use csbm_attention::experiments::{run_sweep, ExperimentKind, Method, SweepConfig};

fn main() -> csbm_attention::Result<()> {
    let mut cfg = SweepConfig::new(ExperimentKind::VaryNuGamma);
    cfg.trials = 5;
    cfg.seed = 1;
    cfg.methods = vec![Method::Gat];
    let result = run_sweep(&cfg)?;
    println!("{:>10} {:>10} {:>10} {:>12}", "nu_units", "intra", "inter", "sum_gamma^2");
    for (point, v) in result.grid.iter().enumerate() {
        let s = result.summary(point, Method::Gat).expect("every point has a summary");
        let m = |name| s.metric(name).map_or(f64::NAN, |x| x.0);
        println!(
            "{v:>10.3} {:>10.3e} {:>10.3e} {:>12.5}",
            m("intra_gamma_mean"),
            m("inter_gamma_mean"),
            m("sum_sq_gamma_median")
        );
    }
    Ok(())
}
