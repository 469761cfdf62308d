//! Runs every concentration check on one noisy-regime graph.
//!
//! `cargo run --release --example concentration`

use csbm_attention::attention::{attention_coefficients, build_clean_spec, AttentionSpec, Phi};
use csbm_attention::diagnostics::{
    check_class_degree_concentration, check_degree_concentration, check_gamma_ratio_bounds, check_sum_exp_bounds,
    check_uncommon_neighbors, ConcentrationReport, PairSampling, DEFAULT_DEGREE_ENVELOPE, DEFAULT_GAMMA_RATIO_BAND,
    DEFAULT_SUM_EXP_LOWER, DEFAULT_SUM_EXP_UPPER, DEFAULT_VIOLATION_FRACTION,
};
use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};
use csbm_attention::rng::stream;

fn show(r: &ConcentrationReport) {
    println!(
        "{:<20} {} violations {}/{} max deviation {:.4} bound {:.4}",
        r.statistic.as_str(),
        if r.passed { "pass" } else { "FAIL" },
        r.violations,
        r.total,
        r.max_deviation,
        r.bound
    );
}

fn main() -> csbm_attention::Result<()> {
    let n = 400;
    let d = default_feature_dim(n);
    let mut mu = vec![0.0; d];
    mu[0] = 0.1;
    let mut nu = vec![0.0; d];
    nu[0] = 0.1;
    let params = CsbmParams::new(n, 0.4, 0.33, mu, nu, 0.1, 0.1);
    let sample = sample_csbm(&params, 11)?;

    show(&check_degree_concentration(&sample, &params, DEFAULT_DEGREE_ENVELOPE));
    show(&check_class_degree_concentration(&sample, &params, DEFAULT_DEGREE_ENVELOPE));
    show(&check_uncommon_neighbors(
        &sample,
        &params,
        PairSampling::Random { count: 200 },
        DEFAULT_VIOLATION_FRACTION,
        &mut stream(11),
    )?);

    let mut s = vec![0.0; d];
    s[0] = 1.0;
    let identity = AttentionSpec::lipschitz(&s, Phi::Identity)?;
    show(&check_sum_exp_bounds(
        &sample,
        &params,
        &identity,
        DEFAULT_SUM_EXP_LOWER,
        DEFAULT_SUM_EXP_UPPER,
        DEFAULT_VIOLATION_FRACTION,
    )?);

    let gamma = attention_coefficients(&sample, &build_clean_spec(&params)?)?;
    let ratio = check_gamma_ratio_bounds(&sample, &gamma, &params, DEFAULT_GAMMA_RATIO_BAND, DEFAULT_VIOLATION_FRACTION)?;
    show(&ratio);
    for (name, value) in &ratio.observed {
        println!("  {name} = {value:.4}");
    }
    Ok(())
}
