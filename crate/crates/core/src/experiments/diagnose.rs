//! Concentration diagnostics over repeated samples of one configuration.

use std::path::Path;

use super::csv_io::format_float;
use super::sweep::gat_spec;
use super::SweepConfig;
use crate::attention::{attention_coefficients, AttentionSpec, Phi};
use crate::diagnostics::{
    check_class_degree_concentration, check_degree_concentration, check_gamma_ratio_bounds,
    check_sum_exp_bounds, check_uncommon_neighbors, ConcentrationReport, PairSampling, DEFAULT_DEGREE_ENVELOPE,
    DEFAULT_GAMMA_RATIO_BAND, DEFAULT_PAIR_SAMPLE, DEFAULT_SUM_EXP_LOWER, DEFAULT_SUM_EXP_UPPER,
    DEFAULT_VIOLATION_FRACTION,
};
use crate::error::{Error, Result};
use crate::model::{sample_csbm, CsbmParams};
use crate::rng::{derive_seed, stream, trial_seed};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticRow {
    pub trial: usize,
    pub seed: u64,
    pub report: ConcentrationReport,
}

pub const DIAGNOSTIC_HEADER: [&str; 17] = [
    "experiment",
    "trial",
    "seed",
    "statistic",
    "center",
    "envelope",
    "bound",
    "max_deviation",
    "median_deviation",
    "q95_deviation",
    "violations",
    "total",
    "degenerate",
    "precondition_met",
    "passed",
    "violation_fraction",
    "observed",
];

/// Parameters the diagnostics run at: the configured `q` when `q` is swept,
/// otherwise the first grid point.
pub fn diagnostic_params(config: &SweepConfig) -> Result<CsbmParams> {
    let v = if config.kind.varies_q() { config.q } else { config.grid.start };
    config.point_params(v)
}

/// Runs every check on `config.trials` fresh samples.
///
/// The sum-of-exponentials check uses the identity score along
/// `sign(p − q) e₁`, the gamma-ratio check the attention of the `gat`
/// method.
pub fn run_diagnostics(config: &SweepConfig) -> Result<Vec<DiagnosticRow>> {
    config.validate()?;
    let params = diagnostic_params(config)?;
    params.validate()?;
    if params.p == params.q {
        return Err(Error::EqualProbabilities(params.p));
    }
    let mut direction = vec![0.0; params.h()];
    direction[0] = (params.p - params.q).signum();
    let linear = AttentionSpec::lipschitz(&direction, Phi::Identity)?;
    let mut rows = Vec::new();
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, 0, trial);
        let sample = sample_csbm(&params, seed)?;
        let mut pair_rng = stream(derive_seed(seed, 1));
        let gamma = attention_coefficients(&sample, &gat_spec(config, &params, sample.edge_count())?)?;
        let reports = [
            check_degree_concentration(&sample, &params, DEFAULT_DEGREE_ENVELOPE),
            check_class_degree_concentration(&sample, &params, DEFAULT_DEGREE_ENVELOPE),
            check_uncommon_neighbors(
                &sample,
                &params,
                PairSampling::Random {
                    count: DEFAULT_PAIR_SAMPLE,
                },
                DEFAULT_VIOLATION_FRACTION,
                &mut pair_rng,
            )?,
            check_sum_exp_bounds(
                &sample,
                &params,
                &linear,
                DEFAULT_SUM_EXP_LOWER,
                DEFAULT_SUM_EXP_UPPER,
                DEFAULT_VIOLATION_FRACTION,
            )?,
            check_gamma_ratio_bounds(
                &sample,
                &gamma,
                &params,
                DEFAULT_GAMMA_RATIO_BAND,
                DEFAULT_VIOLATION_FRACTION,
            )?,
        ];
        rows.extend(reports.into_iter().map(|report| DiagnosticRow { trial, seed, report }));
    }
    Ok(rows)
}

pub fn emit_diagnostics_csv(experiment: &str, rows: &[DiagnosticRow], path: &Path) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(DIAGNOSTIC_HEADER).map_err(csv_err)?;
    for row in rows {
        let r = &row.report;
        let observed: Vec<String> = r
            .observed
            .iter()
            .map(|(k, v)| format!("{k}={}", format_float(*v)))
            .collect();
        w.write_record([
            experiment.to_string(),
            row.trial.to_string(),
            row.seed.to_string(),
            r.statistic.as_str().to_string(),
            format_float(r.center),
            format_float(r.envelope),
            format_float(r.bound),
            format_float(r.max_deviation),
            format_float(r.median_deviation),
            format_float(r.q95_deviation),
            r.violations.to_string(),
            r.total.to_string(),
            r.degenerate.to_string(),
            r.precondition_met.to_string(),
            r.passed.to_string(),
            format_float(r.violation_fraction()),
            observed.join(";"),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
