use rayon::prelude::*;

use super::{ExperimentKind, Method, SweepConfig};
use crate::attention::{
    attention_coefficients, build_clean_spec_with, gamma_stats, median_sum_sq_gamma, AttentionSpec,
    DEFAULT_UNIFORM_BAND,
};
use crate::convolution::{attention_convolve, build_classifier, classify, mass_allocation};
use crate::error::Result;
use crate::model::{euclidean_norm, sample_csbm, CsbmParams};
use crate::rng::trial_seed;
use crate::stats::mean_std;

/// One method on one sampled graph.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub point: usize,
    pub grid_value: f64,
    pub trial: usize,
    pub method: Method,
    pub accuracy: f64,
    pub perfect: bool,
    pub intra_gamma_mean: f64,
    pub inter_gamma_mean: f64,
    pub intra_mass: f64,
    pub inter_mass: f64,
    pub sum_sq_gamma_median: f64,
    pub seed: u64,
}

/// Per-metric trial mean and sample standard deviation for one
/// `(point, method)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRecord {
    pub point: usize,
    pub grid_value: f64,
    pub method: Method,
    pub trials: usize,
    /// `(mean, std)` in the order of [`SummaryRecord::METRICS`].
    pub metrics: [(f64, f64); 7],
}

impl SummaryRecord {
    pub const METRICS: [&'static str; 7] = [
        "accuracy",
        "perfect",
        "intra_gamma_mean",
        "inter_gamma_mean",
        "intra_mass",
        "inter_mass",
        "sum_sq_gamma_median",
    ];

    pub fn metric(&self, name: &str) -> Option<(f64, f64)> {
        Self::METRICS.iter().position(|&m| m == name).map(|k| self.metrics[k])
    }
}

impl TrialRecord {
    fn metric_values(&self) -> [f64; 7] {
        [
            self.accuracy,
            if self.perfect { 1.0 } else { 0.0 },
            self.intra_gamma_mean,
            self.inter_gamma_mean,
            self.intra_mass,
            self.inter_mass,
            self.sum_sq_gamma_median,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub kind: ExperimentKind,
    pub grid: Vec<f64>,
    pub trials: Vec<TrialRecord>,
    pub summaries: Vec<SummaryRecord>,
}

impl SweepResult {
    pub fn summary(&self, point: usize, method: Method) -> Option<&SummaryRecord> {
        self.summaries.iter().find(|s| s.point == point && s.method == method)
    }
}

/// Attention used for `gat` at `params`: the clean construction along
/// `sign(p − q) ν/‖ν‖`, or uniform when `ν = 0`.
pub fn gat_spec(config: &SweepConfig, params: &CsbmParams, edge_count: usize) -> Result<AttentionSpec> {
    if euclidean_norm(&params.nu) == 0.0 {
        return Ok(AttentionSpec::Uniform);
    }
    build_clean_spec_with(params, config.alpha, edge_count)
}

fn run_trial(
    config: &SweepConfig,
    params: &CsbmParams,
    point: usize,
    grid_value: f64,
    trial: usize,
) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(config.seed, point, trial);
    let sample = sample_csbm(params, seed)?;
    let classifier = build_classifier(params)?;
    let mut records = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let spec = match method {
            Method::Gat => gat_spec(config, params, sample.edge_count())?,
            Method::Gcn => AttentionSpec::Uniform,
        };
        let gamma = attention_coefficients(&sample, &spec)?;
        let scores = attention_convolve(&sample, &gamma, &classifier)?;
        let prediction = classify(scores, &sample.labels, classifier.threshold)?;
        let stats = gamma_stats(&sample, &gamma, DEFAULT_UNIFORM_BAND)?;
        let (intra_mass, inter_mass) = mass_allocation(&sample, &gamma)?;
        records.push(TrialRecord {
            point,
            grid_value,
            trial,
            method,
            accuracy: prediction.accuracy,
            perfect: prediction.perfect,
            intra_gamma_mean: stats.intra.mean,
            inter_gamma_mean: stats.inter.mean,
            intra_mass,
            inter_mass,
            sum_sq_gamma_median: median_sum_sq_gamma(&gamma),
            seed,
        });
    }
    Ok(records)
}

/// Runs every `(point, trial)` job in parallel. Each job draws its graph
/// from its own derived seed and evaluates every method on it, so the
/// output does not depend on the thread count.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let grid = config.grid.values();
    let params: Vec<CsbmParams> = grid.iter().map(|&v| config.point_params(v)).collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|point| (0..config.trials).map(move |trial| (point, trial)))
        .collect();
    let per_job: Vec<Vec<TrialRecord>> = jobs
        .par_iter()
        .map(|&(point, trial)| run_trial(config, &params[point], point, grid[point], trial))
        .collect::<Result<_>>()?;
    let trials: Vec<TrialRecord> = per_job.into_iter().flatten().collect();
    let summaries = summarize(&trials);
    Ok(SweepResult {
        kind: config.kind,
        grid,
        trials,
        summaries,
    })
}

/// Aggregates trial records by `(point, method)`, ordered by point then
/// method.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRecord> {
    let mut keys: Vec<(usize, Method)> = records.iter().map(|r| (r.point, r.method)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(point, method)| {
            let group: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.point == point && r.method == method)
                .collect();
            let mut metrics = [(0.0, 0.0); 7];
            for (k, slot) in metrics.iter_mut().enumerate() {
                let values: Vec<f64> = group.iter().map(|r| r.metric_values()[k]).collect();
                *slot = mean_std(&values);
            }
            SummaryRecord {
                point,
                grid_value: group[0].grid_value,
                method,
                trials: group.len(),
                metrics,
            }
        })
        .collect()
}
