//! Attention-weighted convolution, the linear read-out and scoring.
//!
//! Scores are computed in projected form: `x̂_i = Σ_{j ∈ N_i} γ_ij (wᵀx_j)`.
//! With `w = sign(p − q) μ/‖μ‖`, class 0 concentrates at negative scores, so
//! a node is predicted as class 1 exactly when its score is strictly above
//! the threshold.

use crate::attention::{attention_coefficients, AttentionSpec, GammaMatrix};
use crate::error::{Error, Result};
use crate::model::{dot, euclidean_norm, CsbmParams, GraphSample};

/// Unit read-out direction and decision cut.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierSpec {
    pub weights: Vec<f64>,
    pub threshold: f64,
    /// `sign(p − q)` used when building `weights`.
    pub orientation: f64,
}

/// `w = sign(p − q) μ/‖μ‖`, threshold 0.
pub fn build_classifier(params: &CsbmParams) -> Result<ClassifierSpec> {
    if params.p == params.q {
        return Err(Error::EqualProbabilities(params.p));
    }
    let norm = euclidean_norm(&params.mu);
    if norm == 0.0 {
        return Err(Error::ZeroMean("mu"));
    }
    let orientation = (params.p - params.q).signum();
    Ok(ClassifierSpec {
        weights: params.mu.iter().map(|m| orientation * m / norm).collect(),
        threshold: 0.0,
        orientation,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionResult {
    pub scores: Vec<f64>,
    pub predicted: Vec<u8>,
    pub accuracy: f64,
    /// All `n` nodes correct.
    pub perfect: bool,
    /// Accuracy restricted to `(C_0, C_1)`; `NaN` for an empty class.
    pub per_class_accuracy: (f64, f64),
}

/// `Σ_{j ∈ N_i} γ_ij (wᵀx_j)` for every node; isolated nodes score 0.
pub fn attention_convolve(sample: &GraphSample, gamma: &GammaMatrix, classifier: &ClassifierSpec) -> Result<Vec<f64>> {
    gamma.check_matches(sample)?;
    let d = sample.node_features.cols();
    if classifier.weights.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: classifier.weights.len(),
        });
    }
    let projected: Vec<f64> = (0..sample.n())
        .map(|j| dot(&classifier.weights, sample.node_feature(j)))
        .collect();
    Ok((0..sample.n())
        .map(|i| {
            sample
                .adjacency
                .neighbors(i)
                .iter()
                .zip(gamma.row(i))
                .map(|(&j, &g)| g * projected[j])
                .sum()
        })
        .collect())
}

/// Thresholds scores (`> threshold` ⇒ class 1, ties ⇒ class 0) and scores
/// them against `labels`.
pub fn classify(scores: Vec<f64>, labels: &[u8], threshold: f64) -> Result<PredictionResult> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            actual: scores.len(),
        });
    }
    let predicted: Vec<u8> = scores.iter().map(|&s| u8::from(s > threshold)).collect();
    let mut correct = [0usize; 2];
    let mut total = [0usize; 2];
    for (&p, &l) in predicted.iter().zip(labels) {
        total[l as usize] += 1;
        if p == l {
            correct[l as usize] += 1;
        }
    }
    let n = labels.len();
    let hits = correct[0] + correct[1];
    let ratio = |c: usize, t: usize| if t == 0 { f64::NAN } else { c as f64 / t as f64 };
    Ok(PredictionResult {
        accuracy: ratio(hits, n),
        perfect: hits == n,
        per_class_accuracy: (ratio(correct[0], total[0]), ratio(correct[1], total[1])),
        predicted,
        scores,
    })
}

/// Attention pipeline: coefficients from `spec`, convolution, threshold.
pub fn attention_pipeline(sample: &GraphSample, spec: &AttentionSpec, classifier: &ClassifierSpec) -> Result<(GammaMatrix, PredictionResult)> {
    let gamma = attention_coefficients(sample, spec)?;
    let scores = attention_convolve(sample, &gamma, classifier)?;
    let result = classify(scores, &sample.labels, classifier.threshold)?;
    Ok((gamma, result))
}

/// Graph convolution: the attention pipeline with `Ψ ≡ 0`.
pub fn graph_convolution_baseline(sample: &GraphSample, classifier: &ClassifierSpec) -> Result<PredictionResult> {
    attention_pipeline(sample, &AttentionSpec::Uniform, classifier).map(|(_, r)| r)
}

/// Percentages of attention mass on intra- and inter-class directed edges.
///
/// Both are `NaN` when every node is isolated.
pub fn mass_allocation(sample: &GraphSample, gamma: &GammaMatrix) -> Result<(f64, f64)> {
    gamma.check_matches(sample)?;
    let (mut intra, mut total) = (0.0, 0.0);
    for i in 0..sample.n() {
        for (&j, &g) in sample.adjacency.neighbors(i).iter().zip(gamma.row(i)) {
            total += g;
            if sample.is_intra(i, j) {
                intra += g;
            }
        }
    }
    if total == 0.0 {
        return Ok((f64::NAN, f64::NAN));
    }
    let intra_pct = 100.0 * intra / total;
    Ok((intra_pct, 100.0 - intra_pct))
}
