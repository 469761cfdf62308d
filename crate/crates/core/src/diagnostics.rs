//! Finite-sample checks of the concentration properties the analysis relies
//! on: degrees, per-class neighbor counts, uncommon neighbors of node
//! pairs, sums of exponentiated attention scores and the intra/inter split
//! of attention mass.
//!
//! The underlying statements are asymptotic, so each check carries an
//! explicit envelope constant and a pass rule. A report whose theoretical
//! center is zero or whose bound is vacuous is marked `degenerate`.

use rand::seq::index;
use rand::Rng;

use crate::attention::{edge_scores, AttentionSpec, GammaMatrix};
use crate::error::{Error, Result};
use crate::model::{CsbmParams, GraphSample};
use crate::stats::{median, quantile};

/// Default `C` for the degree and class-degree envelopes.
pub const DEFAULT_DEGREE_ENVELOPE: f64 = 4.0;
/// Default number of random node pairs for the uncommon-neighbor check.
pub const DEFAULT_PAIR_SAMPLE: usize = 200;
/// Largest `n` for which exhaustive pair enumeration is allowed.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 500;
/// Tolerated fraction of violating pairs / nodes for the quantile rules.
pub const DEFAULT_VIOLATION_FRACTION: f64 = 0.05;
pub const DEFAULT_SUM_EXP_LOWER: f64 = 0.2;
pub const DEFAULT_SUM_EXP_UPPER: f64 = 5.0;
/// Calibrated at n = 400, p = 0.4, q = 0.33, ‖ν‖ = ζ: the 95% quantile of
/// the observed constant is about 3.1.
pub const DEFAULT_GAMMA_RATIO_BAND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Degree,
    ClassDegree,
    UncommonNeighbors,
    SumExp,
    GammaRatio,
}

impl Statistic {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::Degree => "degree",
            Statistic::ClassDegree => "class_degree",
            Statistic::UncommonNeighbors => "uncommon_neighbors",
            Statistic::SumExp => "sum_exp",
            Statistic::GammaRatio => "gamma_ratio",
        }
    }
}

/// Outcome of one concentration check on one sample.
///
/// `deviations` summarize the per-item statistic the check compares with
/// `bound`; what an item is depends on the check (a node, a node/class
/// pair, a node pair).
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub statistic: Statistic,
    /// Theoretical center (the first one when a check has several).
    pub center: f64,
    /// Envelope constant in force.
    pub envelope: f64,
    /// Numeric threshold derived from the envelope.
    pub bound: f64,
    pub max_deviation: f64,
    pub median_deviation: f64,
    pub q95_deviation: f64,
    pub violations: usize,
    pub total: usize,
    pub degenerate: bool,
    /// Whether the check's stated density precondition holds.
    pub precondition_met: bool,
    pub passed: bool,
    /// Empirical constants observed on this sample.
    pub observed: Vec<(&'static str, f64)>,
}

impl ConcentrationReport {
    pub fn violation_fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.violations as f64 / self.total as f64
        }
    }

    pub fn observed(&self, name: &str) -> Option<f64> {
        self.observed.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

fn summarize(deviations: &[f64]) -> (f64, f64, f64) {
    if deviations.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let max = deviations.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (max, median(deviations), quantile(deviations, 0.95))
}

fn ln_n(params: &CsbmParams) -> f64 {
    (params.n as f64).ln()
}

/// Degrees against `n(p + q)/2`.
///
/// Item `i` deviates by `||N_i| − center| / center`; passes when every node
/// is within `C √(ln n / (n(p + q)))`.
pub fn check_degree_concentration(sample: &GraphSample, params: &CsbmParams, envelope: f64) -> ConcentrationReport {
    let n = params.n as f64;
    let center = n * (params.p + params.q) / 2.0;
    let degenerate = center <= 0.0;
    let bound = if degenerate {
        f64::NAN
    } else {
        envelope * (ln_n(params) / (n * (params.p + params.q))).sqrt()
    };
    let deviations: Vec<f64> = if degenerate {
        Vec::new()
    } else {
        (0..sample.n())
            .map(|i| (sample.adjacency.degree(i) as f64 - center).abs() / center)
            .collect()
    };
    let violations = deviations.iter().filter(|&&r| r > bound).count();
    let (max_deviation, median_deviation, q95_deviation) = summarize(&deviations);
    ConcentrationReport {
        statistic: Statistic::Degree,
        center,
        envelope,
        bound,
        max_deviation,
        median_deviation,
        q95_deviation,
        violations,
        total: deviations.len(),
        degenerate,
        precondition_met: center >= 1.0,
        passed: !degenerate && violations == 0,
        observed: vec![("envelope_needed", max_deviation / (bound / envelope))],
    }
}

/// `(|N_i ∩ own class|, |N_i ∩ other class|)` per node.
pub fn class_neighbor_counts(sample: &GraphSample) -> Vec<(usize, usize)> {
    (0..sample.n())
        .map(|i| {
            let same = sample
                .adjacency
                .neighbors(i)
                .iter()
                .filter(|&&j| sample.is_intra(i, j))
                .count();
            (same, sample.adjacency.degree(i) - same)
        })
        .collect()
}

/// Per-class neighbor counts against `np/2` (own class) and `nq/2`
/// (other class), with envelope `C √(ln n / (2 · center))`.
///
/// A zero center makes its half of the check degenerate; the other half is
/// still evaluated.
pub fn check_class_degree_concentration(sample: &GraphSample, params: &CsbmParams, envelope: f64) -> ConcentrationReport {
    let n = params.n as f64;
    let ln = ln_n(params);
    let centers = [n * params.p / 2.0, n * params.q / 2.0];
    let bounds = centers.map(|c| if c > 0.0 { envelope * (ln / (2.0 * c)).sqrt() } else { f64::NAN });
    let degenerate = centers.iter().any(|&c| c <= 0.0);
    let mut deviations = Vec::with_capacity(2 * sample.n());
    let mut violations = 0;
    let mut worst_ratio: f64 = 0.0;
    for (same, other) in class_neighbor_counts(sample) {
        for (k, count) in [same, other].into_iter().enumerate() {
            if centers[k] <= 0.0 {
                continue;
            }
            let r = (count as f64 - centers[k]).abs() / centers[k];
            deviations.push(r);
            worst_ratio = worst_ratio.max(r / bounds[k]);
            if r > bounds[k] {
                violations += 1;
            }
        }
    }
    let (max_deviation, median_deviation, q95_deviation) = summarize(&deviations);
    ConcentrationReport {
        statistic: Statistic::ClassDegree,
        center: centers[0],
        envelope,
        bound: bounds[0],
        max_deviation,
        median_deviation,
        q95_deviation,
        violations,
        total: deviations.len(),
        degenerate,
        precondition_met: centers.iter().all(|&c| c >= 1.0),
        passed: !degenerate && violations == 0,
        observed: vec![
            ("other_center", centers[1]),
            ("other_bound", bounds[1]),
            ("envelope_needed", worst_ratio * envelope),
        ],
    }
}

/// Which node pairs the uncommon-neighbor check inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSampling {
    /// `count` distinct unordered pairs drawn uniformly.
    Random { count: usize },
    /// All `n(n − 1)/2` pairs; only for `n <= 500`.
    Exhaustive,
}

/// `|(N_i ∪ N_j) \ (N_i ∩ N_j)|` by merging the sorted neighbor lists.
pub fn uncommon_neighbors(sample: &GraphSample, i: usize, j: usize) -> usize {
    let (a, b) = (sample.adjacency.neighbors(i), sample.adjacency.neighbors(j));
    let (mut x, mut y, mut common) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                x += 1;
                y += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// Lower bounds for same-class and cross-class pairs:
/// `(n/2) κ (1 − 3√(ln n / (n κ)))` with `κ = p + q − p² − q²` (same class)
/// or `κ = p + q − 2pq` (cross class).
pub fn uncommon_neighbor_bounds(params: &CsbmParams) -> [(f64, f64); 2] {
    let (n, p, q) = (params.n as f64, params.p, params.q);
    let ln = ln_n(params);
    [p + q - p * p - q * q, p + q - 2.0 * p * q].map(|kappa| {
        let center = n / 2.0 * kappa;
        if kappa <= 0.0 {
            return (center, f64::NEG_INFINITY);
        }
        let delta = 3.0 * (ln / (n * kappa)).sqrt();
        (center, center * (1.0 - delta))
    })
}

/// Lower-bound check on uncommon neighbors of node pairs.
///
/// Item deviation is `|J_ij| / center`; a pair violates when `|J_ij|` falls
/// below its bound. Passes when the violating fraction is at most
/// `max_violation_fraction`. A nonpositive bound is vacuous: the report
/// passes but is flagged degenerate.
pub fn check_uncommon_neighbors<R: Rng + ?Sized>(
    sample: &GraphSample,
    params: &CsbmParams,
    sampling: PairSampling,
    max_violation_fraction: f64,
    rng: &mut R,
) -> Result<ConcentrationReport> {
    let n = sample.n();
    let pairs: Vec<(usize, usize)> = match sampling {
        PairSampling::Exhaustive => {
            if n > EXHAUSTIVE_PAIR_LIMIT {
                return Err(Error::config(format!(
                    "exhaustive pair enumeration limited to n <= {EXHAUSTIVE_PAIR_LIMIT}, got {n}"
                )));
            }
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
        }
        PairSampling::Random { count } => {
            let all = n * (n - 1) / 2;
            index::sample(rng, all, count.min(all))
                .into_iter()
                .map(|k| pair_from_index(n, k))
                .collect()
        }
    };
    let bounds = uncommon_neighbor_bounds(params);
    let ln = ln_n(params);
    let precondition_met = params.p.max(params.q) <= 1.0 - 36.0 * ln / params.n as f64;
    let degenerate = bounds.iter().any(|&(_, lower)| lower <= 0.0);
    let mut deviations = Vec::with_capacity(pairs.len());
    let mut violations = 0;
    for (i, j) in pairs.iter().copied() {
        let (center, lower) = bounds[usize::from(!sample.is_intra(i, j))];
        let count = uncommon_neighbors(sample, i, j) as f64;
        if center > 0.0 {
            deviations.push(count / center);
        }
        if count < lower {
            violations += 1;
        }
    }
    let (max_deviation, median_deviation, q95_deviation) = summarize(&deviations);
    let total = pairs.len();
    let fraction = if total == 0 { 0.0 } else { violations as f64 / total as f64 };
    let min_ratio = deviations.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ConcentrationReport {
        statistic: Statistic::UncommonNeighbors,
        center: bounds[0].0,
        envelope: 3.0,
        bound: bounds[0].1,
        max_deviation,
        median_deviation,
        q95_deviation,
        violations,
        total,
        degenerate,
        precondition_met,
        passed: fraction <= max_violation_fraction,
        observed: vec![
            ("cross_center", bounds[1].0),
            ("cross_bound", bounds[1].1),
            ("min_ratio_to_center", min_ratio),
        ],
    })
}

/// Maps `k` in `0..n(n−1)/2` to the `k`-th pair `(i, j)`, `i < j`, in
/// row-major order.
fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
        i += 1;
    }
}

/// `(Σ_{j ∈ N_i ∩ C_0} exp Ψ_ij, Σ_{j ∈ N_i ∩ C_1} exp Ψ_ij)` per node.
pub fn class_exp_sums(sample: &GraphSample, spec: &AttentionSpec) -> Result<Vec<(f64, f64)>> {
    let scores = edge_scores(sample, spec)?;
    Ok((0..sample.n())
        .map(|i| {
            let mut sums = [0.0; 2];
            for (&j, &id) in sample.adjacency.neighbors(i).iter().zip(sample.adjacency.edge_ids(i)) {
                sums[sample.labels[j] as usize] += scores[id].exp();
            }
            (sums[0], sums[1])
        })
        .collect())
}

/// Sums of exponentiated scores per neighbor class.
///
/// For node `i` the lower constant is
/// `min(S_own / (np/2), S_other / (nq/2))` and the upper constant
/// `max(S_0, S_1) / (n(p + q))`. A node violates when its lower constant
/// drops below `lower` or its upper constant exceeds `upper`. Passes when
/// the violating fraction is at most `max_violation_fraction`.
pub fn check_sum_exp_bounds(
    sample: &GraphSample,
    params: &CsbmParams,
    spec: &AttentionSpec,
    lower: f64,
    upper: f64,
    max_violation_fraction: f64,
) -> Result<ConcentrationReport> {
    if spec.lipschitz_bounds().is_none() {
        return Err(Error::config(format!(
            "sum-of-exponentials check needs a spec with declared Lipschitz bounds, got {}",
            spec.kind_name()
        )));
    }
    let n = params.n as f64;
    let centers = [n * params.p / 2.0, n * params.q / 2.0];
    let scale = n * (params.p + params.q);
    let degenerate = centers.iter().any(|&c| c <= 0.0);
    let sums = class_exp_sums(sample, spec)?;
    let mut lows = Vec::with_capacity(sums.len());
    let mut highs = Vec::with_capacity(sums.len());
    let mut violations = 0;
    for (i, (s0, s1)) in sums.into_iter().enumerate() {
        let (own, other) = if sample.labels[i] == 0 { (s0, s1) } else { (s1, s0) };
        let lo = (own / centers[0]).min(other / centers[1]);
        let hi = s0.max(s1) / scale;
        if lo < lower || hi > upper {
            violations += 1;
        }
        lows.push(lo);
        highs.push(hi);
    }
    let total = lows.len();
    let fraction = if total == 0 { 0.0 } else { violations as f64 / total as f64 };
    let (max_deviation, median_deviation, q95_deviation) = summarize(&highs);
    Ok(ConcentrationReport {
        statistic: Statistic::SumExp,
        center: scale,
        envelope: upper,
        bound: upper,
        max_deviation,
        median_deviation,
        q95_deviation,
        violations,
        total,
        degenerate,
        precondition_met: !degenerate,
        passed: !degenerate && fraction <= max_violation_fraction,
        observed: vec![
            ("c_lo_min", lows.iter().copied().fold(f64::INFINITY, f64::min)),
            ("c_lo_q05", quantile(&lows, 0.05)),
            ("c_hi_q95", quantile(&highs, 0.95)),
            ("c_hi_max", highs.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        ],
    })
}

/// Attention mass per node on own-class and other-class neighbors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeMass {
    pub intra: f64,
    pub inter: f64,
}

impl NodeMass {
    /// `Σ_intra γ / Σ_inter γ` (infinite without inter mass).
    pub fn ratio(&self) -> f64 {
        self.intra / self.inter
    }

    /// `Σ_inter γ − Σ_intra γ`.
    pub fn difference(&self) -> f64 {
        self.inter - self.intra
    }
}

pub fn node_masses(sample: &GraphSample, gamma: &GammaMatrix) -> Result<Vec<NodeMass>> {
    gamma.check_matches(sample)?;
    Ok((0..sample.n())
        .map(|i| {
            let mut m = NodeMass { intra: 0.0, inter: 0.0 };
            for (&j, &g) in sample.adjacency.neighbors(i).iter().zip(gamma.row(i)) {
                if sample.is_intra(i, j) {
                    m.intra += g;
                } else {
                    m.inter += g;
                }
            }
            m
        })
        .collect())
}

/// Signed band on `Σ_inter γ − Σ_intra γ`.
///
/// With `scale = |p − q|/(p + q)` the difference must lie in
/// `[−c · scale, 0]` when `p > q` and in `[0, c · scale]` when `p < q`.
/// The observed constant of a node is `|difference| / scale`. Passes when
/// the violating fraction is at most `max_violation_fraction`; `p = q` is
/// degenerate.
pub fn check_gamma_ratio_bounds(
    sample: &GraphSample,
    gamma: &GammaMatrix,
    params: &CsbmParams,
    band: f64,
    max_violation_fraction: f64,
) -> Result<ConcentrationReport> {
    let masses: Vec<NodeMass> = node_masses(sample, gamma)?
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| !gamma.row(i).is_empty())
        .map(|(_, m)| m)
        .collect();
    let (p, q) = (params.p, params.q);
    let scale = (p - q).abs() / (p + q);
    let degenerate = scale.is_nan() || scale <= 0.0;
    let orientation = (q - p).signum();
    let limit = band * scale;
    let diffs: Vec<f64> = masses.iter().map(NodeMass::difference).collect();
    let constants: Vec<f64> = if degenerate {
        Vec::new()
    } else {
        diffs.iter().map(|d| d.abs() / scale).collect()
    };
    let violations = if degenerate {
        0
    } else {
        diffs
            .iter()
            .filter(|&&d| {
                let signed = orientation * d;
                !(0.0..=limit).contains(&signed)
            })
            .count()
    };
    let total = diffs.len();
    let fraction = if total == 0 { 0.0 } else { violations as f64 / total as f64 };
    let (max_deviation, median_deviation, q95_deviation) = summarize(&constants);
    let mean_difference = if total == 0 { f64::NAN } else { diffs.iter().sum::<f64>() / total as f64 };
    Ok(ConcentrationReport {
        statistic: Statistic::GammaRatio,
        center: scale,
        envelope: band,
        bound: limit,
        max_deviation,
        median_deviation,
        q95_deviation,
        violations,
        total,
        degenerate,
        precondition_met: !degenerate,
        passed: !degenerate && fraction <= max_violation_fraction,
        observed: vec![
            ("mean_difference", mean_difference),
            ("c_q95", q95_deviation),
            ("ratio_median", median(&masses.iter().map(NodeMass::ratio).collect::<Vec<_>>())),
        ],
    })
}
