//! Attention functions `Ψ` on edge features and the softmax attention
//! coefficients `γ_ij = exp(Ψ(E_ij)) / Σ_{ℓ ∈ N_i} exp(Ψ(E_iℓ))`.

use crate::error::{Error, Result};
use crate::model::{dot, euclidean_norm, CsbmParams, GraphSample};

const UNIT_TOL: f64 = 1e-12;

/// Scalar Lipschitz maps available to [`AttentionSpec::LipschitzLinear`].
///
/// Each map declares a Lipschitz constant `L` and a bound `R >= |φ(0)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phi {
    Identity,
    /// `x` for `x >= 0`, `slope · x` otherwise.
    LeakyRelu { slope: f64 },
    /// `R · tanh(L · x / R)`: Lipschitz `L`, bounded by `R`.
    TanhScaled { lipschitz: f64, bound: f64 },
}

impl Phi {
    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            Phi::Identity => x,
            Phi::LeakyRelu { slope } => {
                if x >= 0.0 {
                    x
                } else {
                    slope * x
                }
            }
            Phi::TanhScaled { lipschitz, bound } => bound * (lipschitz * x / bound).tanh(),
        }
    }

    pub fn lipschitz(&self) -> f64 {
        match *self {
            Phi::Identity => 1.0,
            Phi::LeakyRelu { slope } => slope.abs().max(1.0),
            Phi::TanhScaled { lipschitz, .. } => lipschitz,
        }
    }

    /// Declared `R` with `|φ(0)| <= R`.
    pub fn bound_at_zero(&self) -> f64 {
        match *self {
            Phi::Identity | Phi::LeakyRelu { .. } => 0.0,
            Phi::TanhScaled { bound, .. } => bound,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Phi::Identity => Ok(()),
            Phi::LeakyRelu { slope } if slope.is_finite() => Ok(()),
            Phi::TanhScaled { lipschitz, bound } if lipschitz > 0.0 && bound > 0.0 && lipschitz.is_finite() && bound.is_finite() => Ok(()),
            other => Err(Error::config(format!("invalid phi parameters {other:?}"))),
        }
    }
}

/// Scaling of the constructed clean-regime attention function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRule {
    Fixed(f64),
    /// `α = ((‖ν‖/ζ) · √ln|E|)^(−1/2)`, so that `α√ln|E| → 0` while
    /// `α‖ν‖/ζ → ∞`.
    Auto,
}

impl Default for AlphaRule {
    fn default() -> Self {
        AlphaRule::Fixed(1.0)
    }
}

/// Which attention function `Ψ` to use.
#[derive(Debug, Clone, PartialEq)]
pub enum AttentionSpec {
    /// `Ψ(E) = α sᵀE` with unit `s`.
    ConstructedClean { direction: Vec<f64>, alpha: f64 },
    /// `Ψ(E) = φ(sᵀE)` with unit `s`.
    LipschitzLinear { direction: Vec<f64>, phi: Phi },
    /// `Ψ ≡ 0`; every coefficient is `1/|N_i|` (graph convolution).
    Uniform,
}

fn unit_direction(direction: &[f64]) -> Result<Vec<f64>> {
    let norm = euclidean_norm(direction);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroMean("attention direction"));
    }
    let s: Vec<f64> = direction.iter().map(|x| x / norm).collect();
    debug_assert!((euclidean_norm(&s) - 1.0).abs() <= UNIT_TOL);
    Ok(s)
}

impl AttentionSpec {
    /// Clean spec along `direction` (normalized here).
    pub fn clean(direction: &[f64], alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::config(format!("alpha must be positive, got {alpha}")));
        }
        Ok(AttentionSpec::ConstructedClean {
            direction: unit_direction(direction)?,
            alpha,
        })
    }

    /// Lipschitz-linear spec along `direction` (normalized here).
    pub fn lipschitz(direction: &[f64], phi: Phi) -> Result<Self> {
        phi.validate()?;
        Ok(AttentionSpec::LipschitzLinear {
            direction: unit_direction(direction)?,
            phi,
        })
    }

    pub fn direction(&self) -> Option<&[f64]> {
        match self {
            AttentionSpec::ConstructedClean { direction, .. }
            | AttentionSpec::LipschitzLinear { direction, .. } => Some(direction),
            AttentionSpec::Uniform => None,
        }
    }

    /// Declared `(L, R)` of the composed scalar map, if any.
    pub fn lipschitz_bounds(&self) -> Option<(f64, f64)> {
        match self {
            AttentionSpec::ConstructedClean { alpha, .. } => Some((*alpha, 0.0)),
            AttentionSpec::LipschitzLinear { phi, .. } => Some((phi.lipschitz(), phi.bound_at_zero())),
            AttentionSpec::Uniform => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AttentionSpec::ConstructedClean { .. } => "constructed_clean",
            AttentionSpec::LipschitzLinear { .. } => "lipschitz_linear",
            AttentionSpec::Uniform => "uniform",
        }
    }

    #[inline]
    fn eval(&self, edge_feature: &[f64]) -> f64 {
        match self {
            AttentionSpec::ConstructedClean { direction, alpha } => alpha * dot(direction, edge_feature),
            AttentionSpec::LipschitzLinear { direction, phi } => phi.apply(dot(direction, edge_feature)),
            AttentionSpec::Uniform => 0.0,
        }
    }
}

/// The constructed clean-regime spec `s = sign(p − q) ν/‖ν‖`, `α = 1`.
pub fn build_clean_spec(params: &CsbmParams) -> Result<AttentionSpec> {
    build_clean_spec_with(params, AlphaRule::default(), 0)
}

/// As [`build_clean_spec`] with an explicit scaling rule. `edge_count` is
/// only read by [`AlphaRule::Auto`].
pub fn build_clean_spec_with(params: &CsbmParams, rule: AlphaRule, edge_count: usize) -> Result<AttentionSpec> {
    if params.p == params.q {
        return Err(Error::EqualProbabilities(params.p));
    }
    let norm = euclidean_norm(&params.nu);
    if norm == 0.0 {
        return Err(Error::ZeroMean("nu"));
    }
    let sign = (params.p - params.q).signum();
    let direction: Vec<f64> = params.nu.iter().map(|v| sign * v).collect();
    let alpha = match rule {
        AlphaRule::Fixed(a) => a,
        AlphaRule::Auto => {
            if params.zeta <= 0.0 {
                return Err(Error::config("alpha auto needs zeta > 0"));
            }
            if edge_count < 2 {
                return Err(Error::config("alpha auto needs at least two edges"));
            }
            ((norm / params.zeta) * (edge_count as f64).ln().sqrt()).powf(-0.5)
        }
    };
    AttentionSpec::clean(&direction, alpha)
}

/// Evaluates `Ψ` on one edge feature.
pub fn psi(spec: &AttentionSpec, edge_feature: &[f64]) -> Result<f64> {
    if let Some(s) = spec.direction() {
        if s.len() != edge_feature.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                actual: edge_feature.len(),
            });
        }
    }
    Ok(spec.eval(edge_feature))
}

/// `Ψ` for every undirected edge of `sample`, indexed by edge id.
pub fn edge_scores(sample: &GraphSample, spec: &AttentionSpec) -> Result<Vec<f64>> {
    if let Some(s) = spec.direction() {
        if s.len() != sample.edge_features.cols() {
            return Err(Error::DimensionMismatch {
                expected: sample.edge_features.cols(),
                actual: s.len(),
            });
        }
    }
    Ok((0..sample.edge_count())
        .map(|id| spec.eval(sample.edge_feature(id)))
        .collect())
}

/// Per-directed-edge attention coefficients laid out like the adjacency:
/// row `i` holds `γ_ij` for `j` in `N_i`, in neighbor order.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix {
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl GammaMatrix {
    /// Wraps explicit rows. Every row must be non-negative; no normalization
    /// is applied.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let mut values = Vec::new();
        for r in rows {
            values.extend(r);
            offsets.push(values.len());
        }
        GammaMatrix { offsets, values }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Checks that the row layout mirrors the adjacency of `sample`.
    pub fn check_matches(&self, sample: &GraphSample) -> Result<()> {
        if self.offsets != sample.adjacency.offsets() {
            return Err(Error::AdjacencyMismatch(format!(
                "gamma has {} rows / {} entries, adjacency {} rows / {} slots",
                self.node_count(),
                self.values.len(),
                sample.n(),
                sample.adjacency.slot_count()
            )));
        }
        Ok(())
    }
}

/// Numerically stable softmax of `scores` into `out`.
pub fn softmax_into(scores: &[f64], out: &mut [f64]) {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for (o, &s) in out.iter_mut().zip(scores) {
        *o = (s - max).exp();
        total += *o;
    }
    out.iter_mut().for_each(|o| *o /= total);
}

/// Softmax of `Ψ` over each neighborhood. Isolated nodes get an empty row.
pub fn attention_coefficients(sample: &GraphSample, spec: &AttentionSpec) -> Result<GammaMatrix> {
    let adj = &sample.adjacency;
    let offsets = adj.offsets().to_vec();
    let mut values = vec![0.0; adj.slot_count()];
    if matches!(spec, AttentionSpec::Uniform) {
        for i in 0..sample.n() {
            let row = &mut values[offsets[i]..offsets[i + 1]];
            let w = 1.0 / row.len() as f64;
            row.iter_mut().for_each(|g| *g = w);
        }
        return Ok(GammaMatrix { offsets, values });
    }
    let scores = edge_scores(sample, spec)?;
    let mut buf = Vec::new();
    for i in 0..sample.n() {
        buf.clear();
        buf.extend(adj.edge_ids(i).iter().map(|&id| scores[id]));
        softmax_into(&buf, &mut values[offsets[i]..offsets[i + 1]]);
    }
    Ok(GammaMatrix { offsets, values })
}

/// Mean/std/min/max of a set of coefficients. `std` is the sample
/// (n − 1) estimator, zero below two values.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let mut count = 0usize;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            count += 1;
            sum += v;
            sum_sq += v * v;
            min = min.min(v);
            max = max.max(v);
        }
        if count == 0 {
            return Summary {
                count: 0,
                mean: f64::NAN,
                std: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let mean = sum / count as f64;
        let std = if count > 1 {
            ((sum_sq - count as f64 * mean * mean) / (count - 1) as f64).max(0.0).sqrt()
        } else {
            0.0
        };
        Summary { count, mean, std, min, max }
    }
}

/// Intra/inter split of the coefficients plus near-uniformity measures.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaStats {
    pub intra: Summary,
    pub inter: Summary,
    /// Band constant `c`: a coefficient is near-uniform when it lies in
    /// `[1/(c|N_i|), c/|N_i|]`.
    pub band: f64,
    /// Per node, the fraction of its coefficients inside the band
    /// (`NaN` for isolated nodes).
    pub node_uniform_fraction: Vec<f64>,
    /// Fraction of non-isolated nodes with at least 90% of their
    /// coefficients inside the band.
    pub uniform_node_fraction: f64,
}

pub const DEFAULT_UNIFORM_BAND: f64 = 3.0;

/// [`GammaStats`] over all nodes.
pub fn gamma_stats(sample: &GraphSample, gamma: &GammaMatrix, band: f64) -> Result<GammaStats> {
    let nodes: Vec<usize> = (0..sample.n()).collect();
    gamma_stats_over(sample, gamma, band, &nodes)
}

/// [`GammaStats`] restricted to the rows of `nodes`.
pub fn gamma_stats_over(sample: &GraphSample, gamma: &GammaMatrix, band: f64, nodes: &[usize]) -> Result<GammaStats> {
    gamma.check_matches(sample)?;
    let adj = &sample.adjacency;
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    let mut node_uniform_fraction = vec![f64::NAN; sample.n()];
    let (mut covered, mut uniform_nodes) = (0usize, 0usize);
    for &i in nodes {
        let row = gamma.row(i);
        if row.is_empty() {
            continue;
        }
        let deg = row.len() as f64;
        let (lo, hi) = (1.0 / (band * deg), band / deg);
        let mut inside = 0usize;
        for (&j, &g) in adj.neighbors(i).iter().zip(row) {
            if sample.is_intra(i, j) {
                intra.push(g);
            } else {
                inter.push(g);
            }
            if g >= lo && g <= hi {
                inside += 1;
            }
        }
        let frac = inside as f64 / deg;
        node_uniform_fraction[i] = frac;
        covered += 1;
        if frac >= 0.9 {
            uniform_nodes += 1;
        }
    }
    Ok(GammaStats {
        intra: Summary::of(intra),
        inter: Summary::of(inter),
        band,
        node_uniform_fraction,
        uniform_node_fraction: if covered == 0 {
            f64::NAN
        } else {
            uniform_nodes as f64 / covered as f64
        },
    })
}

/// `Σ_{j ∈ N_i} γ_ij²` per node (0 for isolated nodes).
pub fn sum_sq_gamma(gamma: &GammaMatrix) -> Vec<f64> {
    (0..gamma.node_count())
        .map(|i| gamma.row(i).iter().map(|g| g * g).sum())
        .collect()
}

/// Median of `Σγ²` over non-isolated nodes.
pub fn median_sum_sq_gamma(gamma: &GammaMatrix) -> f64 {
    let values: Vec<f64> = sum_sq_gamma(gamma)
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| !gamma.row(i).is_empty())
        .map(|(_, v)| v)
        .collect();
    crate::stats::median(&values)
}
