//! Config-driven parameter sweeps over the synthetic experiments: vary the
//! inter-class probability `q`, the node-mean distance `‖μ‖`, or the
//! edge-mean distance `‖ν‖`, running graph attention (`gat`) and graph
//! convolution (`gcn`) on every trial.

pub mod cli;
pub mod config;
pub mod csv_io;
pub mod diagnose;
pub mod sweep;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::attention::AlphaRule;
use crate::error::{Error, Result};
use crate::model::{default_feature_dim, BalanceMode, CsbmParams};

pub use csv_io::{emit_csv, read_trials_csv, summary_path};
pub use diagnose::{run_diagnostics, DiagnosticRow};
pub use sweep::{run_sweep, summarize, SummaryRecord, SweepResult, TrialRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    CleanVaryQPositive,
    CleanVaryQNegative,
    CleanVaryMu,
    NoisyVaryQPositive,
    NoisyVaryQNegative,
    NoisyVaryMu,
    VaryNuGamma,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::CleanVaryQPositive,
        ExperimentKind::CleanVaryQNegative,
        ExperimentKind::CleanVaryMu,
        ExperimentKind::NoisyVaryQPositive,
        ExperimentKind::NoisyVaryQNegative,
        ExperimentKind::NoisyVaryMu,
        ExperimentKind::VaryNuGamma,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::CleanVaryQPositive => "clean_vary_q_positive",
            ExperimentKind::CleanVaryQNegative => "clean_vary_q_negative",
            ExperimentKind::CleanVaryMu => "clean_vary_mu",
            ExperimentKind::NoisyVaryQPositive => "noisy_vary_q_positive",
            ExperimentKind::NoisyVaryQNegative => "noisy_vary_q_negative",
            ExperimentKind::NoisyVaryMu => "noisy_vary_mu",
            ExperimentKind::VaryNuGamma => "vary_nu_gamma",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ExperimentKind::CleanVaryQPositive => "clean edges, vary q, |mu| = 5 sigma sqrt(ln n / (n max(p,q)))",
            ExperimentKind::CleanVaryQNegative => "clean edges, vary q, |mu| = sigma sqrt(ln n / (n max(p,q)))",
            ExperimentKind::CleanVaryMu => "clean edges, p=0.4 q=0.33, vary |mu|",
            ExperimentKind::NoisyVaryQPositive => "noisy edges, vary q, |mu| = 8 sigma (p+q)/|p-q| sqrt(ln n / (n max(p,q)))",
            ExperimentKind::NoisyVaryQNegative => "noisy edges, vary q, |mu| = 0.1 sigma (p+q)/|p-q| sqrt(ln n / (n max(p,q)))",
            ExperimentKind::NoisyVaryMu => "noisy edges, p=0.4 q=0.33, vary |mu|",
            ExperimentKind::VaryNuGamma => "p=0.4 q=0.33, vary |nu| / (zeta sqrt(ln(n^2 (p+q)/2)))",
        }
    }

    pub fn is_clean(self) -> bool {
        matches!(
            self,
            ExperimentKind::CleanVaryQPositive | ExperimentKind::CleanVaryQNegative | ExperimentKind::CleanVaryMu
        )
    }

    pub fn is_noisy(self) -> bool {
        matches!(
            self,
            ExperimentKind::NoisyVaryQPositive | ExperimentKind::NoisyVaryQNegative | ExperimentKind::NoisyVaryMu
        )
    }

    pub fn varies_q(self) -> bool {
        matches!(
            self,
            ExperimentKind::CleanVaryQPositive
                | ExperimentKind::CleanVaryQNegative
                | ExperimentKind::NoisyVaryQPositive
                | ExperimentKind::NoisyVaryQNegative
        )
    }

    pub fn varies_mu(self) -> bool {
        matches!(self, ExperimentKind::CleanVaryMu | ExperimentKind::NoisyVaryMu)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown experiment `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Gat,
    Gcn,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Gat => "gat",
            Method::Gcn => "gcn",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gat" => Ok(Method::Gat),
            "gcn" => Ok(Method::Gcn),
            other => Err(Error::config(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

impl FromStr for GridScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(GridScale::Linear),
            "log" => Ok(GridScale::Log),
            other => Err(Error::config(format!("unknown grid scale `{other}`"))),
        }
    }
}

impl GridScale {
    pub fn as_str(self) -> &'static str {
        match self {
            GridScale::Linear => "linear",
            GridScale::Log => "log",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: GridScale,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let steps = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let t = k as f64 / steps;
                match self.scale {
                    GridScale::Linear => self.start + t * (self.stop - self.start),
                    GridScale::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::config("grid needs at least one point"));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::config("grid endpoints must be finite"));
        }
        if self.scale == GridScale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::config("log grid endpoints must be positive"));
        }
        Ok(())
    }
}

/// `√(ln n / (n · max(p, q)))`, the common factor of every `‖μ‖` threshold.
pub fn threshold_rate(n: usize, p: f64, q: f64) -> f64 {
    let n = n as f64;
    (n.ln() / (n * p.max(q))).sqrt()
}

/// `σ (p + q)/|p − q| √(ln n / (n max(p, q)))`, the graph convolution
/// threshold scale. Errors when `p = q`.
pub fn noisy_threshold(n: usize, p: f64, q: f64, sigma: f64) -> Result<f64> {
    if p == q {
        return Err(Error::EqualProbabilities(p));
    }
    Ok(sigma * (p + q) / (p - q).abs() * threshold_rate(n, p, q))
}

/// `ζ √(ln(n² (p + q)/2))`, the unit of the clean edge-mean rule.
pub fn edge_rate(n: usize, p: f64, q: f64, zeta: f64) -> f64 {
    let n = n as f64;
    zeta * (0.5 * n * n * (p + q)).ln().sqrt()
}

fn along_first_axis(norm: f64, dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[0] = norm;
    v
}

/// Node-feature mean for `kind` at `params` (whose `q` is already the
/// point's `q`), pointing along the first axis.
pub fn derive_mu(kind: ExperimentKind, params: &CsbmParams, grid_value: f64) -> Result<Vec<f64>> {
    let (n, p, q, sigma) = (params.n, params.p, params.q, params.sigma);
    let norm = match kind {
        ExperimentKind::CleanVaryQPositive | ExperimentKind::VaryNuGamma => 5.0 * sigma * threshold_rate(n, p, q),
        ExperimentKind::CleanVaryQNegative => sigma * threshold_rate(n, p, q),
        ExperimentKind::NoisyVaryQPositive => 8.0 * noisy_threshold(n, p, q, sigma)?,
        ExperimentKind::NoisyVaryQNegative => 0.1 * noisy_threshold(n, p, q, sigma)?,
        ExperimentKind::NoisyVaryMu => {
            // The threshold itself is not used, but its hypothesis is.
            noisy_threshold(n, p, q, sigma)?;
            grid_value
        }
        ExperimentKind::CleanVaryMu => grid_value,
    };
    Ok(along_first_axis(norm, params.d()))
}

/// Multipliers of the edge-mean rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuRule {
    /// Clean kinds: `‖ν‖ = factor · ζ √(ln(n²(p+q)/2))`.
    pub clean_factor: f64,
    /// Noisy kinds: `‖ν‖ = ratio · ζ`.
    pub noisy_ratio: f64,
}

impl Default for NuRule {
    fn default() -> Self {
        NuRule {
            clean_factor: 100.0,
            noisy_ratio: 100.0,
        }
    }
}

/// Edge-feature mean for `kind`, pointing along the first axis.
pub fn derive_nu(kind: ExperimentKind, params: &CsbmParams, grid_value: f64, rule: NuRule) -> Result<Vec<f64>> {
    if params.zeta.is_nan() || params.zeta <= 0.0 {
        return Err(Error::config("edge-mean rules need zeta > 0"));
    }
    let (n, p, q, zeta) = (params.n, params.p, params.q, params.zeta);
    let norm = if kind.is_noisy() {
        rule.noisy_ratio * zeta
    } else if kind == ExperimentKind::VaryNuGamma {
        grid_value * edge_rate(n, p, q, zeta)
    } else {
        rule.clean_factor * edge_rate(n, p, q, zeta)
    };
    Ok(along_first_axis(norm, params.h()))
}

/// A full sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub p: f64,
    /// Fixed `q` for the `‖μ‖` and `‖ν‖` sweeps; ignored when `q` varies.
    pub q: f64,
    pub d: usize,
    pub h: usize,
    pub sigma: f64,
    pub zeta: f64,
    pub balance_mode: BalanceMode,
    pub self_loops: bool,
    pub grid: Grid,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub output: Option<PathBuf>,
    pub nu_rule: NuRule,
    pub alpha: AlphaRule,
}

pub const DEFAULT_N: usize = 400;
pub const DEFAULT_P: f64 = 0.4;
pub const DEFAULT_Q: f64 = 0.33;
pub const DEFAULT_SIGMA: f64 = 0.1;
pub const DEFAULT_ZETA: f64 = 0.1;
pub const DEFAULT_TRIALS: usize = 50;
pub const VARY_Q_POINTS: usize = 15;
pub const VARY_MU_POINTS: usize = 12;
pub const VARY_NU_POINTS: usize = 12;

impl SweepConfig {
    /// Desk-scale defaults for `kind`: `n = 400`, `d = h = n/ln²n`,
    /// `σ = ζ = 0.1`, `p = 0.4`, 50 trials, and the kind's default grid.
    pub fn new(kind: ExperimentKind) -> Self {
        let n = DEFAULT_N;
        let d = default_feature_dim(n);
        let mut cfg = SweepConfig {
            kind,
            n,
            p: DEFAULT_P,
            q: DEFAULT_Q,
            d,
            h: d,
            sigma: DEFAULT_SIGMA,
            zeta: DEFAULT_ZETA,
            balance_mode: BalanceMode::ExactHalf,
            self_loops: false,
            grid: Grid {
                start: 0.0,
                stop: 0.0,
                points: 1,
                scale: GridScale::Linear,
            },
            trials: DEFAULT_TRIALS,
            seed: 0,
            methods: vec![Method::Gat, Method::Gcn],
            output: None,
            nu_rule: NuRule::default(),
            alpha: AlphaRule::default(),
        };
        cfg.grid = cfg.default_grid();
        cfg
    }

    /// The grid implied by the kind and the current `n, p, q, σ`.
    ///
    /// * vary `q`: `ln²n/n` to `min(2p, 0.999)`, 15 linear points;
    /// * vary `‖μ‖`: from 0.1× (clean) or 0.01× (noisy) the lower threshold
    ///   to `20σ√ln n`, 12 log points;
    /// * vary `‖ν‖`: 0.01 to 30 units of `ζ√ln(n²(p+q)/2)`, 12 log points.
    pub fn default_grid(&self) -> Grid {
        let ln = (self.n as f64).ln();
        match self.kind {
            k if k.varies_q() => Grid {
                start: ln * ln / self.n as f64,
                stop: (2.0 * self.p).min(0.999),
                points: VARY_Q_POINTS,
                scale: GridScale::Linear,
            },
            ExperimentKind::CleanVaryMu => Grid {
                start: 0.1 * self.sigma * threshold_rate(self.n, self.p, self.q),
                stop: 20.0 * self.sigma * ln.sqrt(),
                points: VARY_MU_POINTS,
                scale: GridScale::Log,
            },
            ExperimentKind::NoisyVaryMu => {
                let base = if self.p != self.q {
                    self.sigma * (self.p + self.q) / (self.p - self.q).abs()
                } else {
                    self.sigma
                };
                Grid {
                    start: 0.01 * base * threshold_rate(self.n, self.p, self.q),
                    stop: 20.0 * self.sigma * ln.sqrt(),
                    points: VARY_MU_POINTS,
                    scale: GridScale::Log,
                }
            }
            _ => Grid {
                start: 0.01,
                stop: 30.0,
                points: VARY_NU_POINTS,
                scale: GridScale::Log,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::config("at least one method is required"));
        }
        if self.d == 0 || self.h == 0 {
            return Err(Error::config("feature dimensions must be at least 1"));
        }
        self.grid.validate()?;
        if !(self.nu_rule.clean_factor > 1.0 && self.nu_rule.clean_factor.is_finite()) {
            return Err(Error::config(format!(
                "clean_nu_factor must exceed 1 so that |nu| > zeta sqrt(ln |E|), got {}",
                self.nu_rule.clean_factor
            )));
        }
        if !(self.nu_rule.noisy_ratio >= 0.0 && self.nu_rule.noisy_ratio.is_finite()) {
            return Err(Error::config(format!(
                "noisy_nu_ratio must be a finite constant >= 0, got {}",
                self.nu_rule.noisy_ratio
            )));
        }
        if let AlphaRule::Fixed(a) = self.alpha {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::config(format!("alpha must be positive, got {a}")));
            }
        }
        // Every grid point must yield valid parameters.
        for v in self.grid.values() {
            let params = self.point_params(v)?;
            params.validate()?;
            if params.p == params.q {
                return Err(Error::EqualProbabilities(params.p));
            }
        }
        Ok(())
    }

    /// Model parameters at grid value `v`.
    pub fn point_params(&self, v: f64) -> Result<CsbmParams> {
        let q = if self.kind.varies_q() { v } else { self.q };
        let mut params = CsbmParams::new(
            self.n,
            self.p,
            q,
            vec![0.0; self.d],
            vec![0.0; self.h],
            self.sigma,
            self.zeta,
        )
        .with_balance(self.balance_mode)
        .with_self_loops(self.self_loops);
        params.mu = derive_mu(self.kind, &params, v)?;
        params.nu = derive_nu(self.kind, &params, v, self.nu_rule)?;
        Ok(params)
    }
}
