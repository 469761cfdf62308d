//! Graph attention on the two-class contextual stochastic block model with
//! edge features.
//!
//! * [`model`] samples graphs, node features and edge features;
//! * [`attention`] turns edge features into softmax attention coefficients;
//! * [`convolution`] aggregates projected node features and classifies;
//! * [`diagnostics`] checks the concentration properties behind the
//!   classification guarantees on finite samples;
//! * [`experiments`] runs seeded sweeps and writes CSV results.
//!
//! ```
//! use csbm_attention::{
//!     attention_pipeline, build_classifier, build_clean_spec, sample_csbm, CsbmParams,
//! };
//!
//! let mut mu = vec![0.0; 3];
//! mu[0] = 1.0;
//! let mut nu = vec![0.0; 3];
//! nu[0] = 5.0;
//! let params = CsbmParams::new(60, 0.5, 0.1, mu, nu, 0.1, 0.1);
//! let sample = sample_csbm(&params, 7).unwrap();
//! let spec = build_clean_spec(&params).unwrap();
//! let classifier = build_classifier(&params).unwrap();
//! let (_, result) = attention_pipeline(&sample, &spec, &classifier).unwrap();
//! assert!(result.accuracy > 0.9);
//! ```
//!
//! Runnable examples live in `examples/`.

pub mod attention;
pub mod convolution;
pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod model;
pub mod rng;
pub mod stats;

pub use attention::{
    attention_coefficients, build_clean_spec, build_clean_spec_with, gamma_stats, AlphaRule, AttentionSpec,
    GammaMatrix, GammaStats, Phi,
};
pub use convolution::{
    attention_pipeline, build_classifier, graph_convolution_baseline, mass_allocation, ClassifierSpec,
    PredictionResult,
};
pub use diagnostics::{ConcentrationReport, Statistic};
pub use error::{Error, Result};
pub use experiments::{run_sweep, ExperimentKind, Method, SweepConfig, SweepResult};
pub use model::{sample_csbm, BalanceMode, CsbmParams, GraphSample};
