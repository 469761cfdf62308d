//! Uniform averaging against the constructed attention as q approaches p.
//!
//! `cargo run --release --example gcn_baseline`

use csbm_attention::attention::build_clean_spec;
use csbm_attention::convolution::{attention_pipeline, build_classifier, graph_convolution_baseline};
use csbm_attention::experiments::{edge_rate, threshold_rate};
use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};
use csbm_attention::rng::trial_seed;

fn main() -> csbm_attention::Result<()> {
    let (n, p, sigma, zeta, trials) = (400, 0.4, 0.1, 0.1, 20);
    let d = default_feature_dim(n);
    println!("{:>6} {:>8} {:>8}", "q", "gat", "gcn");
    for (point, q) in [0.1, 0.2, 0.3, 0.35, 0.39].into_iter().enumerate() {
        let mut mu = vec![0.0; d];
        mu[0] = 5.0 * sigma * threshold_rate(n, p, q);
        let mut nu = vec![0.0; d];
        nu[0] = 100.0 * edge_rate(n, p, q, zeta);
        let params = CsbmParams::new(n, p, q, mu, nu, sigma, zeta);
        let spec = build_clean_spec(&params)?;
        let clf = build_classifier(&params)?;
        let (mut gat, mut gcn) = (0.0, 0.0);
        for t in 0..trials {
            let sample = sample_csbm(&params, trial_seed(5, point, t))?;
            gat += attention_pipeline(&sample, &spec, &clf)?.1.accuracy;
            gcn += graph_convolution_baseline(&sample, &clf)?.accuracy;
        }
        println!("{q:>6.2} {:>8.4} {:>8.4}", gat / trials as f64, gcn / trials as f64);
    }
    Ok(())
}
