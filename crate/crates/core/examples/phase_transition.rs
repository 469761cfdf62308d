//! Perfect-classification frequency as ‖μ‖ crosses the noisy-regime
//! threshold σ√(ln n / (n·max(p,q)))·(p+q)/|p−q|.
//!
//! `cargo run --release --example phase_transition`

use csbm_attention::attention::{AttentionSpec, Phi};
use csbm_attention::convolution::{attention_pipeline, build_classifier, graph_convolution_baseline};
use csbm_attention::experiments::noisy_threshold;
use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};
use csbm_attention::rng::trial_seed;

fn main() -> csbm_attention::Result<()> {
    let (n, p, q, sigma, zeta, trials) = (400, 0.4, 0.1, 0.1, 0.1, 20);
    let d = default_feature_dim(n);
    let threshold = noisy_threshold(n, p, q, sigma)?;
    let mut s = vec![0.0; d];
    s[0] = 1.0;
    let spec = AttentionSpec::lipschitz(&s, Phi::Identity)?;
    println!("threshold {threshold:.4}");
    println!("{:>8} {:>10} {:>10}", "mu/thr", "attention", "uniform");
    for (point, factor) in [0.1, 0.3, 1.0, 3.0, 8.0].into_iter().enumerate() {
        let mut mu = vec![0.0; d];
        mu[0] = factor * threshold;
        let mut nu = vec![0.0; d];
        nu[0] = zeta;
        let params = CsbmParams::new(n, p, q, mu, nu, sigma, zeta);
        let clf = build_classifier(&params)?;
        let (mut gat, mut gcn) = (0usize, 0usize);
        for t in 0..trials {
            let sample = sample_csbm(&params, trial_seed(3, point, t))?;
            gat += usize::from(attention_pipeline(&sample, &spec, &clf)?.1.perfect);
            gcn += usize::from(graph_convolution_baseline(&sample, &clf)?.perfect);
        }
        println!("{factor:>8.1} {:>10.2} {:>10.2}", gat as f64 / trials as f64, gcn as f64 / trials as f64);
    }
    Ok(())
}
