//! Noisy regime: with ‖ν‖ comparable to the edge noise, attention stays
//! close to uniform averaging.
//!
//! `cargo run --release --example noisy_attention`

use csbm_attention::attention::{attention_coefficients, gamma_stats, median_sum_sq_gamma, AttentionSpec, Phi};
use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};

fn main() -> csbm_attention::Result<()> {
    let (n, p, q, zeta) = (400, 0.4, 0.33, 0.1);
    let d = default_feature_dim(n);
    let mut mu = vec![0.0; d];
    mu[0] = 0.1;
    let mut nu = vec![0.0; d];
    nu[0] = zeta;
    let params = CsbmParams::new(n, p, q, mu, nu, 0.1, zeta);
    let sample = sample_csbm(&params, 3)?;

    let mut s = vec![0.0; d];
    s[0] = 1.0;
    for phi in [
        Phi::Identity,
        Phi::LeakyRelu { slope: 0.2 },
        Phi::TanhScaled {
            lipschitz: 1.0,
            bound: 1.0,
        },
    ] {
        let spec = AttentionSpec::lipschitz(&s, phi)?;
        let gamma = attention_coefficients(&sample, &spec)?;
        let stats = gamma_stats(&sample, &gamma, 3.0)?;
        println!(
            "{phi:?}: near-uniform nodes {:.3}, median sum gamma^2 {:.5} (1/mean degree {:.5})",
            stats.uniform_node_fraction,
            median_sum_sq_gamma(&gamma),
            2.0 / (n as f64 * (p + q))
        );
    }
    Ok(())
}
