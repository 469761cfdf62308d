//! Clean regime: edge features separate intra from inter edges, and the
//! constructed attention puts almost all mass on same-class neighbors.
//!
//! `cargo run --release --example clean_attention`

use csbm_attention::attention::{attention_coefficients, build_clean_spec, gamma_stats, DEFAULT_UNIFORM_BAND};
use csbm_attention::convolution::{attention_pipeline, build_classifier, mass_allocation};
use csbm_attention::experiments::{edge_rate, threshold_rate};
use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};

fn main() -> csbm_attention::Result<()> {
    let (n, p, q, sigma, zeta) = (400, 0.4, 0.1, 0.1, 0.1);
    let d = default_feature_dim(n);
    let mut mu = vec![0.0; d];
    mu[0] = 5.0 * sigma * threshold_rate(n, p, q);
    let mut nu = vec![0.0; d];
    nu[0] = 100.0 * edge_rate(n, p, q, zeta);
    let params = CsbmParams::new(n, p, q, mu, nu, sigma, zeta);

    let sample = sample_csbm(&params, 1)?;
    let spec = build_clean_spec(&params)?;
    let gamma = attention_coefficients(&sample, &spec)?;
    let stats = gamma_stats(&sample, &gamma, DEFAULT_UNIFORM_BAND)?;
    let (intra, inter) = mass_allocation(&sample, &gamma)?;
    println!("intra gamma mean {:.5} (2/(np) = {:.5})", stats.intra.mean, 2.0 / (n as f64 * p));
    println!("inter gamma mean {:.3e}", stats.inter.mean);
    println!("mass: intra {intra:.4}% inter {:.2e}%", inter.abs());

    let (_, result) = attention_pipeline(&sample, &spec, &build_classifier(&params)?)?;
    println!("accuracy {:.4}, perfect {}", result.accuracy, result.perfect);
    Ok(())
}
