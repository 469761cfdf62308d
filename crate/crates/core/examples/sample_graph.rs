//! Draws one graph and prints its basic shape.
//!
//! `cargo run --example sample_graph`

use csbm_attention::model::{default_feature_dim, sample_csbm, CsbmParams};

fn main() -> csbm_attention::Result<()> {
    let n = 200;
    let d = default_feature_dim(n);
    let mut mu = vec![0.0; d];
    mu[0] = 0.5;
    let mut nu = vec![0.0; d];
    nu[0] = 2.0;
    let params = CsbmParams::new(n, 0.3, 0.05, mu, nu, 0.1, 0.1);
    let sample = sample_csbm(&params, 7)?;

    let (c0, c1) = sample.class_sizes();
    let intra = sample.edges.iter().filter(|&&(i, j)| sample.is_intra(i, j)).count();
    let degrees: Vec<usize> = (0..n).map(|i| sample.adjacency.degree(i)).collect();
    println!("nodes {n} (classes {c0}/{c1}), feature dim {d}");
    println!("edges {} ({intra} intra, {} inter)", sample.edge_count(), sample.edge_count() - intra);
    println!(
        "degree min {} mean {:.1} max {}",
        degrees.iter().min().unwrap(),
        degrees.iter().sum::<usize>() as f64 / n as f64,
        degrees.iter().max().unwrap()
    );
    println!("x_0 = {:.3?}", &sample.node_feature(0)[..3]);
    println!("E_0 = {:.3?}", &sample.edge_feature(0)[..3]);
    Ok(())
}
