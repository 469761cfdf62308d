//! The contextual stochastic block model with Gaussian edge features.
//!
//! A sample consists of two-class labels `ε`, an undirected graph whose
//! edges appear with probability `p` inside a class and `q` across classes,
//! node features `x_i = (2ε_i − 1)μ + σ g_i` and edge features
//! `E_ij = (2ε_i − 1)(2ε_j − 1)ν + ζ f_ij`, where `g`, `f` are standard
//! Gaussian vectors. Intra-class edges therefore have mean `+ν` and
//! inter-class edges mean `−ν`; class 0 nodes have mean `−μ`.

use std::fmt::Write as _;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng;

/// How class labels are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BalanceMode {
    /// Every label is an independent fair coin.
    Bernoulli,
    /// A uniformly random subset of exactly `n/2` nodes gets label 1.
    #[default]
    ExactHalf,
}

impl BalanceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BalanceMode::Bernoulli => "bernoulli",
            BalanceMode::ExactHalf => "exact_half",
        }
    }
}

impl std::str::FromStr for BalanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(BalanceMode::Bernoulli),
            "exact_half" => Ok(BalanceMode::ExactHalf),
            other => Err(Error::config(format!("unknown balance mode `{other}`"))),
        }
    }
}

/// Parameters of `CSBM(n, p, q, μ, ν, σ, ζ)`.
///
/// The feature dimensions are the lengths of `mu` and `nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct CsbmParams {
    pub n: usize,
    /// Intra-class edge probability.
    pub p: f64,
    /// Inter-class edge probability.
    pub q: f64,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    /// Node-feature noise scale (multiplies a standard Gaussian).
    pub sigma: f64,
    /// Edge-feature noise scale (multiplies a standard Gaussian).
    pub zeta: f64,
    pub balance_mode: BalanceMode,
    /// Adds `{i, i}` to every neighborhood (the `A + I` variant).
    pub self_loops: bool,
}

impl CsbmParams {
    pub fn new(n: usize, p: f64, q: f64, mu: Vec<f64>, nu: Vec<f64>, sigma: f64, zeta: f64) -> Self {
        CsbmParams {
            n,
            p,
            q,
            mu,
            nu,
            sigma,
            zeta,
            balance_mode: BalanceMode::default(),
            self_loops: false,
        }
    }

    pub fn with_balance(mut self, mode: BalanceMode) -> Self {
        self.balance_mode = mode;
        self
    }

    pub fn with_self_loops(mut self, self_loops: bool) -> Self {
        self.self_loops = self_loops;
        self
    }

    /// Node-feature dimension `d`.
    pub fn d(&self) -> usize {
        self.mu.len()
    }

    /// Edge-feature dimension `h`.
    pub fn h(&self) -> usize {
        self.nu.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("n must be at least 2, got {}", self.n)));
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        for (name, v) in [("sigma", self.sigma), ("zeta", self.zeta)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if self.mu.is_empty() {
            return Err(Error::config("node-feature dimension d must be at least 1"));
        }
        if self.nu.is_empty() {
            return Err(Error::config("edge-feature dimension h must be at least 1"));
        }
        if self.mu.iter().chain(&self.nu).any(|x| !x.is_finite()) {
            return Err(Error::config("mu and nu must be finite"));
        }
        if self.balance_mode == BalanceMode::ExactHalf && !self.n.is_multiple_of(2) {
            return Err(Error::config(format!(
                "exact_half balance needs an even n, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// `d = n / ln²n`, rounded to the nearest integer and at least 1.
pub fn default_feature_dim(n: usize) -> usize {
    let ln = (n as f64).ln();
    if ln <= 0.0 {
        return 1;
    }
    ((n as f64 / (ln * ln)).round() as usize).max(1)
}

/// `+1` for class 1, `−1` for class 0.
#[inline]
pub fn class_sign(label: u8) -> f64 {
    if label == 1 {
        1.0
    } else {
        -1.0
    }
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense row-major matrix of features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(FeatureMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&mut self, c: f64) {
        self.data.iter_mut().for_each(|x| *x *= c);
    }
}

/// Symmetric adjacency in compressed-row form.
///
/// Slot `k` of row `i` holds neighbor `neighbors[k]` together with the id of
/// the undirected edge that connects them, so per-directed-edge quantities
/// (attention coefficients) can share the same offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl Adjacency {
    /// Builds the adjacency of `n` nodes from undirected edges `(i, j)`.
    ///
    /// A self-loop `(i, i)` occupies one slot of row `i`. Duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degree = vec![0usize; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::config(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            degree[i] += 1;
            if i != j {
                degree[j] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut neighbors = vec![0usize; total];
        let mut edge_ids = vec![0usize; total];
        let mut cursor = offsets[..n].to_vec();
        for (id, &(i, j)) in edges.iter().enumerate() {
            neighbors[cursor[i]] = j;
            edge_ids[cursor[i]] = id;
            cursor[i] += 1;
            if i != j {
                neighbors[cursor[j]] = i;
                edge_ids[cursor[j]] = id;
                cursor[j] += 1;
            }
        }
        // Sort each row so lookups can binary search.
        for i in 0..n {
            let (lo, hi) = (offsets[i], offsets[i + 1]);
            let mut row: Vec<(usize, usize)> = neighbors[lo..hi]
                .iter()
                .copied()
                .zip(edge_ids[lo..hi].iter().copied())
                .collect();
            row.sort_unstable();
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::config(format!("duplicate edge at node {i}")));
            }
            for (k, (nb, id)) in row.into_iter().enumerate() {
                neighbors[lo + k] = nb;
                edge_ids[lo + k] = id;
            }
        }
        Ok(Adjacency {
            offsets,
            neighbors,
            edge_ids,
        })
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn edge_ids(&self, i: usize) -> &[usize] {
        &self.edge_ids[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Row offsets; row `i` occupies `offsets[i]..offsets[i + 1]`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Number of directed slots (`2|E|`, self-loops counted once).
    pub fn slot_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    /// Id of the undirected edge `{i, j}`, if present.
    pub fn edge_id(&self, i: usize, j: usize) -> Option<usize> {
        self.neighbors(i)
            .binary_search(&j)
            .ok()
            .map(|k| self.edge_ids(i)[k])
    }
}

/// One draw `(A, X, E)` with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    pub labels: Vec<u8>,
    /// Undirected edges; edge id `k` is `edges[k]` with `i <= j`.
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Adjacency,
    /// `n × d`.
    pub node_features: FeatureMatrix,
    /// `|E| × h`, row `k` belongs to `edges[k]`.
    pub edge_features: FeatureMatrix,
}

impl GraphSample {
    /// Assembles a sample from explicit parts, checking shapes.
    pub fn from_parts(
        labels: Vec<u8>,
        edges: Vec<(usize, usize)>,
        node_features: FeatureMatrix,
        edge_features: FeatureMatrix,
    ) -> Result<Self> {
        let n = labels.len();
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::config("labels must be 0 or 1"));
        }
        if node_features.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: node_features.rows(),
            });
        }
        if edge_features.rows() != edges.len() {
            return Err(Error::DimensionMismatch {
                expected: edges.len(),
                actual: edge_features.rows(),
            });
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        let adjacency = Adjacency::from_edges(n, &edges)?;
        Ok(GraphSample {
            labels,
            edges,
            adjacency,
            node_features,
            edge_features,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_feature(&self, i: usize) -> &[f64] {
        self.node_features.row(i)
    }

    pub fn edge_feature(&self, edge_id: usize) -> &[f64] {
        self.edge_features.row(edge_id)
    }

    /// Feature of the undirected edge `{i, j}`, if the edge exists.
    pub fn edge_feature_between(&self, i: usize, j: usize) -> Option<&[f64]> {
        self.adjacency.edge_id(i, j).map(|id| self.edge_feature(id))
    }

    pub fn is_intra(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Sizes `(|C_0|, |C_1|)`.
    pub fn class_sizes(&self) -> (usize, usize) {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        (self.n() - ones, ones)
    }

    /// Writes the debugging dump: a header comment, a `labels` block with
    /// `i label` lines, a `nodes` block with `i x_1 … x_d` lines and an
    /// `edges` block with `i j f_1 … f_h` lines (`i <= j`).
    pub fn write_dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "# csbm sample n={} d={} h={} edges={}",
            self.n(),
            self.node_features.cols(),
            self.edge_features.cols(),
            self.edge_count()
        )?;
        writeln!(out, "labels")?;
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "{i} {l}")?;
        }
        writeln!(out, "nodes")?;
        for i in 0..self.n() {
            writeln!(out, "{i}{}", join_values(self.node_feature(i)))?;
        }
        writeln!(out, "edges")?;
        for (id, &(i, j)) in self.edges.iter().enumerate() {
            writeln!(out, "{i} {j}{}", join_values(self.edge_feature(id)))?;
        }
        Ok(())
    }
}

fn join_values(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 12);
    for v in values {
        let _ = write!(s, " {v}");
    }
    s
}

/// Draws class labels.
pub fn sample_labels<R: Rng + ?Sized>(params: &CsbmParams, rng: &mut R) -> Result<Vec<u8>> {
    let n = params.n;
    match params.balance_mode {
        BalanceMode::Bernoulli => Ok((0..n).map(|_| u8::from(rng.random_bool(0.5))).collect()),
        BalanceMode::ExactHalf => {
            if !n.is_multiple_of(2) {
                return Err(Error::config(format!("exact_half balance needs an even n, got {n}")));
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut labels = vec![0u8; n];
            for &i in &order[..n / 2] {
                labels[i] = 1;
            }
            Ok(labels)
        }
    }
}

/// Draws the stochastic block model graph given labels.
///
/// Returns the undirected edge list (ordered by `(i, j)`, `i <= j`) and the
/// adjacency built from it.
pub fn sample_graph<R: Rng + ?Sized>(
    labels: &[u8],
    params: &CsbmParams,
    rng: &mut R,
) -> Result<(Vec<(usize, usize)>, Adjacency)> {
    let n = labels.len();
    if n != params.n {
        return Err(Error::DimensionMismatch {
            expected: params.n,
            actual: n,
        });
    }
    let expected = (params.p.max(params.q) * (n * (n - 1) / 2) as f64) as usize;
    let mut edges = Vec::with_capacity(expected + n);
    for i in 0..n {
        if params.self_loops {
            edges.push((i, i));
        }
        for j in i + 1..n {
            let prob = if labels[i] == labels[j] { params.p } else { params.q };
            if rng.random::<f64>() < prob {
                edges.push((i, j));
            }
        }
    }
    let adjacency = Adjacency::from_edges(n, &edges)?;
    Ok((edges, adjacency))
}

/// Draws node features (`n × d`) and edge features (`|E| × h`).
pub fn sample_features<R: Rng + ?Sized>(
    labels: &[u8],
    edges: &[(usize, usize)],
    params: &CsbmParams,
    rng: &mut R,
) -> (FeatureMatrix, FeatureMatrix) {
    let (d, h) = (params.d(), params.h());
    let mut x = Vec::with_capacity(labels.len() * d);
    for &l in labels {
        let sign = class_sign(l);
        for &m in &params.mu {
            let g: f64 = rng.sample(StandardNormal);
            x.push(sign * m + params.sigma * g);
        }
    }
    let mut e = Vec::with_capacity(edges.len() * h);
    for &(i, j) in edges {
        let sign = class_sign(labels[i]) * class_sign(labels[j]);
        for &v in &params.nu {
            let f: f64 = rng.sample(StandardNormal);
            e.push(sign * v + params.zeta * f);
        }
    }
    (
        FeatureMatrix::from_rows(labels.len(), d, x).expect("shape by construction"),
        FeatureMatrix::from_rows(edges.len(), h, e).expect("shape by construction"),
    )
}

/// Draws a full sample; a pure function of `(params, seed)`.
pub fn sample_csbm(params: &CsbmParams, seed: u64) -> Result<GraphSample> {
    params.validate()?;
    let mut rng = rng::stream(seed);
    let labels = sample_labels(params, &mut rng)?;
    let (edges, adjacency) = sample_graph(&labels, params, &mut rng)?;
    let (node_features, edge_features) = sample_features(&labels, &edges, params, &mut rng);
    Ok(GraphSample {
        labels,
        edges,
        adjacency,
        node_features,
        edge_features,
    })
}
