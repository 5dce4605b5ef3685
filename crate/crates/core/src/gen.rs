//! Seeded synthetic graph generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Only raw `next_u64` output is consumed and converted with
//! the helpers below, so generated graphs are bit-identical across platforms
//! and dependency upgrades of the sampling layer.

use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphBuilder, NodeId, NodeWeight, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    /// Each ordered pair `(u, v)`, `u != v`, independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Complete directed clique on nodes `1..=m`, then every later node links
    /// to `m` distinct earlier nodes chosen proportionally to degree.
    BarabasiAlbert { n: usize, m: usize },
    /// `1 -> 2 -> ... -> n`.
    Chain { n: usize },
    /// Every node of level `i` links to every node of level `i + 1`.
    Layered { levels: usize, width: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightDist {
    Uniform01,
    Fixed(f64),
}

impl fmt::Display for WeightDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightDist::Uniform01 => f.write_str("uniform01"),
            WeightDist::Fixed(c) => write!(f, "fixed({c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub seed: u64,
    pub weights: WeightDist,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |msg: String| Err(GenError::InvalidSpec(msg));
        match self.kind {
            GraphKind::ErdosRenyi { n, p } => {
                if n < 1 {
                    return bad("erdos_renyi needs n >= 1".into());
                }
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("erdos_renyi needs 0 <= p <= 1, got {p}"));
                }
            }
            GraphKind::BarabasiAlbert { n, m } => {
                if m < 1 || m >= n {
                    return bad(format!("barabasi_albert needs 1 <= m < n, got n={n} m={m}"));
                }
            }
            GraphKind::Chain { n } => {
                if n < 1 {
                    return bad("chain needs n >= 1".into());
                }
            }
            GraphKind::Layered { levels, width } => {
                if levels < 1 || width < 1 {
                    return bad(format!("layered needs levels, width >= 1, got {levels}x{width}"));
                }
            }
        }
        if let WeightDist::Fixed(c) = self.weights {
            if NodeWeight::new(c).is_err() {
                return bad(format!("fixed weight {c} must be finite and >= 0"));
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        match self.kind {
            GraphKind::ErdosRenyi { n, .. } | GraphKind::BarabasiAlbert { n, .. } | GraphKind::Chain { n } => n,
            GraphKind::Layered { levels, width } => levels * width,
        }
    }
}

struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` by rejection (no modulo bias).
    fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.0.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    fn weight(&mut self, dist: WeightDist) -> NodeWeight {
        let v = match dist {
            WeightDist::Uniform01 => self.unit(),
            WeightDist::Fixed(c) => c,
        };
        NodeWeight::new(v).expect("validated weight")
    }
}

pub fn generate(spec: &GenSpec) -> Result<WeightedGraph, GenError> {
    spec.validate()?;
    let mut rng = Stream::new(spec.seed);
    let n = spec.node_count();
    let edges = match spec.kind {
        GraphKind::ErdosRenyi { n, p } => erdos_renyi(&mut rng, n, p),
        GraphKind::BarabasiAlbert { n, m } => barabasi_albert(&mut rng, n, m),
        GraphKind::Chain { n } => (1..n as u64).map(|u| (u, u + 1)).collect(),
        GraphKind::Layered { levels, width } => layered(levels, width),
    };

    let mut builder = GraphBuilder::new();
    for id in 1..=n as u64 {
        builder
            .add_node(NodeId(id), rng.weight(spec.weights))
            .expect("fresh node");
    }
    for (u, v) in edges {
        builder
            .add_edge(NodeId(u), NodeId(v))
            .expect("generated edges are simple");
    }
    Ok(builder.build())
}

/// Same topology, weights redrawn in ascending id order from a fresh stream.
pub fn assign_weights(graph: &WeightedGraph, dist: WeightDist, seed: u64) -> Result<WeightedGraph, GenError> {
    if let WeightDist::Fixed(c) = dist {
        NodeWeight::new(c).map_err(|e| GenError::InvalidSpec(e.to_string()))?;
    }
    let mut rng = Stream::new(seed);
    Ok(graph.with_weights(|_| rng.weight(dist)))
}

/// Walks the `n * (n - 1)` ordered pairs in row-major order, skipping
/// geometrically distributed gaps so sparse graphs cost `O(n + |E|)`.
fn erdos_renyi(rng: &mut Stream, n: usize, p: f64) -> Vec<(u64, u64)> {
    let n = n as u64;
    let total = n * n.saturating_sub(1);
    let mut edges = Vec::new();
    if p <= 0.0 || total == 0 {
        return edges;
    }
    let pair = |k: u64| {
        let u = k / (n - 1);
        let r = k % (n - 1);
        let v = if r >= u { r + 1 } else { r };
        (u + 1, v + 1)
    };
    if p >= 1.0 {
        return (0..total).map(pair).collect();
    }
    let log_q = libm::log(1.0 - p);
    let mut k: u64 = 0;
    loop {
        // 1 - unit() lies in (0, 1], so the log is finite.
        let gap = libm::floor(libm::log(1.0 - rng.unit()) / log_q);
        if gap >= (total - k) as f64 {
            break;
        }
        k += gap as u64;
        edges.push(pair(k));
        k += 1;
        if k >= total {
            break;
        }
    }
    edges
}

fn barabasi_albert(rng: &mut Stream, n: usize, m: usize) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    // One entry per edge endpoint: sampling uniformly from it is degree-proportional.
    let mut endpoints: Vec<u64> = Vec::new();
    for u in 1..=m as u64 {
        for v in 1..=m as u64 {
            if u != v {
                edges.push((u, v));
                endpoints.push(u);
                endpoints.push(v);
            }
        }
    }
    for new in (m as u64 + 1)..=n as u64 {
        let existing = new - 1;
        let mut targets: Vec<u64> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = if endpoints.is_empty() {
                rng.below(existing) + 1
            } else {
                endpoints[rng.below(endpoints.len() as u64) as usize]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        targets.sort_unstable();
        for t in targets {
            edges.push((new, t));
            endpoints.push(new);
            endpoints.push(t);
        }
    }
    edges
}

fn layered(levels: usize, width: usize) -> Vec<(u64, u64)> {
    let id = |level: usize, i: usize| (level * width + i + 1) as u64;
    let mut edges = Vec::new();
    for level in 0..levels.saturating_sub(1) {
        for a in 0..width {
            for b in 0..width {
                edges.push((id(level, a), id(level + 1, b)));
            }
        }
    }
    edges
}
