//! Independent oracles and shared fixtures for the integration tests.
//!
//! Nothing here calls the library's traversal code: adjacency is rebuilt from
//! `WeightedGraph::edges()` and every algorithm is re-derived from scratch.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hdbms::gen::{generate, GenSpec, GraphKind, WeightDist};
use hdbms::graph::{parse_edge_list, GraphBuilder, NodeId, NodeWeight, WeightedGraph};
use hdbms::Direction;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SOCIAL21: &str = include_str!("../../data/social21.el");
pub const SOCIAL12: &str = include_str!("../../data/social12.el");

pub fn social21() -> WeightedGraph {
    parse_edge_list(SOCIAL21).expect("social graph parses")
}

/// The social graph restricted to ids 1..=12.
pub fn social12() -> WeightedGraph {
    let keep: BTreeSet<NodeId> = (1..=12).map(NodeId).collect();
    social21().induced_subgraph(&keep).expect("ids exist")
}

pub fn ids(v: &[u64]) -> Vec<NodeId> {
    v.iter().map(|&i| NodeId(i)).collect()
}

/// Adjacency rebuilt from the edge list.
pub struct Adj {
    pub weight: BTreeMap<u64, f64>,
    pub out: BTreeMap<u64, Vec<u64>>,
    pub inc: BTreeMap<u64, Vec<u64>>,
}

impl Adj {
    pub fn new(g: &WeightedGraph) -> Self {
        let mut weight = BTreeMap::new();
        let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        let mut inc: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (id, w) in g.nodes() {
            weight.insert(id.0, w.value());
            out.insert(id.0, Vec::new());
            inc.insert(id.0, Vec::new());
        }
        for (u, v) in g.edges() {
            out.get_mut(&u.0).unwrap().push(v.0);
            inc.get_mut(&v.0).unwrap().push(u.0);
        }
        Adj { weight, out, inc }
    }

    pub fn nbrs(&self, u: u64, dir: Direction) -> Vec<u64> {
        let mut list = self.out[&u].clone();
        if dir == Direction::Undirected {
            for &v in &self.inc[&u] {
                if !list.contains(&v) {
                    list.push(v);
                }
            }
        }
        list
    }

    pub fn nodes(&self) -> Vec<u64> {
        self.weight.keys().copied().collect()
    }

    /// Weight on the 1e-9 grid, computed independently of `NodeWeight::key`.
    pub fn grid(&self, u: u64) -> i128 {
        (self.weight[&u] * 1e9).round() as i128
    }
}

pub fn bfs_oracle(g: &WeightedGraph, root: u64, dir: Direction) -> Vec<u64> {
    let adj = Adj::new(g);
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut order = Vec::new();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for v in adj.nbrs(u, dir) {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    order
}

pub fn dfs_oracle(g: &WeightedGraph, root: u64, dir: Direction) -> Vec<u64> {
    fn go(adj: &Adj, u: u64, dir: Direction, seen: &mut BTreeSet<u64>, order: &mut Vec<u64>) {
        seen.insert(u);
        order.push(u);
        for v in adj.nbrs(u, dir) {
            if !seen.contains(&v) {
                go(adj, v, dir, seen, order);
            }
        }
    }
    let adj = Adj::new(g);
    let mut order = Vec::new();
    go(&adj, root, dir, &mut BTreeSet::new(), &mut order);
    order
}

/// Reachable set by repeated relaxation until nothing changes.
pub fn reach_fixpoint(g: &WeightedGraph, root: u64, dir: Direction) -> BTreeSet<u64> {
    let adj = Adj::new(g);
    let mut set = BTreeSet::from([root]);
    loop {
        let before = set.len();
        for u in set.clone() {
            set.extend(adj.nbrs(u, dir));
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Hop distance from `root` to every reachable node over forward edges.
pub fn hop_distances(g: &WeightedGraph, root: u64) -> BTreeMap<u64, usize> {
    let adj = Adj::new(g);
    let mut dist = BTreeMap::from([(root, 0usize)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &v in &adj.out[&u] {
            dist.entry(v).or_insert_with(|| {
                queue.push_back(v);
                d + 1
            });
        }
    }
    dist
}

/// Minimum path cost by Bellman-Ford relaxation (non-negative costs).
pub fn min_costs(g: &WeightedGraph, start: u64, cost: impl Fn(u64, u64) -> f64) -> BTreeMap<u64, f64> {
    let adj = Adj::new(g);
    let mut dist: BTreeMap<u64, f64> = BTreeMap::from([(start, 0.0)]);
    for _ in 0..adj.weight.len() {
        let mut changed = false;
        for (&u, vs) in &adj.out {
            let Some(&du) = dist.get(&u) else { continue };
            for &v in vs {
                let cand = du + cost(u, v);
                if dist.get(&v).is_none_or(|&dv| cand < dv - 1e-15) {
                    dist.insert(v, cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Minimum cost over every simple path from `start` to `goal`, by enumeration.
pub fn min_cost_enumerated(g: &WeightedGraph, start: u64, goal: u64, cost: impl Fn(u64, u64) -> f64) -> Option<f64> {
    fn go(
        adj: &Adj,
        u: u64,
        goal: u64,
        acc: f64,
        on_path: &mut BTreeSet<u64>,
        best: &mut Option<f64>,
        cost: &dyn Fn(u64, u64) -> f64,
    ) {
        if u == goal {
            if best.is_none_or(|b| acc < b) {
                *best = Some(acc);
            }
            return;
        }
        for &v in &adj.out[&u] {
            if on_path.insert(v) {
                go(adj, v, goal, acc + cost(u, v), on_path, best, cost);
                on_path.remove(&v);
            }
        }
    }
    let adj = Adj::new(g);
    let mut best = None;
    go(&adj, start, goal, 0.0, &mut BTreeSet::from([start]), &mut best, &cost);
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Root,
    Depth,
    Breadth,
    Jump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OraclePolicy {
    Similarity,
    MaxWeight,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub policy: OraclePolicy,
    pub dir: Direction,
    /// Threshold already expressed on the 1e-9 grid.
    pub tau_grid: Option<i128>,
    pub siblings: bool,
    pub root_max_weight: bool,
}

/// Brute-force re-derivation of the hybrid traversal. Every step rescans all
/// nodes to rebuild the discovered set, the local pools and the discoverer
/// of each node.
pub fn hdbms_oracle(g: &WeightedGraph, root: u64, cfg: OracleConfig) -> Vec<(u64, OracleKind)> {
    let adj = Adj::new(g);
    let all = adj.nodes();
    let mut order: Vec<(u64, OracleKind)> = vec![(root, OracleKind::Root)];
    let mut anchor: BTreeMap<u64, Option<u64>> = BTreeMap::from([(root, None)]);

    let better = |policy: OraclePolicy, cur: u64, a: u64, b: u64| -> bool {
        // true if a is strictly preferred over b
        let (wa, wb, wc) = (adj.grid(a), adj.grid(b), adj.grid(cur));
        match policy {
            OraclePolicy::Similarity => {
                let (da, db) = ((wa - wc).abs(), (wb - wc).abs());
                da < db || (da == db && (wa < wb || (wa == wb && a < b)))
            }
            OraclePolicy::MaxWeight => wa > wb || (wa == wb && a < b),
        }
    };

    loop {
        let visited: BTreeSet<u64> = order.iter().map(|&(v, _)| v).collect();
        let current = order.last().unwrap().0;
        // discoverer of x = earliest visited node (in visit order) listing x as a neighbor
        let discoverer = |x: u64| {
            order
                .iter()
                .map(|&(v, _)| v)
                .find(|&v| adj.nbrs(v, cfg.dir).contains(&x))
        };
        let discovered: Vec<u64> = all
            .iter()
            .copied()
            .filter(|x| !visited.contains(x) && discoverer(*x).is_some())
            .collect();

        let policy = if order.len() == 1 && cfg.root_max_weight {
            OraclePolicy::MaxWeight
        } else {
            cfg.policy
        };

        let depth: Vec<u64> = adj
            .nbrs(current, cfg.dir)
            .into_iter()
            .filter(|v| !visited.contains(v))
            .collect();
        let mut pool: Vec<u64> = depth.clone();
        if cfg.siblings {
            if let Some(Some(p)) = anchor.get(&current) {
                pool.extend(adj.nbrs(*p, cfg.dir).into_iter().filter(|v| !visited.contains(v)));
            }
        }
        if let Some(t) = cfg.tau_grid {
            pool.retain(|&v| (adj.grid(v) - adj.grid(current)).abs() <= t);
        }

        let pick_from = |set: &[u64]| -> Option<u64> {
            let mut best: Option<u64> = None;
            for &c in set {
                if best.is_none_or(|b| better(policy, current, c, b)) {
                    best = Some(c);
                }
            }
            best
        };

        let (next, kind, next_anchor) = if let Some(c) = pick_from(&pool) {
            if depth.contains(&c) {
                (c, OracleKind::Depth, Some(current))
            } else {
                (c, OracleKind::Breadth, anchor[&current])
            }
        } else if let Some(c) = pick_from(&discovered) {
            (c, OracleKind::Jump, discoverer(c))
        } else {
            return order;
        };
        anchor.insert(next, next_anchor);
        order.push((next, kind));
    }
}

fn below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    rng.next_u64() % bound
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Deterministic mixed corpus: ER / BA / chain / layered in rotation, n <= 60.
/// Odd members get one-decimal weights so that similarity ties occur.
pub fn corpus(count: usize) -> Vec<(String, WeightedGraph)> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE ^ i as u64);
            let n = 1 + below(&mut rng, 60) as usize;
            let kind = match i % 4 {
                0 => GraphKind::ErdosRenyi {
                    n,
                    p: unit(&mut rng) * 0.15,
                },
                1 if n >= 2 => GraphKind::BarabasiAlbert {
                    n,
                    m: 1 + below(&mut rng, (n as u64 - 1).min(4)) as usize,
                },
                1 | 2 => GraphKind::Chain { n },
                _ => {
                    let levels = 1 + below(&mut rng, 6) as usize;
                    let width = 1 + below(&mut rng, (60 / levels).min(10) as u64) as usize;
                    GraphKind::Layered { levels, width }
                }
            };
            let spec = GenSpec {
                kind,
                seed: i as u64,
                weights: WeightDist::Uniform01,
            };
            let mut g = generate(&spec).expect("valid corpus spec");
            if i % 2 == 1 {
                let mut wrng = ChaCha8Rng::seed_from_u64(i as u64);
                g = g.with_weights(|_| NodeWeight::new(below(&mut wrng, 11) as f64 / 10.0).unwrap());
            }
            (format!("#{i} {kind:?}"), g)
        })
        .collect()
}

/// Random small graphs (1..=8 nodes) with one-decimal weights and arbitrary
/// (possibly cyclic, possibly disconnected) edge sets.
pub fn small_graphs(count: usize, seed: u64) -> Vec<WeightedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = 1 + below(&mut rng, 8);
            let density = unit(&mut rng);
            let mut b = GraphBuilder::new();
            for id in 1..=n {
                let w = below(&mut rng, 11) as f64 / 10.0;
                b.add_node(NodeId(id), NodeWeight::new(w).unwrap()).unwrap();
            }
            // shuffled pair order so adjacency order is not always ascending
            let mut pairs: Vec<(u64, u64)> = (1..=n)
                .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            for i in (1..pairs.len()).rev() {
                let j = below(&mut rng, i as u64 + 1) as usize;
                pairs.swap(i, j);
            }
            for (u, v) in pairs {
                if unit(&mut rng) < density * 0.6 {
                    b.add_edge(NodeId(u), NodeId(v)).unwrap();
                }
            }
            b.build()
        })
        .collect()
}

/// Oracle settings equivalent to `cfg`, with the threshold derived here from
/// the raw edge and node counts.
pub fn oracle_config(cfg: &hdbms::HdbmsConfig, g: &WeightedGraph) -> OracleConfig {
    use hdbms::hdbms::{CandidateScope, RootStep};
    let tau = cfg.tau.map(|t| match cfg.tau_schedule {
        hdbms::TauSchedule::Fixed => t,
        hdbms::TauSchedule::DensityScaled => {
            let n = g.nodes().count() as f64;
            let e = g.edges().count() as f64;
            let density = if n < 2.0 { 0.0 } else { (e / (n * (n - 1.0))).min(1.0) };
            (t * density).max(0.01).min(t)
        }
    });
    OracleConfig {
        policy: match cfg.policy {
            hdbms::SelectionPolicy::Similarity => OraclePolicy::Similarity,
            hdbms::SelectionPolicy::MaxWeight => OraclePolicy::MaxWeight,
        },
        dir: cfg.direction,
        tau_grid: tau.map(|t| (t * 1e9).round() as i128),
        siblings: cfg.scope == CandidateScope::DepthBreadth,
        root_max_weight: cfg.root_step == RootStep::MaxWeight,
    }
}

pub fn kind_of(k: hdbms::StepKind) -> OracleKind {
    match k {
        hdbms::StepKind::Root => OracleKind::Root,
        hdbms::StepKind::DepthStep => OracleKind::Depth,
        hdbms::StepKind::BreadthStep => OracleKind::Breadth,
        hdbms::StepKind::FrontierJump => OracleKind::Jump,
    }
}

/// Library traversal as (id, kind) pairs for comparison with [`hdbms_oracle`].
pub fn hdbms_pairs(g: &WeightedGraph, root: u64, cfg: &hdbms::HdbmsConfig) -> Vec<(u64, OracleKind)> {
    let r = hdbms::hdbms_traverse(g, NodeId(root), cfg).expect("traversal runs");
    r.order.iter().map(|v| (v.node.0, kind_of(v.kind))).collect()
}

/// Every combination of policy, direction, scope, root rule and a few thresholds.
pub fn all_configs() -> Vec<hdbms::HdbmsConfig> {
    use hdbms::hdbms::{CandidateScope, RootStep};
    use hdbms::{SelectionPolicy, TauSchedule};
    let mut out = Vec::new();
    for policy in [SelectionPolicy::Similarity, SelectionPolicy::MaxWeight] {
        for dir in [Direction::Directed, Direction::Undirected] {
            for scope in [CandidateScope::DepthBreadth, CandidateScope::NeighborsOnly] {
                for root_step in [RootStep::MaxWeight, RootStep::Policy] {
                    let base = hdbms::HdbmsConfig {
                        scope,
                        root_step,
                        ..hdbms::HdbmsConfig::new(policy, dir)
                    };
                    out.push(base);
                    out.push(base.with_tau(0.1, TauSchedule::Fixed));
                    out.push(base.with_tau(0.5, TauSchedule::DensityScaled));
                }
            }
        }
    }
    out
}
