//! Start-to-goal path finding: bidirectional BFS and A*.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::graph::{Direction, NodeId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub path: Vec<NodeId>,
    pub cost: f64,
    pub expanded_count: usize,
}

impl PathResult {
    pub fn hops(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

/// Per-edge cost used by [`astar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostModel {
    /// Every edge costs 1.
    #[default]
    Unit,
    /// Edge `(u, v)` costs `|w(u) - w(v)|`.
    WeightDifference,
}

impl CostModel {
    pub fn edge_cost(self, graph: &WeightedGraph, from: NodeId, to: NodeId) -> Result<f64, SearchError> {
        let (u, v) = (graph.index_of(from)?, graph.index_of(to)?);
        Ok(self.cost_at(graph, u, v))
    }

    fn cost_at(self, graph: &WeightedGraph, u: usize, v: usize) -> f64 {
        match self {
            CostModel::Unit => 1.0,
            CostModel::WeightDifference => (graph.weight_at(u).value() - graph.weight_at(v).value()).abs(),
        }
    }
}

/// Table of remaining-cost estimates; nodes without an entry estimate 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Heuristic {
    estimates: HashMap<NodeId, f64>,
}

impl Heuristic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_estimates(estimates: impl IntoIterator<Item = (NodeId, f64)>) -> Result<Self, SearchError> {
        let estimates: HashMap<NodeId, f64> = estimates.into_iter().collect();
        if let Some((&node, &value)) = estimates.iter().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(SearchError::InvalidHeuristic { node, value });
        }
        Ok(Heuristic { estimates })
    }

    pub fn estimate(&self, node: NodeId) -> f64 {
        self.estimates.get(&node).copied().unwrap_or(0.0)
    }
}

/// Alternating level-synchronous BFS from `start` over forward edges and from
/// `goal` over reverse edges, one full wave per side, start side first. The
/// first wave that settles a node already settled by the other side ends the
/// search; among those meeting nodes the one with the fewest total hops, then
/// the smallest id, is used. Cost is the hop count.
pub fn bidirectional_search(graph: &WeightedGraph, start: NodeId, goal: NodeId) -> Result<PathResult, SearchError> {
    let s = graph.index_of(start)?;
    let t = graph.index_of(goal)?;
    if s == t {
        return Ok(PathResult {
            path: vec![start],
            cost: 0.0,
            expanded_count: 0,
        });
    }

    let n = graph.node_count();
    let mut fwd = Wave::new(n, s);
    let mut bwd = Wave::new(n, t);
    let mut expanded = 0;

    let meet = loop {
        expanded += fwd.layer.len();
        let fresh = fwd.advance(|u| graph.adj(u, Direction::Directed));
        if let Some(m) = best_meeting(&fresh, &fwd, &bwd, graph) {
            break m;
        }
        if fresh.is_empty() {
            return Err(SearchError::NoPath { start, goal });
        }

        expanded += bwd.layer.len();
        let fresh = bwd.advance(|u| graph.in_adj(u));
        if let Some(m) = best_meeting(&fresh, &fwd, &bwd, graph) {
            break m;
        }
        if fresh.is_empty() {
            return Err(SearchError::NoPath { start, goal });
        }
    };

    let mut path = Vec::new();
    let mut cur = Some(meet);
    while let Some(u) = cur {
        path.push(graph.id_at(u));
        cur = fwd.parent[u];
    }
    path.reverse();
    let mut cur = bwd.parent[meet];
    while let Some(u) = cur {
        path.push(graph.id_at(u));
        cur = bwd.parent[u];
    }
    let cost = (path.len() - 1) as f64;
    Ok(PathResult {
        path,
        cost,
        expanded_count: expanded,
    })
}

struct Wave {
    dist: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    layer: Vec<usize>,
}

impl Wave {
    fn new(n: usize, origin: usize) -> Self {
        let mut dist = vec![None; n];
        dist[origin] = Some(0);
        Wave {
            dist,
            parent: vec![None; n],
            layer: vec![origin],
        }
    }

    /// Expands the current layer; returns the newly settled nodes.
    fn advance<'g>(&mut self, adj: impl Fn(usize) -> &'g [usize]) -> Vec<usize> {
        let mut next = Vec::new();
        for &u in &self.layer {
            let d = self.dist[u].expect("layer nodes are settled") + 1;
            for &v in adj(u) {
                if self.dist[v].is_none() {
                    self.dist[v] = Some(d);
                    self.parent[v] = Some(u);
                    next.push(v);
                }
            }
        }
        self.layer = next.clone();
        next
    }
}

fn best_meeting(fresh: &[usize], fwd: &Wave, bwd: &Wave, graph: &WeightedGraph) -> Option<usize> {
    fresh
        .iter()
        .filter_map(|&v| Some((fwd.dist[v]? + bwd.dist[v]?, graph.id_at(v), v)))
        .min()
        .map(|(_, _, v)| v)
}

#[derive(Debug, Clone, Copy)]
struct Open {
    f: f64,
    g: f64,
    node: usize,
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Open {}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Open {
    // Reversed: BinaryHeap is a max-heap and we want min f, then min g, then min id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.g.total_cmp(&self.g))
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// A* over forward edges with `f(n) = g(n) + h(n)`. Expands the minimum-f
/// node, breaking ties by smaller g and then smaller id. Closed nodes are
/// reopened when a cheaper route appears, so any admissible heuristic yields
/// a minimum-cost path.
pub fn astar(
    graph: &WeightedGraph,
    start: NodeId,
    goal: NodeId,
    cost: CostModel,
    heuristic: &Heuristic,
) -> Result<PathResult, SearchError> {
    let s = graph.index_of(start)?;
    let t = graph.index_of(goal)?;
    let n = graph.node_count();
    let h = |i: usize| heuristic.estimate(graph.id_at(i));

    let mut g_score = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    g_score[s] = 0.0;
    open.push(Open {
        f: h(s),
        g: 0.0,
        node: s,
    });
    let mut expanded = 0;

    while let Some(Open { g, node: u, .. }) = open.pop() {
        if closed[u] || g > g_score[u] {
            continue;
        }
        closed[u] = true;
        expanded += 1;
        if u == t {
            let mut path = Vec::new();
            let mut cur = Some(t);
            while let Some(v) = cur {
                path.push(graph.id_at(v));
                cur = parent[v];
            }
            path.reverse();
            return Ok(PathResult {
                path,
                cost: g,
                expanded_count: expanded,
            });
        }
        for &v in graph.adj(u, Direction::Directed) {
            let tentative = g + cost.cost_at(graph, u, v);
            if tentative < g_score[v] {
                g_score[v] = tentative;
                parent[v] = Some(u);
                closed[v] = false;
                open.push(Open {
                    f: tentative + h(v),
                    g: tentative,
                    node: v,
                });
            }
        }
    }
    Err(SearchError::NoPath { start, goal })
}
