//! Node-weighted directed graph model.
//!
//! Weights live on nodes, not edges. A [`WeightedGraph`] is frozen once built:
//! node storage is sorted by id, adjacency lists keep the order in which edges
//! were first seen, and the reverse and undirected views are precomputed.

mod dot;
mod edge_list;

pub use dot::to_dot;
pub use edge_list::{parse_edge_list, parse_edge_list_with_report, serialize_edge_list, ParseReport};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two weights closer than this are the same weight.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Weights are compared on a fixed-point grid of this many steps per unit.
const WEIGHT_SCALE: f64 = 1e9;

/// Largest accepted weight; keeps fixed-point differences inside `i64`.
pub const MAX_WEIGHT: f64 = 1e9;

/// Positive integer node label, as written in input files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for NodeId {
    fn from(v: u64) -> Self {
        NodeId(v)
    }
}

/// Finite, non-negative similarity/probability score attached to a node.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeWeight(f64);

impl NodeWeight {
    pub fn new(value: f64) -> Result<Self, GraphError> {
        if !value.is_finite() || !(0.0..=MAX_WEIGHT).contains(&value) {
            return Err(GraphError::InvalidWeight(value));
        }
        Ok(NodeWeight(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Fixed-point key used for every ordering and distance decision, so that
    /// `|0.5 - 0.4|` and `|0.3 - 0.4|` compare as equal.
    pub fn key(self) -> i64 {
        (self.0 * WEIGHT_SCALE).round() as i64
    }

    pub fn in_unit_interval(self) -> bool {
        (0.0..=1.0).contains(&self.0)
    }
}

impl fmt::Display for NodeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest round-trip representation; no trailing zeros.
        self.0.fmt(f)
    }
}

/// Converts a non-negative threshold to the same fixed-point grid as [`NodeWeight::key`].
pub(crate) fn weight_delta_key(delta: f64) -> i64 {
    (delta * WEIGHT_SCALE).round() as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Directed,
    Undirected,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Directed => "directed",
            Direction::Undirected => "undirected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {node} has conflicting weights {first} and {second}")]
    WeightConflict { node: NodeId, first: f64, second: f64 },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("invalid weight {0}: must be finite, >= 0 and <= 1e9")]
    InvalidWeight(f64),
}

/// Accumulates nodes and edges, then freezes them into a [`WeightedGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    weights: HashMap<NodeId, NodeWeight>,
    first_seen: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    edge_set: std::collections::HashSet<(NodeId, NodeId)>,
    duplicate_edges: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a node. Re-declaring with a weight within [`WEIGHT_TOLERANCE`] is a no-op.
    pub fn add_node(&mut self, id: NodeId, weight: NodeWeight) -> Result<(), GraphError> {
        match self.weights.get(&id) {
            Some(&existing) => {
                if (existing.value() - weight.value()).abs() > WEIGHT_TOLERANCE {
                    return Err(GraphError::WeightConflict {
                        node: id,
                        first: existing.value(),
                        second: weight.value(),
                    });
                }
            }
            None => {
                self.weights.insert(id, weight);
                self.first_seen.push(id);
            }
        }
        Ok(())
    }

    /// Adds `from -> to`. Both endpoints must already be declared. Returns
    /// `false` when the edge was a duplicate and has been dropped.
    pub fn add_edge(&mut self, from: NodeId, to: NodeId) -> Result<bool, GraphError> {
        if from == to {
            return Err(GraphError::SelfLoop(from));
        }
        for id in [from, to] {
            if !self.weights.contains_key(&id) {
                return Err(GraphError::UnknownNode(id));
            }
        }
        if !self.edge_set.insert((from, to)) {
            self.duplicate_edges += 1;
            return Ok(false);
        }
        self.edges.push((from, to));
        Ok(true)
    }

    pub fn duplicate_edges(&self) -> usize {
        self.duplicate_edges
    }

    pub fn build(self) -> WeightedGraph {
        let mut ids = self.first_seen;
        ids.sort_unstable();
        let weights = ids.iter().map(|id| self.weights[id]).collect();
        let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let edges = self.edges.iter().map(|(u, v)| (index[u], index[v])).collect();
        WeightedGraph::from_parts(ids, weights, index, edges)
    }
}

/// Immutable node-weighted directed graph.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    ids: Vec<NodeId>,
    weights: Vec<NodeWeight>,
    index: HashMap<NodeId, usize>,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    undirected_adj: Vec<Vec<usize>>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.weights == other.weights && self.edges == other.edges
    }
}

impl WeightedGraph {
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    fn from_parts(
        ids: Vec<NodeId>,
        weights: Vec<NodeWeight>,
        index: HashMap<NodeId, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let n = ids.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let undirected_adj = (0..n)
            .map(|u| {
                let mut merged = out_adj[u].clone();
                for &v in &in_adj[u] {
                    if !out_adj[u].contains(&v) {
                        merged.push(v);
                    }
                }
                merged
            })
            .collect();
        WeightedGraph {
            ids,
            weights,
            index,
            edges,
            out_adj,
            in_adj,
            undirected_adj,
        }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn weight(&self, id: NodeId) -> Result<NodeWeight, GraphError> {
        self.index_of(id).map(|i| self.weights[i])
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, NodeWeight)> + '_ {
        self.ids.iter().copied().zip(self.weights.iter().copied())
    }

    /// Edges in construction order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().map(|&(u, v)| (self.ids[u], self.ids[v]))
    }

    /// Out-neighbors (directed) or out-then-in neighbors (undirected), each
    /// in edge insertion order, without duplicates.
    pub fn neighbors(&self, v: NodeId, direction: Direction) -> Result<Vec<NodeId>, GraphError> {
        let i = self.index_of(v)?;
        Ok(self.adj(i, direction).iter().map(|&j| self.ids[j]).collect())
    }

    pub fn predecessors(&self, v: NodeId) -> Result<Vec<NodeId>, GraphError> {
        let i = self.index_of(v)?;
        Ok(self.in_adj[i].iter().map(|&j| self.ids[j]).collect())
    }

    /// Keeps the nodes in `keep` and every edge with both endpoints kept.
    pub fn induced_subgraph(&self, keep: &BTreeSet<NodeId>) -> Result<WeightedGraph, GraphError> {
        let mut builder = GraphBuilder::new();
        for &id in keep {
            builder.add_node(id, self.weight(id)?)?;
        }
        for (u, v) in self.edges() {
            if keep.contains(&u) && keep.contains(&v) {
                builder.add_edge(u, v)?;
            }
        }
        Ok(builder.build())
    }

    /// Same topology with every weight replaced by `f(id)`.
    pub fn with_weights(&self, mut f: impl FnMut(NodeId) -> NodeWeight) -> WeightedGraph {
        let weights = self.ids.iter().map(|&id| f(id)).collect();
        WeightedGraph::from_parts(self.ids.clone(), weights, self.index.clone(), self.edges.clone())
    }

    pub(crate) fn index_of(&self, id: NodeId) -> Result<usize, GraphError> {
        self.index.get(&id).copied().ok_or(GraphError::UnknownNode(id))
    }

    pub(crate) fn id_at(&self, i: usize) -> NodeId {
        self.ids[i]
    }

    pub(crate) fn weight_at(&self, i: usize) -> NodeWeight {
        self.weights[i]
    }

    pub(crate) fn adj(&self, i: usize, direction: Direction) -> &[usize] {
        match direction {
            Direction::Directed => &self.out_adj[i],
            Direction::Undirected => &self.undirected_adj[i],
        }
    }

    pub(crate) fn in_adj(&self, i: usize) -> &[usize] {
        &self.in_adj[i]
    }

    pub(crate) fn has_incident_edge(&self, i: usize) -> bool {
        !self.out_adj[i].is_empty() || !self.in_adj[i].is_empty()
    }
}
