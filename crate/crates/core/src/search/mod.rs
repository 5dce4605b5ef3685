//! Baseline traversals (BFS, DFS) and reachability.
//!
//! Path-finding baselines live in [`path`].

pub mod path;

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Direction, GraphError, NodeId, NodeWeight, WeightedGraph};

pub use path::{astar, bidirectional_search, CostModel, Heuristic, PathResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no path from {start} to {goal}")]
    NoPath { start: NodeId, goal: NodeId },
    #[error("heuristic estimate for node {node} is {value}; must be finite and >= 0")]
    InvalidHeuristic { node: NodeId, value: f64 },
    #[error("tau must be finite and >= 0, got {0}")]
    InvalidTau(f64),
    #[error("no candidates to select from")]
    EmptyCandidates,
}

/// How a node came to be visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Root,
    /// Chosen among the unvisited neighbors of the previously visited node.
    DepthStep,
    /// Chosen among the unvisited siblings of the previously visited node
    /// (other neighbors of the node it was reached from).
    BreadthStep,
    /// Chosen from the whole discovered-but-unvisited frontier.
    FrontierJump,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Visit {
    pub node: NodeId,
    pub weight: NodeWeight,
    pub kind: StepKind,
}

/// Ordered visit sequence produced by a traversal engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraversalResult {
    pub order: Vec<Visit>,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
}

impl TraversalResult {
    pub fn ids(&self) -> Vec<NodeId> {
        self.order.iter().map(|v| v.node).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.order.iter().map(|v| v.weight.value()).collect()
    }

    pub fn step_kinds(&self) -> Vec<StepKind> {
        self.order.iter().map(|v| v.kind).collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub(crate) fn from_indices(
        graph: &WeightedGraph,
        visits: impl IntoIterator<Item = (usize, StepKind)>,
        elapsed: Duration,
    ) -> Self {
        let order = visits
            .into_iter()
            .map(|(i, kind)| Visit {
                node: graph.id_at(i),
                weight: graph.weight_at(i),
                kind,
            })
            .collect();
        TraversalResult { order, elapsed }
    }
}

mod duration_secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(secs.max(0.0)))
    }
}

/// Level-order traversal. Nodes are marked when enqueued and neighbors are
/// enqueued in adjacency order.
pub fn bfs(graph: &WeightedGraph, root: NodeId, direction: Direction) -> Result<TraversalResult, SearchError> {
    let start = Instant::now();
    let r = graph.index_of(root)?;
    let mut marked = vec![false; graph.node_count()];
    let mut queue = VecDeque::from([r]);
    marked[r] = true;
    let mut visits = Vec::new();
    while let Some(u) = queue.pop_front() {
        visits.push((u, if u == r { StepKind::Root } else { StepKind::DepthStep }));
        for &v in graph.adj(u, direction) {
            if !marked[v] {
                marked[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(TraversalResult::from_indices(graph, visits, start.elapsed()))
}

/// Preorder depth-first traversal, equivalent to recursive descent trying
/// neighbors in adjacency order.
pub fn dfs(graph: &WeightedGraph, root: NodeId, direction: Direction) -> Result<TraversalResult, SearchError> {
    let start = Instant::now();
    let r = graph.index_of(root)?;
    let mut visited = vec![false; graph.node_count()];
    // (node, index of the next neighbor to try)
    let mut stack = vec![(r, 0usize)];
    visited[r] = true;
    let mut visits = vec![(r, StepKind::Root)];
    while let Some(top) = stack.last_mut() {
        let (u, next) = *top;
        let adj = graph.adj(u, direction);
        match adj[next..].iter().position(|&v| !visited[v]) {
            Some(offset) => {
                let v = adj[next + offset];
                top.1 = next + offset + 1;
                visited[v] = true;
                visits.push((v, StepKind::DepthStep));
                stack.push((v, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(TraversalResult::from_indices(graph, visits, start.elapsed()))
}

/// Every node with a path from `root` under `direction`, including `root`.
pub fn reachable_set(
    graph: &WeightedGraph,
    root: NodeId,
    direction: Direction,
) -> Result<BTreeSet<NodeId>, SearchError> {
    let r = graph.index_of(root)?;
    let mut seen = vec![false; graph.node_count()];
    seen[r] = true;
    let mut stack = vec![r];
    let mut out = BTreeSet::new();
    while let Some(u) = stack.pop() {
        out.insert(graph.id_at(u));
        for &v in graph.adj(u, direction) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn ids(v: &[u64]) -> Vec<NodeId> {
        v.iter().map(|&i| NodeId(i)).collect()
    }

    #[test]
    fn single_node_graph() {
        let g = parse_edge_list("7|0.4").unwrap();
        for result in [
            bfs(&g, NodeId(7), Direction::Directed).unwrap(),
            dfs(&g, NodeId(7), Direction::Directed).unwrap(),
        ] {
            assert_eq!(result.ids(), ids(&[7]));
            assert_eq!(result.step_kinds(), vec![StepKind::Root]);
        }
    }

    #[test]
    fn unknown_root() {
        let g = parse_edge_list("1|0.1 2|0.2").unwrap();
        assert!(matches!(
            bfs(&g, NodeId(3), Direction::Directed),
            Err(SearchError::Graph(GraphError::UnknownNode(NodeId(3))))
        ));
        assert!(dfs(&g, NodeId(3), Direction::Directed).is_err());
        assert!(reachable_set(&g, NodeId(3), Direction::Directed).is_err());
    }

    #[test]
    fn bfs_marks_on_enqueue() {
        // 1 -> 2, 1 -> 3, 2 -> 3, 3 -> 4, 2 -> 4
        let g = parse_edge_list("1|0 2|0 1|0 3|0 2|0 3|0 3|0 4|0 2|0 4|0").unwrap();
        assert_eq!(
            bfs(&g, NodeId(1), Direction::Directed).unwrap().ids(),
            ids(&[1, 2, 3, 4])
        );
        assert_eq!(
            dfs(&g, NodeId(1), Direction::Directed).unwrap().ids(),
            ids(&[1, 2, 3, 4])
        );
    }

    #[test]
    fn dfs_backtracks_in_adjacency_order() {
        let g = parse_edge_list("1|0 2|0 1|0 3|0 2|0 4|0 3|0 5|0").unwrap();
        assert_eq!(
            dfs(&g, NodeId(1), Direction::Directed).unwrap().ids(),
            ids(&[1, 2, 4, 3, 5])
        );
        assert_eq!(
            bfs(&g, NodeId(1), Direction::Directed).unwrap().ids(),
            ids(&[1, 2, 3, 4, 5])
        );
    }

    #[test]
    fn sink_reaches_only_itself_unless_undirected() {
        let g = parse_edge_list("1|0 2|0 2|0 3|0").unwrap();
        assert_eq!(
            reachable_set(&g, NodeId(3), Direction::Directed).unwrap(),
            BTreeSet::from([NodeId(3)])
        );
        assert_eq!(reachable_set(&g, NodeId(3), Direction::Undirected).unwrap().len(), 3);
    }
}
