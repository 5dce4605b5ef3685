//! Hybrid depth-breadth traversal driven by node-weight similarity.
//!
//! Each step looks at two local pools before falling back to the global
//! frontier:
//!
//! * the *depth* pool: unvisited neighbors of the current node;
//! * the *breadth* pool: unvisited siblings of the current node, i.e. the
//!   unvisited neighbors of the node the current one was reached from.
//!
//! The selection policy picks one node from the union of both pools. When the
//! pools are empty, or a threshold `tau` filters every member out, the policy
//! is applied to the whole frontier instead. The very first move from the
//! root, which has no predecessor to compare against, picks the
//! highest-weight neighbor unless [`RootStep::Policy`] is configured.

mod frontier;

pub use frontier::Frontier;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{weight_delta_key, Direction, NodeId, WeightedGraph};
use crate::search::{SearchError, StepKind, TraversalResult};

/// Lower clamp for the density-scaled threshold.
pub const MIN_SCALED_TAU: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionPolicy {
    /// Minimize `|w(candidate) - w(current)|`; ties to the smaller weight, then the smaller id.
    #[default]
    Similarity,
    /// Maximize `w(candidate)`; ties to the smaller id.
    MaxWeight,
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionPolicy::Similarity => "similarity",
            SelectionPolicy::MaxWeight => "max_weight",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauSchedule {
    #[default]
    Fixed,
    /// `tau * density`, clamped to `[MIN_SCALED_TAU, tau]`.
    DensityScaled,
}

impl fmt::Display for TauSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TauSchedule::Fixed => "fixed",
            TauSchedule::DensityScaled => "density_scaled",
        })
    }
}

/// Which local pools feed a step before the frontier is consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateScope {
    /// Unvisited neighbors of the current node plus its unvisited siblings.
    #[default]
    DepthBreadth,
    /// Unvisited neighbors of the current node only.
    NeighborsOnly,
}

/// Rule for the first move out of the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStep {
    /// Highest-weight neighbor, regardless of the selection policy.
    #[default]
    MaxWeight,
    /// Same policy as every other step.
    Policy,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HdbmsConfig {
    pub policy: SelectionPolicy,
    pub direction: Direction,
    /// Maximum weight distance for a local (depth or breadth) move. `None` disables the filter.
    pub tau: Option<f64>,
    pub tau_schedule: TauSchedule,
    pub scope: CandidateScope,
    pub root_step: RootStep,
}

impl HdbmsConfig {
    pub fn new(policy: SelectionPolicy, direction: Direction) -> Self {
        HdbmsConfig {
            policy,
            direction,
            ..Default::default()
        }
    }

    pub fn with_tau(mut self, tau: f64, schedule: TauSchedule) -> Self {
        self.tau = Some(tau);
        self.tau_schedule = schedule;
        self
    }

    pub fn summary(&self) -> String {
        let tau = match self.tau {
            Some(t) => format!("{t}"),
            None => "off".to_string(),
        };
        let mut s = format!(
            "policy={} direction={} tau={} schedule={}",
            self.policy, self.direction, tau, self.tau_schedule
        );
        if self.scope != CandidateScope::default() {
            s.push_str(" scope=neighbors_only");
        }
        if self.root_step != RootStep::default() {
            s.push_str(" root_step=policy");
        }
        s
    }
}

/// Threshold actually used by a traversal of `graph` under `config`.
pub fn effective_tau(config: &HdbmsConfig, graph: &WeightedGraph) -> Option<f64> {
    let tau = config.tau?;
    match config.tau_schedule {
        TauSchedule::Fixed => Some(tau),
        TauSchedule::DensityScaled => {
            let v = graph.node_count() as f64;
            let density = if graph.node_count() < 2 {
                0.0
            } else {
                (graph.edge_count() as f64 / (v * (v - 1.0))).min(1.0)
            };
            Some((tau * density).max(MIN_SCALED_TAU).min(tau))
        }
    }
}

/// Picks the policy's preferred node among `candidates`, relative to `current`.
/// The result does not depend on the order of `candidates`.
pub fn select_next(
    graph: &WeightedGraph,
    current: NodeId,
    candidates: &[NodeId],
    policy: SelectionPolicy,
) -> Result<NodeId, SearchError> {
    let cur = graph.index_of(current)?;
    let idx = candidates
        .iter()
        .map(|&c| graph.index_of(c))
        .collect::<Result<Vec<_>, _>>()?;
    let best = select_index(graph, cur, idx.iter().copied(), policy).ok_or(SearchError::EmptyCandidates)?;
    Ok(graph.id_at(best))
}

/// Position-stable argmin: the first of several identical entries wins.
fn select_index(
    graph: &WeightedGraph,
    current: usize,
    candidates: impl Iterator<Item = usize>,
    policy: SelectionPolicy,
) -> Option<usize> {
    let cur_key = graph.weight_at(current).key();
    let rank = |c: usize| {
        let k = graph.weight_at(c).key();
        match policy {
            SelectionPolicy::Similarity => ((k - cur_key).abs(), k, c),
            SelectionPolicy::MaxWeight => (0, -k, c),
        }
    };
    let mut best: Option<(usize, (i64, i64, usize))> = None;
    for c in candidates {
        let r = rank(c);
        if best.is_none_or(|(_, br)| r < br) {
            best = Some((c, r));
        }
    }
    best.map(|(c, _)| c)
}

/// One selection made by [`hdbms_traverse_observed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTrace {
    pub from: NodeId,
    pub chosen: NodeId,
    pub kind: StepKind,
    /// Frontier size before the chosen node was removed.
    pub frontier_len: usize,
    /// Size of the local pool after threshold filtering.
    pub local_candidates: usize,
}

pub fn hdbms_traverse(
    graph: &WeightedGraph,
    root: NodeId,
    config: &HdbmsConfig,
) -> Result<TraversalResult, SearchError> {
    hdbms_traverse_observed(graph, root, config, |_| {})
}

/// [`hdbms_traverse`] with a callback after every selection. The callback is
/// also the extension point for feedback-driven strategies.
pub fn hdbms_traverse_observed(
    graph: &WeightedGraph,
    root: NodeId,
    config: &HdbmsConfig,
    mut observe: impl FnMut(&StepTrace),
) -> Result<TraversalResult, SearchError> {
    let start = Instant::now();
    if let Some(t) = config.tau {
        if !t.is_finite() || t < 0.0 {
            return Err(SearchError::InvalidTau(t));
        }
    }
    let r = graph.index_of(root)?;
    let n = graph.node_count();
    let dir = config.direction;
    let tau_key = effective_tau(config, graph).map(weight_delta_key);
    let key = |i: usize| graph.weight_at(i).key();

    let mut visited = vec![false; n];
    let mut frontier = Frontier::with_capacity(n);
    // Node whose neighbor list is the sibling pool of a visited node.
    let mut anchor: Vec<Option<usize>> = vec![None; n];
    // First visited node that put a node into the frontier.
    let mut discoverer: Vec<Option<usize>> = vec![None; n];
    // (node, is a neighbor of current)
    let mut pool: Vec<(usize, bool)> = Vec::new();

    visited[r] = true;
    let mut visits = vec![(r, StepKind::Root)];
    let mut current = r;

    loop {
        for &v in graph.adj(current, dir) {
            if !visited[v] && frontier.insert(v, key(v)) {
                discoverer[v] = Some(current);
            }
        }

        pool.clear();
        pool.extend(
            graph
                .adj(current, dir)
                .iter()
                .filter(|&&v| !visited[v])
                .map(|&v| (v, true)),
        );
        if config.scope == CandidateScope::DepthBreadth {
            if let Some(p) = anchor[current] {
                pool.extend(graph.adj(p, dir).iter().filter(|&&v| !visited[v]).map(|&v| (v, false)));
            }
        }
        if let Some(tk) = tau_key {
            let ck = key(current);
            pool.retain(|&(v, _)| (key(v) - ck).abs() <= tk);
        }

        let policy = if visits.len() == 1 && config.root_step == RootStep::MaxWeight {
            SelectionPolicy::MaxWeight
        } else {
            config.policy
        };

        let (next, kind) = if !pool.is_empty() {
            let chosen = select_index(graph, current, pool.iter().map(|&(v, _)| v), policy).expect("pool is non-empty");
            let adjacent = pool.iter().any(|&(v, adj)| v == chosen && adj);
            if adjacent {
                anchor[chosen] = Some(current);
                (chosen, StepKind::DepthStep)
            } else {
                anchor[chosen] = anchor[current];
                (chosen, StepKind::BreadthStep)
            }
        } else {
            let pick = match policy {
                SelectionPolicy::Similarity => frontier.nearest(key(current)),
                SelectionPolicy::MaxWeight => frontier.max_weight(),
            };
            match pick {
                Some(chosen) => {
                    anchor[chosen] = discoverer[chosen];
                    (chosen, StepKind::FrontierJump)
                }
                None => break,
            }
        };

        observe(&StepTrace {
            from: graph.id_at(current),
            chosen: graph.id_at(next),
            kind,
            frontier_len: frontier.len(),
            local_candidates: pool.len(),
        });
        frontier.remove(next, key(next));
        visited[next] = true;
        visits.push((next, kind));
        current = next;
    }

    Ok(TraversalResult::from_indices(graph, visits, start.elapsed()))
}
