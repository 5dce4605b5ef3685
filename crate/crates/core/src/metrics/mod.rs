//! Traversal quality metrics and the engine comparison table.
//!
//! * completeness: visited / reachable.
//! * MACD: mean absolute difference between consecutive visit weights (lower is smoother).
//! * DCG: `sum_i w(v_i) / log2(i + 1)` over 1-based positions (higher front-loads heavy nodes).

mod bench;

pub use bench::{bench, BenchResult};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Direction, NodeId, WeightedGraph};
use crate::hdbms::{hdbms_traverse, HdbmsConfig};
use crate::search::{bfs, dfs, reachable_set, SearchError, TraversalResult};

/// A whole-graph traversal engine and its configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Engine {
    Bfs(Direction),
    Dfs(Direction),
    Hdbms(HdbmsConfig),
}

impl Engine {
    pub fn run(&self, graph: &WeightedGraph, root: NodeId) -> Result<TraversalResult, SearchError> {
        match self {
            Engine::Bfs(d) => bfs(graph, root, *d),
            Engine::Dfs(d) => dfs(graph, root, *d),
            Engine::Hdbms(cfg) => hdbms_traverse(graph, root, cfg),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Engine::Bfs(_) => "bfs",
            Engine::Dfs(_) => "dfs",
            Engine::Hdbms(_) => "hdbms",
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Engine::Bfs(d) | Engine::Dfs(d) => *d,
            Engine::Hdbms(cfg) => cfg.direction,
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Engine::Bfs(d) | Engine::Dfs(d) => format!("direction={d}"),
            Engine::Hdbms(cfg) => cfg.summary(),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.summary())
    }
}

pub fn completeness(
    result: &TraversalResult,
    graph: &WeightedGraph,
    root: NodeId,
    direction: Direction,
) -> Result<f64, SearchError> {
    let reachable = reachable_set(graph, root, direction)?;
    let visited: BTreeSet<NodeId> = result.order.iter().map(|v| v.node).collect();
    Ok(visited.len() as f64 / reachable.len() as f64)
}

pub fn order_quality_macd(result: &TraversalResult) -> f64 {
    let w = result.weights();
    if w.len() < 2 {
        return 0.0;
    }
    let total: f64 = w.windows(2).map(|p| (p[1] - p[0]).abs()).sum();
    total / (w.len() - 1) as f64
}

pub fn optimality_dcg(result: &TraversalResult) -> f64 {
    dcg(&result.weights())
}

pub fn dcg(weights: &[f64]) -> f64 {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| w / ((i + 2) as f64).log2())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub algorithm: String,
    pub config_summary: String,
    pub completeness: f64,
    pub order_quality_macd: f64,
    pub optimality_dcg: f64,
    pub elapsed_seconds: f64,
    pub order: Vec<NodeId>,
}

impl MetricsReport {
    pub fn from_result(
        engine: &Engine,
        result: &TraversalResult,
        graph: &WeightedGraph,
        root: NodeId,
    ) -> Result<Self, SearchError> {
        Ok(MetricsReport {
            algorithm: engine.label().to_string(),
            config_summary: engine.summary(),
            completeness: completeness(result, graph, root, engine.direction())?,
            order_quality_macd: order_quality_macd(result),
            optimality_dcg: optimality_dcg(result),
            elapsed_seconds: result.elapsed.as_secs_f64(),
            order: result.ids(),
        })
    }
}

/// One report per engine, in the order given.
pub fn compare_report(
    graph: &WeightedGraph,
    root: NodeId,
    engines: &[Engine],
) -> Result<Vec<MetricsReport>, SearchError> {
    engines
        .iter()
        .map(|engine| {
            let result = engine.run(graph, root)?;
            MetricsReport::from_result(engine, &result, graph, root)
        })
        .collect()
}

pub const CSV_HEADER: [&str; 7] = [
    "algorithm",
    "config_summary",
    "completeness",
    "order_quality_macd",
    "optimality_dcg",
    "elapsed_seconds",
    "order",
];

/// CSV with six-decimal numbers; `order` is a space-separated id list.
/// With `with_timing == false` the elapsed column is left empty so the output
/// depends only on the inputs.
pub fn reports_to_csv(reports: &[MetricsReport], with_timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        let order = r.order.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(" ");
        let elapsed = if with_timing {
            format!("{:.6}", r.elapsed_seconds)
        } else {
            String::new()
        };
        w.write_record([
            r.algorithm.clone(),
            r.config_summary.clone(),
            format!("{:.6}", r.completeness),
            format!("{:.6}", r.order_quality_macd),
            format!("{:.6}", r.optimality_dcg),
            elapsed,
            order,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// JSON array mirroring the CSV fields. `elapsed_seconds` is `null` without timing.
pub fn reports_to_json(reports: &[MetricsReport], with_timing: bool) -> String {
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("plain data");
            if !with_timing {
                v["elapsed_seconds"] = serde_json::Value::Null;
            }
            v
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, NodeWeight};
    use crate::search::{StepKind, Visit};
    use std::time::Duration;

    fn result_with(weights: &[f64]) -> TraversalResult {
        TraversalResult {
            order: weights
                .iter()
                .enumerate()
                .map(|(i, &w)| Visit {
                    node: NodeId(i as u64 + 1),
                    weight: NodeWeight::new(w).unwrap(),
                    kind: if i == 0 { StepKind::Root } else { StepKind::DepthStep },
                })
                .collect(),
            elapsed: Duration::ZERO,
        }
    }

    #[test]
    fn macd_trivial_cases() {
        assert_eq!(order_quality_macd(&result_with(&[0.3])), 0.0);
        assert_eq!(order_quality_macd(&result_with(&[0.4, 0.4, 0.4])), 0.0);
        assert!((order_quality_macd(&result_with(&[0.1, 0.3, 0.2])) - 0.15).abs() < 1e-12);
    }

    #[test]
    fn dcg_trivial_cases() {
        assert!((optimality_dcg(&result_with(&[0.3])) - 0.3).abs() < 1e-15);
        assert_eq!(optimality_dcg(&result_with(&[0.0, 0.0])), 0.0);
        let expected = 1.0 + 0.5 / 3f64.log2();
        assert!((optimality_dcg(&result_with(&[1.0, 0.5])) - expected).abs() < 1e-15);
    }

    #[test]
    fn completeness_is_one_for_single_node() {
        let g = parse_edge_list("1|0.5").unwrap();
        let r = bfs(&g, NodeId(1), Direction::Directed).unwrap();
        assert_eq!(completeness(&r, &g, NodeId(1), Direction::Directed).unwrap(), 1.0);
    }

    #[test]
    fn partial_visit_lowers_completeness() {
        let g = parse_edge_list("1|0.5 2|0.5").unwrap();
        let r = result_with(&[0.5]);
        assert_eq!(completeness(&r, &g, NodeId(1), Direction::Directed).unwrap(), 0.5);
    }

    #[test]
    fn compare_on_empty_graph_reports_unknown_root() {
        let g = WeightedGraph::empty();
        let err = compare_report(&g, NodeId(1), &[Engine::Bfs(Direction::Directed)]).unwrap_err();
        assert!(matches!(
            err,
            SearchError::Graph(crate::graph::GraphError::UnknownNode(NodeId(1)))
        ));
    }

    #[test]
    fn csv_without_timing_leaves_elapsed_empty() {
        let g = parse_edge_list("1|0.5 2|0.25").unwrap();
        let rows = compare_report(&g, NodeId(1), &[Engine::Bfs(Direction::Directed)]).unwrap();
        let csv = reports_to_csv(&rows, false);
        assert_eq!(
            csv,
            "algorithm,config_summary,completeness,order_quality_macd,optimality_dcg,elapsed_seconds,order\n\
             bfs,direction=directed,1.000000,0.250000,0.657732,,1 2\n"
        );
        let json: serde_json::Value = serde_json::from_str(&reports_to_json(&rows, false)).unwrap();
        assert!(json[0]["elapsed_seconds"].is_null());
        assert_eq!(json[0]["order"], serde_json::json!([1, 2]));
    }
}
