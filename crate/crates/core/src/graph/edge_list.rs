//! `u|w_u v|w_v` edge-list text format.
//!
//! One edge per pair of node tokens; several pairs may share a line. A line
//! holding a single node token declares a node without edges. `#` starts a
//! comment line. CRLF input is accepted; output always uses LF.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GraphBuilder, GraphError, NodeId, NodeWeight, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: token `{token}`: malformed, expected <id>|<weight>")]
    MalformedToken { line: usize, token: String },
    #[error("line {line}: token `{token}`: no partner to form an edge")]
    DanglingToken { line: usize, token: String },
    #[error("line {line}: token `{token}`: node {node} has weight {second}, previously {first}")]
    WeightConflict {
        line: usize,
        token: String,
        node: NodeId,
        first: f64,
        second: f64,
    },
    #[error("line {line}: token `{token}`: self-loop")]
    SelfLoop { line: usize, token: String },
    #[error("line {line}: token `{token}`: invalid weight")]
    InvalidWeight { line: usize, token: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::MalformedToken { line, .. }
            | ParseError::DanglingToken { line, .. }
            | ParseError::WeightConflict { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::InvalidWeight { line, .. } => *line,
        }
    }

    pub fn token(&self) -> &str {
        match self {
            ParseError::MalformedToken { token, .. }
            | ParseError::DanglingToken { token, .. }
            | ParseError::WeightConflict { token, .. }
            | ParseError::SelfLoop { token, .. }
            | ParseError::InvalidWeight { token, .. } => token,
        }
    }
}

/// Non-fatal findings from parsing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParseReport {
    pub duplicate_edges: usize,
    /// Nodes whose weight lies outside `[0, 1]`.
    pub out_of_range_weights: Vec<NodeId>,
}

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph, ParseError> {
    parse_edge_list_with_report(text).map(|(g, _)| g)
}

pub fn parse_edge_list_with_report(text: &str) -> Result<(WeightedGraph, ParseReport), ParseError> {
    let mut builder = GraphBuilder::new();
    let mut report = ParseReport::default();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() == 1 {
            declare(&mut builder, line, tokens[0])?;
            continue;
        }
        if !tokens.len().is_multiple_of(2) {
            return Err(ParseError::DanglingToken {
                line,
                token: tokens[tokens.len() - 1].to_string(),
            });
        }
        for pair in tokens.chunks(2) {
            let from = declare(&mut builder, line, pair[0])?;
            let to = declare(&mut builder, line, pair[1])?;
            match builder.add_edge(from, to) {
                Ok(_) => {}
                Err(GraphError::SelfLoop(_)) => {
                    return Err(ParseError::SelfLoop {
                        line,
                        token: format!("{} {}", pair[0], pair[1]),
                    })
                }
                Err(e) => unreachable!("endpoints were declared: {e}"),
            }
        }
    }
    report.duplicate_edges = builder.duplicate_edges();
    let graph = builder.build();
    report.out_of_range_weights = graph
        .nodes()
        .filter(|(_, w)| !w.in_unit_interval())
        .map(|(id, _)| id)
        .collect();
    Ok((graph, report))
}

fn declare(builder: &mut GraphBuilder, line: usize, token: &str) -> Result<NodeId, ParseError> {
    let malformed = || ParseError::MalformedToken {
        line,
        token: token.to_string(),
    };
    let (id_text, weight_text) = token.split_once('|').ok_or_else(malformed)?;
    if id_text.is_empty() || !id_text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let id: u64 = id_text.parse().map_err(|_| malformed())?;
    if id == 0 {
        return Err(malformed());
    }
    if weight_text.is_empty()
        || !weight_text
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
    {
        return Err(malformed());
    }
    let value: f64 = weight_text.parse().map_err(|_| malformed())?;
    let weight = NodeWeight::new(value).map_err(|_| ParseError::InvalidWeight {
        line,
        token: token.to_string(),
    })?;
    let node = NodeId(id);
    builder.add_node(node, weight).map_err(|e| match e {
        GraphError::WeightConflict { node, first, second } => ParseError::WeightConflict {
            line,
            token: token.to_string(),
            node,
            first,
            second,
        },
        other => unreachable!("add_node only reports conflicts: {other}"),
    })?;
    Ok(node)
}

/// One edge per line in construction order, then one line per node that has
/// no incident edge (ascending id).
pub fn serialize_edge_list(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        let wu = graph.weight(u).expect("edge endpoint");
        let wv = graph.weight(v).expect("edge endpoint");
        let _ = writeln!(out, "{u}|{wu} {v}|{wv}");
    }
    for i in 0..graph.node_count() {
        if !graph.has_incident_edge(i) {
            let _ = writeln!(out, "{}|{}", graph.id_at(i), graph.weight_at(i));
        }
    }
    out
}
