use std::fmt::Write as _;

use crate::search::{StepKind, TraversalResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Style {
    /// `1, 2, 5`
    #[default]
    Plain,
    /// `1 (0.3), 2 (0.4), 5 (0.3)`
    Weighted,
}

pub fn format_traversal(result: &TraversalResult, style: Style) -> String {
    result
        .order
        .iter()
        .map(|v| match style {
            Style::Plain => v.node.to_string(),
            Style::Weighted => format!("{} ({})", v.node, v.weight),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn step_kind_name(kind: StepKind) -> &'static str {
    match kind {
        StepKind::Root => "root",
        StepKind::DepthStep => "depth_step",
        StepKind::BreadthStep => "breadth_step",
        StepKind::FrontierJump => "frontier_jump",
    }
}

pub(crate) fn traversal_csv(result: &TraversalResult) -> String {
    let mut out = String::from("position,node,weight,step_kind\n");
    for (i, v) in result.order.iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{}", i + 1, v.node, v.weight, step_kind_name(v.kind));
    }
    out
}

pub(crate) fn seconds(s: f64) -> String {
    format!("{s:.6}")
}
