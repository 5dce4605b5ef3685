use std::fmt::Write as _;

use super::WeightedGraph;

/// Graphviz digraph: nodes ascending by id labelled `id (weight)`, then edges
/// in construction order.
pub fn to_dot(graph: &WeightedGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for (id, weight) in graph.nodes() {
        let _ = writeln!(out, "  {id} [label=\"{id} ({weight})\"];");
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn single_edge() {
        let dot = to_dot(&parse_edge_list("1|0.3 2|0.4").unwrap());
        assert_eq!(
            dot,
            "digraph G {\n  1 [label=\"1 (0.3)\"];\n  2 [label=\"2 (0.4)\"];\n  1 -> 2;\n}\n"
        );
    }

    #[test]
    fn empty_graph_has_empty_body() {
        assert_eq!(to_dot(&WeightedGraph::empty()), "digraph G {\n}\n");
    }
}
