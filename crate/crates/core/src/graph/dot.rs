use std::fmt::Write;

use super::DependencyNetwork;
use crate::error::{Error, Result};
use crate::layer::{LayerAssignment, LayerLabel};

/// Renders the network as a Graphviz digraph. With an assignment, nodes are
/// grouped into one cluster per layer, upper first.
pub fn emit_dot(network: &DependencyNetwork, assignment: Option<&LayerAssignment>) -> Result<String> {
    let mut out = String::from("digraph dependencies {\n  rankdir=TB;\n  node [shape=box];\n");
    match assignment {
        None => {
            for element in network.elements() {
                let _ = writeln!(out, "  {} [label={}];", quote(element.id.as_str()), quote(&element.name));
            }
        }
        Some(assignment) => {
            let mut layers: [Vec<usize>; 3] = Default::default();
            for (idx, element) in network.elements().iter().enumerate() {
                let label =
                    assignment.get(&element.id).ok_or_else(|| Error::IncompleteAssignment(element.id.to_string()))?;
                layers[label.index()].push(idx);
            }
            for label in LayerLabel::ALL.iter().rev() {
                let _ = writeln!(out, "  subgraph cluster_{} {{", label.name());
                let _ = writeln!(out, "    label=\"{} ({})\";", label.name(), label.code());
                out.push_str("    rank=same;\n");
                for &idx in &layers[label.index()] {
                    let element = network.element(idx);
                    let _ = writeln!(out, "    {} [label={}];", quote(element.id.as_str()), quote(&element.name));
                }
                out.push_str("  }\n");
            }
        }
    }
    for edge in network.indexed_edges() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(network.element(edge.source).id.as_str()),
            quote(network.element(edge.target).id.as_str())
        );
    }
    out.push_str("}\n");
    Ok(out)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
