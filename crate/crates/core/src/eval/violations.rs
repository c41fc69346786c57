use crate::error::{Error, Result};
use crate::graph::{DependencyEdge, DependencyNetwork};
use crate::layer::LayerAssignment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    /// Offending edges in network edge order.
    pub edges: Vec<DependencyEdge>,
}

impl ViolationReport {
    pub fn count(&self) -> usize {
        self.edges.len()
    }
}

/// Edges from a lower layer to a higher one. With `strict`, downward edges
/// that skip a layer (upper to lower) are reported too.
pub fn violation_report(
    network: &DependencyNetwork,
    assignment: &LayerAssignment,
    strict: bool,
) -> Result<ViolationReport> {
    let layer = |idx: usize| {
        let id = &network.element(idx).id;
        assignment.get(id).ok_or_else(|| Error::IncompleteAssignment(id.to_string()))
    };
    for idx in 0..network.node_count() {
        layer(idx)?;
    }
    let mut edges = Vec::new();
    for e in network.indexed_edges() {
        let (s, t) = (layer(e.source)?.code(), layer(e.target)?.code());
        if s < t || (strict && s > t + 1) {
            edges.push(DependencyEdge::new(
                network.element(e.source).id.clone(),
                network.element(e.target).id.clone(),
                e.kind,
            ));
        }
    }
    Ok(ViolationReport { edges })
}
