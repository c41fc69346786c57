//! Directed dependency network and its text formats.
//!
//! Nodes are program elements (classes, interfaces, packages); edges are
//! structural dependencies between them. The network is a simple digraph:
//! self-dependencies are rejected and repeated edges between the same ordered
//! pair collapse into one, keeping the kind of the first edge seen.

mod dot;
mod edgelist;
mod gml;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use dot::emit_dot;
pub use edgelist::parse_edge_list;
pub use gml::{emit_gml, parse_gml};

/// Stable, non-empty node identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if value.is_empty() {
            return Err(Error::Schema("node id must not be empty".into()));
        }
        Ok(NodeId(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Class,
    Interface,
    Package,
    Layer,
    Unknown,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Class => "class",
            ElementKind::Interface => "interface",
            ElementKind::Package => "package",
            ElementKind::Layer => "layer",
            ElementKind::Unknown => "unknown",
        }
    }
}

impl FromStr for ElementKind {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "class" => ElementKind::Class,
            "interface" => ElementKind::Interface,
            "package" => ElementKind::Package,
            "layer" => ElementKind::Layer,
            _ => ElementKind::Unknown,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Extends,
    Implements,
    Imports,
    Unknown,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Extends => "extends",
            EdgeKind::Implements => "implements",
            EdgeKind::Imports => "imports",
            EdgeKind::Unknown => "unknown",
        }
    }
}

impl FromStr for EdgeKind {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "extends" => EdgeKind::Extends,
            "implements" => EdgeKind::Implements,
            "imports" | "import" => EdgeKind::Imports,
            _ => EdgeKind::Unknown,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramElement {
    pub id: NodeId,
    pub name: String,
    pub kind: ElementKind,
}

impl ProgramElement {
    pub fn new(id: NodeId, name: impl Into<String>, kind: ElementKind) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Schema(format!("element `{id}` has an empty name")));
        }
        Ok(Self { id, name, kind })
    }

    /// Element whose name equals its id.
    pub fn named(name: &str, kind: ElementKind) -> Result<Self> {
        Self::new(NodeId::new(name)?, name, kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyEdge {
    pub source: NodeId,
    pub target: NodeId,
    pub kind: EdgeKind,
}

impl DependencyEdge {
    pub fn new(source: NodeId, target: NodeId, kind: EdgeKind) -> Self {
        Self { source, target, kind }
    }
}

/// Edge between two node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexedEdge {
    pub source: usize,
    pub target: usize,
    pub kind: EdgeKind,
}

/// Simple directed graph of program elements.
///
/// Nodes are addressed by dense indices in insertion order; `out` and `inc`
/// hold neighbor indices in edge insertion order.
#[derive(Debug, Clone, Default)]
pub struct DependencyNetwork {
    elements: Vec<ProgramElement>,
    index: HashMap<NodeId, usize>,
    edges: Vec<IndexedEdge>,
    edge_set: HashSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl DependencyNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, element: ProgramElement) -> Result<usize> {
        if self.index.contains_key(&element.id) {
            return Err(Error::DuplicateNode(element.id.to_string()));
        }
        let idx = self.elements.len();
        self.index.insert(element.id.clone(), idx);
        self.elements.push(element);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        Ok(idx)
    }

    /// Adds an edge; returns `false` when the ordered pair was already
    /// present (the existing edge and its kind are kept).
    pub fn add_edge(&mut self, edge: DependencyEdge) -> Result<bool> {
        let source = self.require(&edge.source)?;
        let target = self.require(&edge.target)?;
        self.add_edge_by_index(source, target, edge.kind)
    }

    pub fn add_edge_by_index(&mut self, source: usize, target: usize, kind: EdgeKind) -> Result<bool> {
        let n = self.elements.len();
        for idx in [source, target] {
            if idx >= n {
                return Err(Error::UnknownNode(format!("#{idx}")));
            }
        }
        if source == target {
            return Err(Error::SelfDependency(self.elements[source].id.to_string()));
        }
        if !self.edge_set.insert((source, target)) {
            return Ok(false);
        }
        self.edges.push(IndexedEdge { source, target, kind });
        self.out[source].push(target);
        self.inc[target].push(source);
        Ok(true)
    }

    fn require(&self, id: &NodeId) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn node_count(&self) -> usize {
        self.elements.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ProgramElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &ProgramElement {
        &self.elements[idx]
    }

    pub fn get(&self, id: &NodeId) -> Option<&ProgramElement> {
        self.index.get(id).map(|&i| &self.elements[i])
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn indexed_edges(&self) -> &[IndexedEdge] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = DependencyEdge> + '_ {
        self.edges.iter().map(|e| {
            DependencyEdge::new(self.elements[e.source].id.clone(), self.elements[e.target].id.clone(), e.kind)
        })
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.edge_set.contains(&(source, target))
    }

    pub fn out_neighbors(&self, idx: usize) -> &[usize] {
        &self.out[idx]
    }

    pub fn in_neighbors(&self, idx: usize) -> &[usize] {
        &self.inc[idx]
    }

    pub fn out_degree(&self, idx: usize) -> usize {
        self.out[idx].len()
    }

    pub fn in_degree(&self, idx: usize) -> usize {
        self.inc[idx].len()
    }

    /// Copy of the network with nodes reordered: new node `i` is old node
    /// `order[i]`. Edges keep their relative order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut position = vec![usize::MAX; self.node_count()];
        let mut out = Self::new();
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
            out.add_node(self.elements[old].clone())?;
        }
        if out.node_count() != self.node_count() {
            return Err(Error::Schema("permutation does not cover every node".into()));
        }
        for e in &self.edges {
            out.add_edge_by_index(position[e.source], position[e.target], e.kind)?;
        }
        Ok(out)
    }
}
