//! Layer labels and total node-to-layer assignments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// One of the three layers, numerically encoded lower=1, middle=2, upper=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LayerLabel {
    Lower = 1,
    Middle = 2,
    Upper = 3,
}

impl LayerLabel {
    pub const ALL: [LayerLabel; 3] = [LayerLabel::Lower, LayerLabel::Middle, LayerLabel::Upper];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(LayerLabel::Lower),
            2 => Some(LayerLabel::Middle),
            3 => Some(LayerLabel::Upper),
            _ => None,
        }
    }

    /// Zero-based index, handy for 3-element arrays.
    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            LayerLabel::Lower => "lower",
            LayerLabel::Middle => "middle",
            LayerLabel::Upper => "upper",
        }
    }
}

impl fmt::Display for LayerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LayerLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "1" | "lower" | "bottom" => Ok(LayerLabel::Lower),
            "2" | "middle" => Ok(LayerLabel::Middle),
            "3" | "upper" | "top" => Ok(LayerLabel::Upper),
            _ => Err(Error::Schema(format!("invalid layer label `{t}`"))),
        }
    }
}

/// How an assignment was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Rule-driven assignment; carries a rendering of the threshold config.
    Rule { config: String },
    /// Classifier prediction; carries the model kind.
    Model { kind: String },
    /// Labels read from a file or generated as ground truth.
    External { source: String },
}

/// Total mapping from nodes to layers, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAssignment {
    entries: Vec<(NodeId, LayerLabel)>,
    index: HashMap<NodeId, usize>,
    provenance: Provenance,
}

impl LayerAssignment {
    pub fn new(provenance: Provenance) -> Self {
        Self { entries: Vec::new(), index: HashMap::new(), provenance }
    }

    /// Builds an assignment from (node, label) pairs; a repeated node is an
    /// error.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (NodeId, LayerLabel)>, provenance: Provenance) -> Result<Self> {
        let mut assignment = Self::new(provenance);
        for (node, label) in pairs {
            assignment.insert(node, label)?;
        }
        Ok(assignment)
    }

    pub fn insert(&mut self, node: NodeId, label: LayerLabel) -> Result<()> {
        if self.index.contains_key(&node) {
            return Err(Error::DuplicateNode(node.to_string()));
        }
        self.index.insert(node.clone(), self.entries.len());
        self.entries.push((node, label));
        Ok(())
    }

    pub fn get(&self, node: &NodeId) -> Option<LayerLabel> {
        self.index.get(node).map(|&i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, LayerLabel)> {
        self.entries.iter().map(|(n, l)| (n, *l))
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains(&self, node: &NodeId) -> bool {
        self.index.contains_key(node)
    }

    /// Number of nodes per layer, indexed by [`LayerLabel::index`].
    pub fn counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for (_, label) in &self.entries {
            counts[label.index()] += 1;
        }
        counts
    }

    /// Same labels, regardless of order and provenance.
    pub fn same_labels(&self, other: &LayerAssignment) -> bool {
        self.len() == other.len() && self.iter().all(|(n, l)| other.get(n) == Some(l))
    }
}
