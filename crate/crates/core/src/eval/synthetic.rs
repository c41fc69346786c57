use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, EdgeKind, ElementKind, ProgramElement};
use crate::layer::{LayerAssignment, LayerLabel, Provenance};
use crate::rules::LayerConfig;
use crate::scalar::Scalar;

/// A planted three-layer system.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    /// Node counts for lower, middle and upper, in that order.
    pub nodes_per_layer: [usize; 3],
    /// Probability of each edge from a node to each node one layer down.
    pub downward: f64,
    /// Probability of each edge from a node to each node one layer up.
    pub violation: f64,
    /// Extra lower-layer nodes that every regular node depends on.
    pub crosscut: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(lower: usize, middle: usize, upper: usize) -> Self {
        Self { nodes_per_layer: [lower, middle, upper], downward: 1.0, violation: 0.0, crosscut: 0, seed: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("downward", self.downward), ("violation", self.violation)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Spec(format!("{name} probability {p} is outside [0, 1]")));
            }
        }
        if self.nodes_per_layer.iter().sum::<usize>() + self.crosscut == 0 {
            return Err(Error::Spec("no nodes requested".into()));
        }
        Ok(())
    }
}

const PREFIX: [&str; 3] = ["L", "M", "U"];

/// Builds the network and its ground-truth labels. Nodes are named `U0..`,
/// `M0..`, `L0..` and `X0..` for crosscutting nodes, added in that order.
/// Every candidate edge consumes exactly one random draw, so the same seed
/// gives the same network whatever the probabilities.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<(DependencyNetwork, LayerAssignment)> {
    spec.validate()?;
    let mut g = DependencyNetwork::new();
    let mut truth = LayerAssignment::new(Provenance::External { source: format!("synthetic seed={}", spec.seed) });
    let mut layers: [Vec<usize>; 3] = Default::default();
    for label in [LayerLabel::Upper, LayerLabel::Middle, LayerLabel::Lower] {
        for i in 0..spec.nodes_per_layer[label.index()] {
            let element = ProgramElement::named(&format!("{}{i}", PREFIX[label.index()]), ElementKind::Class)?;
            truth.insert(element.id.clone(), label)?;
            layers[label.index()].push(g.add_node(element)?);
        }
    }
    let mut crosscut = Vec::with_capacity(spec.crosscut);
    for i in 0..spec.crosscut {
        let element = ProgramElement::named(&format!("X{i}"), ElementKind::Class)?;
        truth.insert(element.id.clone(), LayerLabel::Lower)?;
        crosscut.push(g.add_node(element)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for upper in 1..3 {
        for &s in &layers[upper] {
            for &t in &layers[upper - 1] {
                if rng.gen::<f64>() < spec.downward {
                    g.add_edge_by_index(s, t, EdgeKind::Imports)?;
                }
            }
        }
    }
    for lower in 0..2 {
        for &s in &layers[lower] {
            for &t in &layers[lower + 1] {
                if rng.gen::<f64>() < spec.violation {
                    g.add_edge_by_index(s, t, EdgeKind::Imports)?;
                }
            }
        }
    }
    for &x in &crosscut {
        for layer in layers.iter().rev() {
            for &s in layer {
                g.add_edge_by_index(s, x, EdgeKind::Imports)?;
            }
        }
    }
    Ok((g, truth))
}

/// Thresholds under which rule assignment recovers a fully connected
/// (`downward = 1`, no violations, no crosscut) system exactly.
///
/// Without noise, upper nodes have in-degree 0 and out-degree `M`, middle
/// nodes in-degree `U`, out-degree `L` and betweenness `U*L/M`, and lower
/// nodes are sinks with in-degree `M` and the top eigenvector score. Each
/// threshold sits halfway between the profiles it separates, so a few
/// upward edges do not push a node across it. Middle and lower in-degrees
/// (and upper and middle out-degrees) cannot be told apart, so `delta_il`
/// and `delta_ou` sit at half again the larger value and both layers stay in
/// the middle band; the refinement rules split them.
pub fn matched_config<T: Scalar>(spec: &SyntheticSpec) -> LayerConfig<T> {
    let [l, m, u] = spec.nodes_per_layer.map(|c| c as f64);
    let others = (l + m + u - 1.0).max(1.0);
    let between = if m > 0.0 { u * l / (2.0 * m) } else { 0.0 };
    // Closeness of an upper node (reaches M at distance 1, L at distance 2)
    // and of a middle node (reaches L at distance 1).
    let upper_close = if m + l > 0.0 { (m + l) / others * (m + l) / (m + 2.0 * l) } else { 0.0 };
    let middle_close = if l > 0.0 { l / others } else { 0.0 };
    LayerConfig::new(
        1.5 * u.max(m),
        u / 2.0,
        l / 2.0,
        1.5 * m.max(l),
        between,
        ((upper_close + middle_close) / 2.0).min(1.0),
        0.5,
    )
}
