//! Per-node centrality scores: degree, closeness, betweenness and an
//! offset-damped eigenvector score.
//!
//! All measures follow edge direction. Pairs of nodes with no directed path
//! between them are skipped by closeness and betweenness.

mod betweenness;
mod closeness;
mod csv;
mod degree;
mod eigen;

use crate::config::KeyValueConfig;
use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, NodeId};
use crate::scalar::Scalar;

pub use betweenness::{betweenness_centrality, BetweennessScores};
pub use closeness::{closeness_centrality, ClosenessVariant};
pub use csv::{emit_csv, parse_csv, parse_labels, ScoreSheet, CSV_HEADER};
pub use degree::{degree_centrality, DegreeScores};
pub use eigen::{eigenvector_centrality, EigenConfig, EigenMethod};

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityRecord<T> {
    pub node: NodeId,
    pub name: String,
    pub in_degree: usize,
    pub out_degree: usize,
    pub degree: usize,
    pub norm_degree: T,
    pub closeness: T,
    pub betweenness: T,
    pub norm_betweenness: T,
    pub eigenvector: T,
}

impl<T: Scalar> CentralityRecord<T> {
    /// The five classifier features in table order: in-degree, out-degree,
    /// closeness, betweenness, eigenvector.
    pub fn features(&self) -> [T; 5] {
        [
            T::from_count(self.in_degree),
            T::from_count(self.out_degree),
            self.closeness,
            self.betweenness,
            self.eigenvector,
        ]
    }
}

/// One record per network node, in network order.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityTable<T> {
    pub records: Vec<CentralityRecord<T>>,
}

impl<T: Scalar> CentralityTable<T> {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, node: &NodeId) -> Option<&CentralityRecord<T>> {
        self.records.iter().find(|r| &r.node == node)
    }

    /// Checks that the table has exactly one record per network node.
    pub fn check_covers(&self, network: &DependencyNetwork) -> Result<()> {
        if self.len() != network.node_count() {
            return Err(Error::DomainMismatch(format!(
                "table has {} records, network has {} nodes",
                self.len(),
                network.node_count()
            )));
        }
        let mut seen = vec![false; network.node_count()];
        for r in &self.records {
            let idx = network
                .index_of(&r.node)
                .ok_or_else(|| Error::DomainMismatch(format!("`{}` is not a network node", r.node)))?;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::DuplicateNode(r.node.to_string()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityConfig<T> {
    pub eigen: EigenConfig<T>,
    pub closeness: ClosenessVariant,
}

impl<T: Scalar> CentralityConfig<T> {
    pub const KEYS: [&'static str; 5] =
        ["eigen_offset", "eigen_max_iterations", "eigen_tolerance", "eigen_method", "closeness"];

    pub fn with_overrides(mut self, kv: &KeyValueConfig) -> Result<Self> {
        if let Some(v) = kv.get("eigen_offset")? {
            self.eigen.damping_offset = v;
        }
        if let Some(v) = kv.get("eigen_max_iterations")? {
            self.eigen.max_iterations = v;
        }
        if let Some(v) = kv.get("eigen_tolerance")? {
            self.eigen.tolerance = v;
        }
        if let Some(v) = kv.get("eigen_method")? {
            self.eigen.method = v;
        }
        if let Some(v) = kv.get("closeness")? {
            self.closeness = v;
        }
        self.eigen.validate()?;
        Ok(self)
    }
}

impl<T: Scalar> Default for CentralityConfig<T> {
    fn default() -> Self {
        Self { eigen: EigenConfig::default(), closeness: ClosenessVariant::Reachability }
    }
}

/// Computes every measure for every node.
pub fn compute_table<T: Scalar>(
    network: &DependencyNetwork,
    config: &CentralityConfig<T>,
) -> Result<CentralityTable<T>> {
    if network.is_empty() {
        return Err(Error::Schema("cannot score an empty network".into()));
    }
    let degrees = degree_centrality::<T>(network);
    let closeness = closeness_centrality::<T>(network, config.closeness);
    let betweenness = betweenness_centrality::<T>(network);
    let eigen = eigenvector_centrality(network, &config.eigen)?;
    let records = network
        .elements()
        .iter()
        .enumerate()
        .map(|(i, element)| CentralityRecord {
            node: element.id.clone(),
            name: element.name.clone(),
            in_degree: degrees[i].in_degree,
            out_degree: degrees[i].out_degree,
            degree: degrees[i].degree,
            norm_degree: degrees[i].norm_degree,
            closeness: closeness[i],
            betweenness: betweenness[i].betweenness,
            norm_betweenness: betweenness[i].norm_betweenness,
            eigenvector: eigen[i],
        })
        .collect();
    Ok(CentralityTable { records })
}
