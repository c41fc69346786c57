//! Threshold rules that assign layers from centrality scores.
//!
//! Assignment runs in two passes. [`primary_label`] places every node in an
//! in-degree partition and an out-degree partition. [`refine_label`] keeps
//! the label where the two agree and resolves the rest with [`up_down`].
//!
//! Note on naming: `delta_il` is the *high* in-degree cut (in-degree above it
//! means lower layer) and `delta_iu` the low one. Likewise `delta_ou` is the
//! high out-degree cut (above it means upper layer) and `delta_ol` the low
//! one. The comparisons follow the original pseudocode even though the names
//! read backwards.

use std::fmt;
use std::str::FromStr;

use crate::centrality::{CentralityRecord, CentralityTable};
use crate::config::KeyValueConfig;
use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, NodeId};
use crate::layer::{LayerAssignment, LayerLabel, Provenance};
use crate::scalar::Scalar;

/// One row of the conflict decision table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefineRule {
    /// in = 0 and out = 0 → lower.
    Isolated,
    /// eigenvector ≥ δ_e → lower.
    Eigenvector,
    /// out = 0 and in > 0 → lower.
    Sink,
    /// in = 0 and out > 0 → upper.
    Source,
    /// betweenness > δ_b → middle.
    Betweenness,
    /// closeness > δ_c → upper.
    Closeness,
    /// in > δ_il → lower.
    InDegree,
    /// out > δ_ou → upper.
    OutDegree,
}

impl RefineRule {
    pub const DEFAULT_ORDER: [RefineRule; 8] = [
        RefineRule::Isolated,
        RefineRule::Eigenvector,
        RefineRule::Sink,
        RefineRule::Source,
        RefineRule::Betweenness,
        RefineRule::Closeness,
        RefineRule::InDegree,
        RefineRule::OutDegree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RefineRule::Isolated => "isolated",
            RefineRule::Eigenvector => "eigenvector",
            RefineRule::Sink => "sink",
            RefineRule::Source => "source",
            RefineRule::Betweenness => "betweenness",
            RefineRule::Closeness => "closeness",
            RefineRule::InDegree => "in_degree",
            RefineRule::OutDegree => "out_degree",
        }
    }

    /// The label this rule assigns if it matches `record`.
    pub fn apply<T: Scalar>(self, record: &CentralityRecord<T>, config: &LayerConfig<T>) -> Option<LayerLabel> {
        let (i, o) = (record.in_degree, record.out_degree);
        let (matched, label) = match self {
            RefineRule::Isolated => (i == 0 && o == 0, LayerLabel::Lower),
            RefineRule::Eigenvector => (record.eigenvector >= config.delta_e, LayerLabel::Lower),
            RefineRule::Sink => (o == 0 && i > 0, LayerLabel::Lower),
            RefineRule::Source => (i == 0 && o > 0, LayerLabel::Upper),
            RefineRule::Betweenness => (record.betweenness > config.delta_b, LayerLabel::Middle),
            RefineRule::Closeness => (record.closeness > config.delta_c, LayerLabel::Upper),
            RefineRule::InDegree => (T::from_count(i) > config.delta_il, LayerLabel::Lower),
            RefineRule::OutDegree => (T::from_count(o) > config.delta_ou, LayerLabel::Upper),
        };
        matched.then_some(label)
    }
}

impl fmt::Display for RefineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RefineRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.trim().to_ascii_lowercase().replace('-', "_");
        RefineRule::DEFAULT_ORDER
            .into_iter()
            .find(|r| r.as_str() == key)
            .ok_or_else(|| Error::Config(format!("unknown refine rule `{s}`")))
    }
}

/// Thresholds for both passes plus the conflict rule order.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerConfig<T> {
    pub delta_il: T,
    pub delta_iu: T,
    pub delta_ol: T,
    pub delta_ou: T,
    pub delta_b: T,
    pub delta_c: T,
    pub delta_e: T,
    /// Rules tried in order for conflicting partitions; when none matches the
    /// node goes to the middle layer.
    pub order: Vec<RefineRule>,
}

impl<T: Scalar> LayerConfig<T> {
    pub const KEYS: [&'static str; 8] =
        ["delta_il", "delta_iu", "delta_ol", "delta_ou", "delta_b", "delta_c", "delta_e", "rule_order"];

    #[allow(clippy::too_many_arguments)]
    pub fn new(il: f64, iu: f64, ol: f64, ou: f64, b: f64, c: f64, e: f64) -> Self {
        Self {
            delta_il: T::lit(il),
            delta_iu: T::lit(iu),
            delta_ol: T::lit(ol),
            delta_ou: T::lit(ou),
            delta_b: T::lit(b),
            delta_c: T::lit(c),
            delta_e: T::lit(e),
            order: RefineRule::DEFAULT_ORDER.to_vec(),
        }
    }

    /// Thresholds used for ConStore; also the default.
    pub fn constore() -> Self {
        Self::new(4.0, 1.0, 4.0, 1.0, 6.0, 0.8, 0.6)
    }

    pub fn health_watcher() -> Self {
        Self::new(10.0, 1.0, 2.0, 5.0, 9.0, 0.8, 0.5)
    }

    pub fn test_architecture() -> Self {
        Self::new(2.0, 1.0, 2.0, 2.0, 6.0, 0.6, 0.6)
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "constore" => Some(Self::constore()),
            "healthwatcher" => Some(Self::health_watcher()),
            "testarchitecture" | "testarch" => Some(Self::test_architecture()),
            _ => None,
        }
    }

    /// Rejects negative or non-finite thresholds, `delta_c` or `delta_e`
    /// above 1, `delta_iu > delta_il` and repeated rules.
    ///
    /// `delta_ol > delta_ou` is accepted: the out-degree comparisons still
    /// give every node exactly one partition, the middle band is just empty.
    /// The ConStore thresholds (`delta_ol = 4`, `delta_ou = 1`) are such a
    /// config.
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("delta_il", self.delta_il),
            ("delta_iu", self.delta_iu),
            ("delta_ol", self.delta_ol),
            ("delta_ou", self.delta_ou),
            ("delta_b", self.delta_b),
            ("delta_c", self.delta_c),
            ("delta_e", self.delta_e),
        ];
        for (name, v) in named {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::Config(format!("{name} must be a finite non-negative number, got {v}")));
            }
        }
        for (name, v) in [("delta_c", self.delta_c), ("delta_e", self.delta_e)] {
            if v > T::one() {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.delta_iu > self.delta_il {
            return Err(Error::Config(format!("delta_iu ({}) exceeds delta_il ({})", self.delta_iu, self.delta_il)));
        }
        for (i, r) in self.order.iter().enumerate() {
            if self.order[..i].contains(r) {
                return Err(Error::Config(format!("rule `{r}` listed twice in rule_order")));
            }
        }
        Ok(())
    }

    /// Applies the recognised keys of `kv` on top of `self` and validates
    /// the result.
    pub fn with_overrides(mut self, kv: &KeyValueConfig) -> Result<Self> {
        let slots: [(&str, &mut T); 7] = [
            ("delta_il", &mut self.delta_il),
            ("delta_iu", &mut self.delta_iu),
            ("delta_ol", &mut self.delta_ol),
            ("delta_ou", &mut self.delta_ou),
            ("delta_b", &mut self.delta_b),
            ("delta_c", &mut self.delta_c),
            ("delta_e", &mut self.delta_e),
        ];
        for (key, slot) in slots {
            if let Some(v) = kv.get::<T>(key)? {
                *slot = v;
            }
        }
        if let Some(order) = kv.get_list::<RefineRule>("rule_order")? {
            self.order = order;
        }
        self.validate()?;
        Ok(self)
    }

    /// `key=value` rendering, one per line, readable by [`KeyValueConfig`].
    /// Values use the shortest text that parses back to the same number.
    pub fn to_kv_text(&self) -> String {
        let order: Vec<&str> = self.order.iter().map(|r| r.as_str()).collect();
        format!(
            "delta_il={}\ndelta_iu={}\ndelta_ol={}\ndelta_ou={}\ndelta_b={}\ndelta_c={}\ndelta_e={}\nrule_order={}\n",
            self.delta_il,
            self.delta_iu,
            self.delta_ol,
            self.delta_ou,
            self.delta_b,
            self.delta_c,
            self.delta_e,
            order.join(",")
        )
    }

    fn summary(&self) -> String {
        self.to_kv_text().trim_end().replace('\n', " ")
    }
}

impl<T: Scalar> Default for LayerConfig<T> {
    fn default() -> Self {
        Self::constore()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPair {
    pub node: NodeId,
    pub in_partition: LayerLabel,
    pub out_partition: LayerLabel,
}

impl PartitionPair {
    pub fn agrees(&self) -> bool {
        self.in_partition == self.out_partition
    }
}

/// In/out partition of a single record.
pub fn partition_record<T: Scalar>(record: &CentralityRecord<T>, config: &LayerConfig<T>) -> PartitionPair {
    let node = record.node.clone();
    if record.in_degree == 0 && record.out_degree == 0 {
        return PartitionPair { node, in_partition: LayerLabel::Lower, out_partition: LayerLabel::Lower };
    }
    let i = T::from_count(record.in_degree);
    let o = T::from_count(record.out_degree);
    let in_partition = if i > config.delta_il {
        LayerLabel::Lower
    } else if i < config.delta_iu {
        LayerLabel::Upper
    } else {
        LayerLabel::Middle
    };
    let out_partition = if o > config.delta_ou {
        LayerLabel::Upper
    } else if o < config.delta_ol {
        LayerLabel::Lower
    } else {
        LayerLabel::Middle
    };
    PartitionPair { node, in_partition, out_partition }
}

pub fn primary_label<T: Scalar>(table: &CentralityTable<T>, config: &LayerConfig<T>) -> Result<Vec<PartitionPair>> {
    config.validate()?;
    Ok(table.records.iter().map(|r| partition_record(r, config)).collect())
}

/// Resolves a conflicting pair: the first matching rule in `config.order`
/// wins, otherwise middle.
pub fn up_down<T: Scalar>(pair: &PartitionPair, record: &CentralityRecord<T>, config: &LayerConfig<T>) -> LayerLabel {
    debug_assert_eq!(pair.node, record.node);
    config.order.iter().find_map(|rule| rule.apply(record, config)).unwrap_or(LayerLabel::Middle)
}

/// Final label of one record given its partitions.
pub fn refine_record<T: Scalar>(
    pair: &PartitionPair,
    record: &CentralityRecord<T>,
    config: &LayerConfig<T>,
) -> LayerLabel {
    if pair.agrees() {
        pair.in_partition
    } else {
        up_down(pair, record, config)
    }
}

/// `pairs` must be in the same order as `table.records`.
pub fn refine_label<T: Scalar>(
    pairs: &[PartitionPair],
    table: &CentralityTable<T>,
    config: &LayerConfig<T>,
) -> Result<LayerAssignment> {
    if pairs.len() != table.len() {
        return Err(Error::DomainMismatch(format!("{} partitions for {} records", pairs.len(), table.len())));
    }
    let mut out = LayerAssignment::new(Provenance::Rule { config: config.summary() });
    for (pair, record) in pairs.iter().zip(&table.records) {
        if pair.node != record.node {
            return Err(Error::DomainMismatch(format!("partition for `{}` paired with `{}`", pair.node, record.node)));
        }
        out.insert(pair.node.clone(), refine_record(pair, record, config))?;
    }
    Ok(out)
}

/// Both passes over a score table.
pub fn assign_table<T: Scalar>(table: &CentralityTable<T>, config: &LayerConfig<T>) -> Result<LayerAssignment> {
    let pairs = primary_label(table, config)?;
    refine_label(&pairs, table, config)
}

pub fn assign_rules<T: Scalar>(
    network: &DependencyNetwork,
    table: &CentralityTable<T>,
    config: &LayerConfig<T>,
) -> Result<LayerAssignment> {
    table.check_covers(network)?;
    assign_table(table, config)
}
