//! Layered architecture recovery from module dependency networks.
//!
//! The pipeline has two phases. Phase one turns source code (or an existing
//! graph file) into a [`DependencyNetwork`] and scores every element with
//! five centrality measures. Phase two assigns each element to the lower,
//! middle or upper layer, either with the threshold rules in [`rules`] or with
//! one of the classifiers in [`ml`]. The [`eval`] module scores assignments
//! against a reference labelling.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`). The aliases at the
//! crate root fix the scalar to `f64`, which is what the CLI uses.

// `!(x > 0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod centrality;
pub mod config;
pub mod error;
pub mod eval;
pub mod extractor;
pub mod graph;
pub mod layer;
pub mod ml;
pub mod rules;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{DependencyEdge, DependencyNetwork, EdgeKind, ElementKind, NodeId, ProgramElement};
pub use layer::{LayerAssignment, LayerLabel, Provenance};
pub use scalar::Scalar;

pub type CentralityRecord = centrality::CentralityRecord<f64>;
pub type CentralityTable = centrality::CentralityTable<f64>;
pub type ScoreSheet = centrality::ScoreSheet<f64>;
pub type EigenConfig = centrality::EigenConfig<f64>;
pub type LayerConfig = rules::LayerConfig<f64>;
pub type LabeledDataset = ml::LabeledDataset<f64>;
pub type TrainedModel = ml::TrainedModel<f64>;
pub type MetricsReport = eval::MetricsReport<f64>;
