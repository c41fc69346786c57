//! Layer assignment by supervised classification.
//!
//! Features are the five centrality columns: in-degree, out-degree,
//! closeness, betweenness and eigenvector. KNN and SVM see min-max scaled
//! features; the decision tree works on raw values.

mod format;
mod knn;
mod scaler;
mod svm;
mod tree;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::centrality::{CentralityTable, ScoreSheet};
use crate::config::KeyValueConfig;
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::layer::{LayerAssignment, LayerLabel, Provenance};
use crate::scalar::Scalar;

pub use format::{load_model, save_model, MODEL_FORMAT_VERSION};
pub use knn::KnnModel;
pub use scaler::ScalerParams;
pub use svm::{SvmModel, SvmParams};
pub use tree::{TreeModel, TreeNode};

pub const FEATURES: usize = 5;
pub type Features<T> = [T; FEATURES];

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRow<T> {
    pub node: NodeId,
    pub name: String,
    pub features: Features<T>,
    pub layer: LayerLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    pub rows: Vec<LabeledRow<T>>,
}

impl<T: Scalar> LabeledDataset<T> {
    /// Every row of the sheet must carry a layer.
    pub fn from_sheet(sheet: &ScoreSheet<T>) -> Result<Self> {
        let rows = sheet
            .table
            .records
            .iter()
            .zip(&sheet.layers)
            .map(|(r, l)| {
                let layer = l.ok_or_else(|| Error::Schema(format!("row `{}` has no layer label", r.node)))?;
                Ok(LabeledRow { node: r.node.clone(), name: r.name.clone(), features: r.features(), layer })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    /// Labels every table record from `labels`, which must cover it.
    pub fn from_table(table: &CentralityTable<T>, labels: &LayerAssignment) -> Result<Self> {
        let rows = table
            .records
            .iter()
            .map(|r| {
                let layer = labels.get(&r.node).ok_or_else(|| Error::IncompleteAssignment(r.node.to_string()))?;
                Ok(LabeledRow { node: r.node.clone(), name: r.name.clone(), features: r.features(), layer })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn class_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for r in &self.rows {
            c[r.layer.index()] += 1;
        }
        c
    }

    fn check(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Train("empty training set".into()));
        }
        if let Some(r) = self.rows.iter().find(|r| r.features.iter().any(|f| !f.is_finite())) {
            return Err(Error::Train(format!("non-finite feature in row `{}`", r.node)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Knn,
    DecisionTree,
    LinearSvm,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Knn => "knn",
            ModelKind::DecisionTree => "decision_tree",
            ModelKind::LinearSvm => "linear_svm",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "knn" => Ok(ModelKind::Knn),
            "decision_tree" | "tree" | "dt" => Ok(ModelKind::DecisionTree),
            "linear_svm" | "svm" => Ok(ModelKind::LinearSvm),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Hyperparameters for all three trainers; each uses its own subset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig<T> {
    pub kind: ModelKind,
    pub k: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    pub epochs: usize,
    pub learning_rate: T,
    pub regularization: T,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20;

impl<T: Scalar> TrainConfig<T> {
    pub const KEYS: [&'static str; 8] =
        ["algorithm", "k", "max_depth", "min_leaf", "epochs", "learning_rate", "regularization", "seed"];

    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            k: 5,
            max_depth: 5,
            min_leaf: 1,
            epochs: 200,
            learning_rate: T::lit(0.01),
            regularization: T::lit(0.01),
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_overrides(mut self, kv: &KeyValueConfig) -> Result<Self> {
        if let Some(kind) = kv.get::<ModelKind>("algorithm")? {
            self.kind = kind;
        }
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = kv.get(stringify!($field))? {
                    self.$field = v;
                }
            )*};
        }
        take!(k, max_depth, min_leaf, epochs, learning_rate, regularization, seed);
        Ok(self)
    }

    fn svm_params(&self) -> SvmParams<T> {
        SvmParams {
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            regularization: self.regularization,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams<T> {
    Knn(KnnModel<T>),
    Tree(TreeModel<T>),
    Svm(SvmModel<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel<T> {
    pub scaler: ScalerParams<T>,
    pub params: ModelParams<T>,
}

impl<T: Scalar> TrainedModel<T> {
    pub fn kind(&self) -> ModelKind {
        match self.params {
            ModelParams::Knn(_) => ModelKind::Knn,
            ModelParams::Tree(_) => ModelKind::DecisionTree,
            ModelParams::Svm(_) => ModelKind::LinearSvm,
        }
    }

    /// Predicts from raw (unscaled) features.
    pub fn predict_features(&self, raw: &Features<T>) -> LayerLabel {
        match &self.params {
            ModelParams::Knn(m) => m.predict(&self.scaler.apply(raw)),
            ModelParams::Tree(m) => m.predict(raw),
            ModelParams::Svm(m) => m.predict(&self.scaler.apply(raw)),
        }
    }

    /// Fraction of rows whose prediction equals their label.
    pub fn accuracy(&self, dataset: &LabeledDataset<T>) -> f64 {
        if dataset.is_empty() {
            return 0.0;
        }
        let hits = dataset.rows.iter().filter(|r| self.predict_features(&r.features) == r.layer).count();
        hits as f64 / dataset.len() as f64
    }
}

pub fn train<T: Scalar>(dataset: &LabeledDataset<T>, config: &TrainConfig<T>) -> Result<TrainedModel<T>> {
    dataset.check()?;
    let scaler = ScalerParams::fit(dataset.rows.iter().map(|r| &r.features));
    let params = match config.kind {
        ModelKind::Knn => {
            let rows = dataset.rows.iter().map(|r| (scaler.apply(&r.features), r.layer)).collect();
            ModelParams::Knn(KnnModel::train(rows, config.k)?)
        }
        ModelKind::DecisionTree => {
            let rows: Vec<_> = dataset.rows.iter().map(|r| (r.features, r.layer)).collect();
            ModelParams::Tree(TreeModel::train(&rows, config.max_depth, config.min_leaf)?)
        }
        ModelKind::LinearSvm => {
            let rows: Vec<_> = dataset.rows.iter().map(|r| (scaler.apply(&r.features), r.layer)).collect();
            ModelParams::Svm(SvmModel::train(&rows, &config.svm_params())?)
        }
    };
    Ok(TrainedModel { scaler, params })
}

/// Labels every record of `table`.
pub fn predict<T: Scalar>(model: &TrainedModel<T>, table: &CentralityTable<T>) -> Result<LayerAssignment> {
    if table.is_empty() {
        return Err(Error::Schema("cannot predict on an empty table".into()));
    }
    let labels: Vec<LayerLabel> = table.records.par_iter().map(|r| model.predict_features(&r.features())).collect();
    LayerAssignment::from_pairs(
        table.records.iter().map(|r| r.node.clone()).zip(labels),
        Provenance::Model { kind: model.kind().as_str().to_string() },
    )
}
