//! Plain-text model files.
//!
//! ```text
//! archlayer-model 1
//! kind knn
//! scaler_min 0 0 0 0 0
//! scaler_max 60 7 1 12.5 1
//! k 5
//! rows 2
//! row 1 0.5 0 0 0 1
//! row 3 0 1 0.9 0 0
//! end
//! ```
//!
//! Trees list `nodes N` followed by `leaf <label>` or
//! `split <feature> <threshold> <left> <right>` lines. SVMs list three
//! `class <label> <w1..w5> <bias>` lines. Numbers are written in shortest
//! round-trip form, so loading reproduces the model exactly.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::layer::LayerLabel;
use crate::scalar::Scalar;

use super::{
    Features, KnnModel, ModelKind, ModelParams, ScalerParams, SvmModel, TrainedModel, TreeModel, TreeNode, FEATURES,
};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "archlayer-model";

fn join<T: Scalar>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn save_model<T: Scalar>(model: &TrainedModel<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {MODEL_FORMAT_VERSION}");
    let _ = writeln!(out, "kind {}", model.kind());
    let _ = writeln!(out, "scaler_min {}", join(&model.scaler.min));
    let _ = writeln!(out, "scaler_max {}", join(&model.scaler.max));
    match &model.params {
        ModelParams::Knn(m) => {
            let _ = writeln!(out, "k {}", m.k);
            let _ = writeln!(out, "rows {}", m.rows.len());
            for (x, l) in &m.rows {
                let _ = writeln!(out, "row {} {}", l.code(), join(x));
            }
        }
        ModelParams::Tree(m) => {
            let _ = writeln!(out, "max_depth {}", m.max_depth);
            let _ = writeln!(out, "min_leaf {}", m.min_leaf);
            let _ = writeln!(out, "nodes {}", m.nodes.len());
            for node in &m.nodes {
                match node {
                    TreeNode::Leaf { label } => {
                        let _ = writeln!(out, "leaf {}", label.code());
                    }
                    TreeNode::Split { feature, threshold, left, right } => {
                        let _ = writeln!(out, "split {feature} {threshold} {left} {right}");
                    }
                }
            }
        }
        ModelParams::Svm(m) => {
            for (c, label) in LayerLabel::ALL.iter().enumerate() {
                let _ = writeln!(out, "class {} {} {}", label.code(), join(&m.weights[c]), m.bias[c]);
            }
        }
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line split into its keyword and fields.
    fn next(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if fields[0] != expected {
                return Err(Error::ModelFormat(format!(
                    "line {}: expected `{expected}`, found `{}`",
                    i + 1,
                    fields[0]
                )));
            }
            return Ok((i + 1, fields[1..].to_vec()));
        }
        Err(Error::ModelFormat(format!("unexpected end of file, expected `{expected}`")))
    }

    fn values<T: std::str::FromStr>(&mut self, expected: &str, count: usize) -> Result<Vec<T>> {
        let (line, fields) = self.next(expected)?;
        if fields.len() != count {
            return Err(Error::ModelFormat(format!(
                "line {line}: `{expected}` needs {count} values, found {}",
                fields.len()
            )));
        }
        fields
            .iter()
            .map(|f| f.parse().map_err(|_| Error::ModelFormat(format!("line {line}: invalid value `{f}`"))))
            .collect()
    }

    fn single<T: std::str::FromStr>(&mut self, expected: &str) -> Result<T> {
        Ok(self.values::<T>(expected, 1)?.remove(0))
    }
}

fn label(code: u8) -> Result<LayerLabel> {
    LayerLabel::from_code(code).ok_or_else(|| Error::ModelFormat(format!("invalid layer code {code}")))
}

fn features<T: Scalar>(values: &[T]) -> Result<Features<T>> {
    let mut out = [T::zero(); FEATURES];
    out.copy_from_slice(values);
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::ModelFormat("non-finite parameter".into()));
    }
    Ok(out)
}

pub fn load_model<T: Scalar>(text: &str) -> Result<TrainedModel<T>> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (_, header) = lines.next(MAGIC)?;
    let version: u32 = header
        .first()
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::ModelFormat("missing format version".into()))?;
    if version != MODEL_FORMAT_VERSION {
        return Err(Error::ModelFormat(format!("unsupported format version {version}")));
    }
    let kind_name: String = lines.single("kind")?;
    let kind: ModelKind =
        kind_name.parse().map_err(|_| Error::ModelFormat(format!("unknown model kind `{kind_name}`")))?;
    let scaler = ScalerParams {
        min: features(&lines.values::<T>("scaler_min", FEATURES)?)?,
        max: features(&lines.values::<T>("scaler_max", FEATURES)?)?,
    };
    let params = match kind {
        ModelKind::Knn => {
            let k: usize = lines.single("k")?;
            let n: usize = lines.single("rows")?;
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let (line, fields) = lines.next("row")?;
                if fields.len() != FEATURES + 1 {
                    return Err(Error::ModelFormat(format!("line {line}: malformed row")));
                }
                let code: u8 = fields[0].parse().map_err(|_| Error::ModelFormat(format!("line {line}: bad label")))?;
                let values = fields[1..]
                    .iter()
                    .map(|f| {
                        f.parse::<T>().map_err(|_| Error::ModelFormat(format!("line {line}: invalid value `{f}`")))
                    })
                    .collect::<Result<Vec<T>>>()?;
                rows.push((features(&values)?, label(code)?));
            }
            ModelParams::Knn(KnnModel::train(rows, k).map_err(|e| Error::ModelFormat(e.to_string()))?)
        }
        ModelKind::DecisionTree => {
            let max_depth: usize = lines.single("max_depth")?;
            let min_leaf: usize = lines.single("min_leaf")?;
            let n: usize = lines.single("nodes")?;
            let mut nodes = Vec::with_capacity(n);
            for _ in 0..n {
                let Some((i, line)) = lines.inner.find(|(_, l)| !l.trim().is_empty()) else {
                    return Err(Error::ModelFormat("unexpected end of file in tree nodes".into()));
                };
                let fields: Vec<&str> = line.split_whitespace().collect();
                let bad = || Error::ModelFormat(format!("line {}: malformed tree node", i + 1));
                let node = match fields.as_slice() {
                    ["leaf", code] => TreeNode::Leaf { label: label(code.parse().map_err(|_| bad())?)? },
                    ["split", f, t, l, r] => TreeNode::Split {
                        feature: f.parse().map_err(|_| bad())?,
                        threshold: t.parse().map_err(|_| bad())?,
                        left: l.parse().map_err(|_| bad())?,
                        right: r.parse().map_err(|_| bad())?,
                    },
                    _ => return Err(bad()),
                };
                nodes.push(node);
            }
            let tree = TreeModel { max_depth, min_leaf, nodes };
            tree.check()?;
            ModelParams::Tree(tree)
        }
        ModelKind::LinearSvm => {
            let mut weights = [[T::zero(); FEATURES]; 3];
            let mut bias = [T::zero(); 3];
            for (c, expected) in LayerLabel::ALL.iter().enumerate() {
                let values: Vec<T> = lines.values("class", FEATURES + 2)?;
                if values[0] != T::from_count(expected.code() as usize) {
                    return Err(Error::ModelFormat(format!("expected class {}", expected.code())));
                }
                weights[c] = features(&values[1..=FEATURES])?;
                bias[c] = values[FEATURES + 1];
            }
            ModelParams::Svm(SvmModel { weights, bias })
        }
    };
    lines.next("end")?;
    Ok(TrainedModel { scaler, params })
}
