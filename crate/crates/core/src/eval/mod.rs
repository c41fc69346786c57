//! Scoring layer assignments against a reference labelling, plus synthetic
//! layered systems, threshold sweeps and layer-violation counts.
//!
//! Confusion matrices are indexed `[predicted][actual]`.

mod sweep;
mod synthetic;
mod violations;

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::layer::{LayerAssignment, LayerLabel};
use crate::scalar::Scalar;

pub use sweep::{sweep_config, SweepGrid, SweepOutcome, SweepResult};
pub use synthetic::{generate_synthetic, matched_config, SyntheticSpec};
pub use violations::{violation_report, ViolationReport};

/// Rows are predicted labels, columns actual labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub counts: [[usize; 3]; 3],
}

impl ConfusionMatrix {
    pub fn from_rows(counts: [[usize; 3]; 3]) -> Self {
        Self { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, predicted: LayerLabel) -> usize {
        self.counts[predicted.index()].iter().sum()
    }

    pub fn col_sum(&self, actual: LayerLabel) -> usize {
        self.counts.iter().map(|row| row[actual.index()]).sum()
    }

    pub fn scaled(&self, factor: usize) -> Self {
        Self { counts: self.counts.map(|row| row.map(|c| c * factor)) }
    }
}

/// Counts `(predicted, actual)` pairs; both assignments must label exactly
/// the same nodes.
pub fn confusion(predicted: &LayerAssignment, actual: &LayerAssignment) -> Result<ConfusionMatrix> {
    if predicted.len() != actual.len() {
        return Err(Error::DomainMismatch(format!(
            "{} predicted labels, {} actual labels",
            predicted.len(),
            actual.len()
        )));
    }
    let mut m = ConfusionMatrix::default();
    for (node, p) in predicted.iter() {
        let a = actual.get(node).ok_or_else(|| Error::DomainMismatch(format!("`{node}` has no actual label")))?;
        m.counts[p.index()][a.index()] += 1;
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport<T> {
    pub matrix: ConfusionMatrix,
    pub accuracy: T,
    /// Per class, in label order.
    pub recall: [T; 3],
    pub precision: [T; 3],
    pub f1: [T; 3],
    pub macro_recall: T,
    pub macro_precision: T,
    pub macro_f1: T,
}

fn ratio<T: Scalar>(num: usize, den: usize) -> T {
    if den == 0 {
        T::zero()
    } else {
        T::from_count(num) / T::from_count(den)
    }
}

/// Accuracy plus per-class recall, precision and F1. A zero denominator
/// gives zero.
pub fn metrics<T: Scalar>(matrix: &ConfusionMatrix) -> Result<MetricsReport<T>> {
    let total = matrix.total();
    if total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut recall = [T::zero(); 3];
    let mut precision = [T::zero(); 3];
    let mut f1 = [T::zero(); 3];
    for label in LayerLabel::ALL {
        let c = label.index();
        let hit = matrix.counts[c][c];
        let r: T = ratio(hit, matrix.col_sum(label));
        let p: T = ratio(hit, matrix.row_sum(label));
        recall[c] = r;
        precision[c] = p;
        f1[c] = if r + p > T::zero() { T::lit(2.0) * p * r / (p + r) } else { T::zero() };
    }
    let mean = |v: [T; 3]| v.into_iter().sum::<T>() / T::lit(3.0);
    Ok(MetricsReport {
        matrix: *matrix,
        accuracy: ratio(matrix.trace(), total),
        macro_recall: mean(recall),
        macro_precision: mean(precision),
        macro_f1: mean(f1),
        recall,
        precision,
        f1,
    })
}

impl<T: Scalar> MetricsReport<T> {
    /// Matrix block, accuracy line and one recall/precision/F1 row per class,
    /// ratios to two decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Confusion matrix (rows = predicted, columns = actual)");
        let _ = writeln!(out, "{:<10}{:>8}{:>8}{:>8}", "", "lower", "middle", "upper");
        for label in LayerLabel::ALL {
            let row = self.matrix.counts[label.index()];
            let _ = writeln!(out, "{:<10}{:>8}{:>8}{:>8}", label.name(), row[0], row[1], row[2]);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "Accuracy = {:.2}", self.accuracy.to_f64_lossy());
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<10}{:>10}{:>11}{:>10}", "class", "Recall", "Precision", "F1");
        for label in LayerLabel::ALL {
            let c = label.index();
            let _ = writeln!(
                out,
                "{:<10}{:>10.2}{:>11.2}{:>10.2}",
                label.name(),
                self.recall[c].to_f64_lossy(),
                self.precision[c].to_f64_lossy(),
                self.f1[c].to_f64_lossy()
            );
        }
        let _ = writeln!(
            out,
            "{:<10}{:>10.2}{:>11.2}{:>10.2}",
            "macro",
            self.macro_recall.to_f64_lossy(),
            self.macro_precision.to_f64_lossy(),
            self.macro_f1.to_f64_lossy()
        );
        out
    }

    /// One row per predicted class with its matrix row and metrics, then a
    /// `macro` row carrying the averages and the accuracy. Full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,actual_lower,actual_middle,actual_upper,recall,precision,f1,accuracy\n");
        for label in LayerLabel::ALL {
            let c = label.index();
            let row = self.matrix.counts[c];
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},",
                label.name(),
                row[0],
                row[1],
                row[2],
                self.recall[c],
                self.precision[c],
                self.f1[c]
            );
        }
        let _ = writeln!(
            out,
            "macro,,,,{},{},{},{}",
            self.macro_recall, self.macro_precision, self.macro_f1, self.accuracy
        );
        out
    }
}
