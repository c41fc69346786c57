//! Recomputes the published accuracy and per-class recall, precision and F1
//! from the twelve published confusion matrices (rows = predicted, columns =
//! actual). Accuracy must match within 0.005, class rows within 0.01.
//!
//! A printed class row that matches neither orientation of its own matrix
//! cannot be checked against any metric definition and is excluded with a
//! note. A row that only matches the transposed matrix is a failure.

use std::time::{Duration, Instant};

use archlayer::eval::{metrics, ConfusionMatrix};
use archlayer::LayerLabel;

use crate::support::{note, within_budget, Outcome};

struct Printed {
    system: &'static str,
    method: &'static str,
    matrix: [[usize; 3]; 3],
    accuracy: f64,
    /// (recall, precision, F1) for lower, middle, upper.
    rows: [[f64; 3]; 3],
}

const fn p(
    system: &'static str,
    method: &'static str,
    matrix: [[usize; 3]; 3],
    accuracy: f64,
    rows: [[f64; 3]; 3],
) -> Printed {
    Printed { system, method, matrix, accuracy, rows }
}

#[rustfmt::skip]
const PRINTED: [Printed; 12] = [
    p("ConStore", "SVM", [[43, 0, 0], [14, 0, 1], [6, 0, 2]], 0.68,
      [[0.68, 1.00, 0.81], [0.00, 0.00, 0.00], [0.67, 0.25, 0.36]]),
    p("ConStore", "DT", [[43, 0, 0], [13, 2, 0], [6, 0, 2]], 0.71,
      [[0.69, 1.00, 0.82], [1.00, 0.13, 0.24], [1.00, 0.25, 0.40]]),
    p("ConStore", "KNN", [[40, 3, 0], [12, 3, 0], [7, 1, 0]], 0.65,
      [[0.68, 0.93, 0.78], [0.43, 0.20, 0.27], [0.00, 0.00, 0.00]]),
    p("ConStore", "Rule", [[27, 16, 0], [9, 5, 1], [4, 2, 2]], 0.52,
      [[0.68, 0.63, 0.65], [0.22, 0.33, 0.26], [0.67, 0.25, 0.36]]),
    p("HealthWatcher", "SVM", [[47, 1, 9], [20, 5, 12], [5, 1, 35]], 0.64,
      [[0.65, 0.82, 0.73], [0.71, 0.14, 0.23], [0.62, 0.85, 0.72]]),
    p("HealthWatcher", "DT", [[49, 4, 4], [15, 20, 2], [7, 0, 34]], 0.76,
      [[0.69, 0.86, 0.77], [0.83, 0.54, 0.66], [0.85, 0.83, 0.84]]),
    p("HealthWatcher", "KNN", [[41, 8, 8], [7, 28, 2], [6, 6, 29]], 0.72,
      [[0.76, 0.72, 0.74], [0.67, 0.76, 0.71], [0.74, 0.71, 0.72]]),
    p("HealthWatcher", "Rule", [[28, 16, 13], [6, 30, 1], [3, 9, 29]], 0.63,
      [[0.76, 0.49, 0.60], [0.55, 0.81, 0.65], [0.66, 0.66, 0.66]]),
    p("Test Architecture", "SVM", [[5, 2, 0], [1, 4, 0], [1, 0, 3]], 0.75,
      [[0.71, 0.71, 0.71], [0.67, 0.80, 0.73], [1.00, 0.75, 0.86]]),
    p("Test Architecture", "DT", [[4, 3, 0], [0, 5, 0], [0, 1, 3]], 0.75,
      [[1.00, 0.57, 0.73], [0.56, 1.00, 0.71], [1.00, 0.75, 0.86]]),
    p("Test Architecture", "KNN", [[5, 2, 0], [1, 4, 0], [4, 0, 0]], 0.56,
      [[0.50, 0.71, 0.59], [0.67, 0.80, 0.73], [0.00, 0.00, 0.00]]),
    p("Test Architecture", "Rule", [[5, 2, 0], [1, 4, 0], [1, 0, 3]], 0.75,
      [[0.71, 0.71, 0.71], [0.67, 0.80, 0.73], [1.00, 0.75, 0.86]]),
];

const ACCURACY_TOL: f64 = 0.005;
const ROW_TOL: f64 = 0.01;

fn transpose(m: [[usize; 3]; 3]) -> [[usize; 3]; 3] {
    let mut t = [[0; 3]; 3];
    for (r, row) in m.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            t[c][r] = v;
        }
    }
    t
}

fn row_matches(computed: [f64; 3], printed: [f64; 3]) -> bool {
    computed.iter().zip(printed).all(|(c, p)| (c - p).abs() <= ROW_TOL)
}

pub fn run() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut checked, mut excluded) = (0, 0);
    for t in &PRINTED {
        let report = metrics::<f64>(&ConfusionMatrix::from_rows(t.matrix)).map_err(|e| e.to_string())?;
        let flipped = metrics::<f64>(&ConfusionMatrix::from_rows(transpose(t.matrix))).map_err(|e| e.to_string())?;
        let m = &t.matrix;
        let total: usize = m.iter().flatten().sum();
        let trace = m[0][0] + m[1][1] + m[2][2];
        if (report.accuracy - t.accuracy).abs() > ACCURACY_TOL {
            failures.push(format!(
                "{} {} accuracy {trace}/{total} = {:.4}, printed {:.2}",
                t.system, t.method, report.accuracy, t.accuracy
            ));
        }
        for label in LayerLabel::ALL {
            let c = label.index();
            let ours = [report.recall[c], report.precision[c], report.f1[c]];
            let other = [flipped.recall[c], flipped.precision[c], flipped.f1[c]];
            let printed = t.rows[c];
            if row_matches(ours, printed) {
                checked += 1;
            } else if row_matches(other, printed) {
                failures.push(format!("{} {} {label} row only fits the transposed matrix", t.system, t.method));
            } else {
                excluded += 1;
                note(&format!(
                    "excluded {} {} {label} row: printed {:.2}/{:.2}/{:.2}, matrix gives {:.3}/{:.3}/{:.3} \
                     (transposed {:.3}/{:.3}/{:.3})",
                    t.system,
                    t.method,
                    printed[0],
                    printed[1],
                    printed[2],
                    ours[0],
                    ours[1],
                    ours[2],
                    other[0],
                    other[1],
                    other[2]
                ));
            }
        }
    }
    within_budget(start, Duration::from_secs(1))?;
    if failures.is_empty() {
        Ok(format!("12 accuracies, {checked} class rows matched, {excluded} excluded"))
    } else {
        Err(failures.join("; "))
    }
}
