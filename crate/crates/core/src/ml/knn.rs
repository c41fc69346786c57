use crate::error::{Error, Result};
use crate::layer::LayerLabel;
use crate::scalar::Scalar;

use super::Features;

/// k-nearest-neighbour classifier over scaled features.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel<T> {
    pub k: usize,
    pub rows: Vec<(Features<T>, LayerLabel)>,
}

impl<T: Scalar> KnnModel<T> {
    pub fn train(rows: Vec<(Features<T>, LayerLabel)>, k: usize) -> Result<Self> {
        if k == 0 || k > rows.len() {
            return Err(Error::Train(format!("k = {k} must lie in 1..={}", rows.len())));
        }
        Ok(Self { k, rows })
    }

    /// Majority vote among the `k` nearest rows by Euclidean distance. Rows at
    /// equal distance are ordered by label, then by position. Vote ties go to
    /// the class with the smaller summed distance, then the smaller label.
    pub fn predict(&self, x: &Features<T>) -> LayerLabel {
        let mut near: Vec<(T, LayerLabel, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, (r, l))| {
                let d2: T = r.iter().zip(x).map(|(a, b)| (*a - *b) * (*a - *b)).sum();
                (d2.sqrt(), *l, i)
            })
            .collect();
        near.sort_by(|a, b| {
            a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
        });
        let mut votes = [0usize; 3];
        let mut dist = [T::zero(); 3];
        for &(d, l, _) in near.iter().take(self.k) {
            votes[l.index()] += 1;
            dist[l.index()] = dist[l.index()] + d;
        }
        let best = (0..3)
            .filter(|&c| votes[c] > 0)
            .min_by(|&a, &b| {
                votes[b]
                    .cmp(&votes[a])
                    .then(dist[a].partial_cmp(&dist[b]).unwrap_or(std::cmp::Ordering::Equal))
                    .then(a.cmp(&b))
            })
            .unwrap_or(0);
        LayerLabel::ALL[best]
    }
}
