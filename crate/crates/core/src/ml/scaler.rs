use crate::scalar::Scalar;

use super::{Features, FEATURES};

/// Per-feature min and max seen at training time.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalerParams<T> {
    pub min: Features<T>,
    pub max: Features<T>,
}

impl<T: Scalar> ScalerParams<T> {
    /// `rows` must be non-empty.
    pub fn fit<'a>(rows: impl IntoIterator<Item = &'a Features<T>>) -> Self {
        let mut min = [T::infinity(); FEATURES];
        let mut max = [T::neg_infinity(); FEATURES];
        for row in rows {
            for j in 0..FEATURES {
                min[j] = min[j].min(row[j]);
                max[j] = max[j].max(row[j]);
            }
        }
        Self { min, max }
    }

    /// Maps each feature to `(x - min) / (max - min)`; constant features map
    /// to zero. Values outside the training range are not clipped.
    pub fn apply(&self, x: &Features<T>) -> Features<T> {
        let mut out = [T::zero(); FEATURES];
        for j in 0..FEATURES {
            let span = self.max[j] - self.min[j];
            out[j] = if span > T::zero() { (x[j] - self.min[j]) / span } else { T::zero() };
        }
        out
    }
}
