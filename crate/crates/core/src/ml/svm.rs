use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::layer::LayerLabel;
use crate::scalar::Scalar;

use super::{Features, FEATURES};

/// Three one-vs-rest linear classifiers, one per layer in label order.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel<T> {
    pub weights: [Features<T>; 3],
    pub bias: [T; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams<T> {
    pub epochs: usize,
    pub learning_rate: T,
    pub regularization: T,
    pub seed: u64,
}

impl<T: Scalar> SvmModel<T> {
    /// Subgradient descent on the L2-regularized hinge loss. Each epoch
    /// visits the rows in an order drawn from `seed`; the bias is not
    /// regularized.
    pub fn train(rows: &[(Features<T>, LayerLabel)], params: &SvmParams<T>) -> Result<Self> {
        let classes = rows.iter().map(|r| r.1).fold([false; 3], |mut seen, l| {
            seen[l.index()] = true;
            seen
        });
        if classes.iter().filter(|&&c| c).count() < 2 {
            return Err(Error::Train("a linear SVM needs at least two classes".into()));
        }
        if params.epochs == 0 || !(params.learning_rate > T::zero()) || params.regularization < T::zero() {
            return Err(Error::Train("epochs and learning_rate must be positive, regularization non-negative".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut order: Vec<usize> = (0..rows.len()).collect();
        let mut weights = [[T::zero(); FEATURES]; 3];
        let mut bias = [T::zero(); 3];
        let (eta, lambda) = (params.learning_rate, params.regularization);
        for _ in 0..params.epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let (x, label) = &rows[i];
                for c in 0..3 {
                    let y = if label.index() == c { T::one() } else { -T::one() };
                    let margin = y * (dot(&weights[c], x) + bias[c]);
                    for j in 0..FEATURES {
                        let mut grad = lambda * weights[c][j];
                        if margin < T::one() {
                            grad = grad - y * x[j];
                        }
                        weights[c][j] = weights[c][j] - eta * grad;
                    }
                    if margin < T::one() {
                        bias[c] = bias[c] + eta * y;
                    }
                }
            }
        }
        Ok(Self { weights, bias })
    }

    pub fn decision_values(&self, x: &Features<T>) -> [T; 3] {
        [0, 1, 2].map(|c| dot(&self.weights[c], x) + self.bias[c])
    }

    /// Argmax of the decision values; ties go to the smaller label.
    pub fn predict(&self, x: &Features<T>) -> LayerLabel {
        argmax(&self.decision_values(x))
    }
}

pub(crate) fn argmax<T: Scalar>(values: &[T; 3]) -> LayerLabel {
    let mut best = 0;
    for c in 1..3 {
        if values[c] > values[best] {
            best = c;
        }
    }
    LayerLabel::ALL[best]
}

fn dot<T: Scalar>(w: &Features<T>, x: &Features<T>) -> T {
    w.iter().zip(x).map(|(a, b)| *a * *b).sum()
}
