use crate::error::{Error, Result};
use crate::layer::LayerLabel;
use crate::scalar::Scalar;

use super::{Features, FEATURES};

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode<T> {
    Leaf {
        label: LayerLabel,
    },
    /// Rows with `x[feature] <= threshold` go to `left`.
    Split {
        feature: usize,
        threshold: T,
        left: usize,
        right: usize,
    },
}

/// CART classification tree on raw features. Node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel<T> {
    pub max_depth: usize,
    pub min_leaf: usize,
    pub nodes: Vec<TreeNode<T>>,
}

fn gini(counts: &[usize; 3], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    1.0 - counts.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>()
}

fn counts_of(labels: impl Iterator<Item = LayerLabel>) -> [usize; 3] {
    let mut c = [0; 3];
    for l in labels {
        c[l.index()] += 1;
    }
    c
}

/// Most frequent class; ties go to the smaller label.
pub(crate) fn majority(counts: &[usize; 3]) -> LayerLabel {
    let mut best = 0;
    for c in 1..3 {
        if counts[c] > counts[best] {
            best = c;
        }
    }
    LayerLabel::ALL[best]
}

struct Builder<'a, T> {
    rows: &'a [(Features<T>, LayerLabel)],
    max_depth: usize,
    min_leaf: usize,
    nodes: Vec<TreeNode<T>>,
}

impl<T: Scalar> Builder<'_, T> {
    fn grow(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let counts = counts_of(idx.iter().map(|&i| self.rows[i].1));
        let id = self.nodes.len();
        self.nodes.push(TreeNode::Leaf { label: majority(&counts) });
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || depth >= self.max_depth {
            return id;
        }
        let Some((feature, threshold)) = self.best_split(&idx, &counts) else {
            return id;
        };
        let (l, r): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| self.rows[i].0[feature] <= threshold);
        let left = self.grow(l, depth + 1);
        let right = self.grow(r, depth + 1);
        self.nodes[id] = TreeNode::Split { feature, threshold, left, right };
        id
    }

    /// Split with the largest Gini decrease over midpoints of consecutive
    /// distinct values. The first best candidate in (feature, threshold)
    /// order wins.
    fn best_split(&self, idx: &[usize], parent: &[usize; 3]) -> Option<(usize, T)> {
        let n = idx.len();
        let parent_gini = gini(parent, n);
        let mut best: Option<(f64, usize, T)> = None;
        for f in 0..FEATURES {
            let mut sorted: Vec<(T, LayerLabel)> = idx.iter().map(|&i| (self.rows[i].0[f], self.rows[i].1)).collect();
            sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
            let mut left = [0usize; 3];
            for k in 0..n - 1 {
                left[sorted[k].1.index()] += 1;
                if sorted[k].0 == sorted[k + 1].0 {
                    continue;
                }
                let nl = k + 1;
                let nr = n - nl;
                if nl < self.min_leaf || nr < self.min_leaf {
                    continue;
                }
                let right = [parent[0] - left[0], parent[1] - left[1], parent[2] - left[2]];
                let child = (nl as f64 * gini(&left, nl) + nr as f64 * gini(&right, nr)) / n as f64;
                let gain = parent_gini - child;
                if best.as_ref().is_none_or(|b| gain > b.0 + 1e-12) {
                    let threshold = (sorted[k].0 + sorted[k + 1].0) / T::lit(2.0);
                    best = Some((gain, f, threshold));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

impl<T: Scalar> TreeModel<T> {
    /// Grows greedily until a node is pure, reaches `max_depth`, or has no
    /// split leaving at least `min_leaf` rows on each side.
    pub fn train(rows: &[(Features<T>, LayerLabel)], max_depth: usize, min_leaf: usize) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Train("empty training set".into()));
        }
        if max_depth == 0 || min_leaf == 0 {
            return Err(Error::Train("max_depth and min_leaf must be at least 1".into()));
        }
        let mut b = Builder { rows, max_depth, min_leaf, nodes: Vec::new() };
        b.grow((0..rows.len()).collect(), 0);
        Ok(Self { max_depth, min_leaf, nodes: b.nodes })
    }

    pub fn predict(&self, x: &Features<T>) -> LayerLabel {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { label } => return *label,
                TreeNode::Split { feature, threshold, left, right } => {
                    at = if x[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk<T>(nodes: &[TreeNode<T>], at: usize) -> usize {
            match &nodes[at] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Checks child indices and that the tree is acyclic (children always
    /// come after their parent).
    pub(crate) fn check(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::ModelFormat("tree has no nodes".into()));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if let TreeNode::Split { feature, left, right, .. } = node {
                if *feature >= FEATURES
                    || *left <= i
                    || *right <= i
                    || *left >= self.nodes.len()
                    || *right >= self.nodes.len()
                {
                    return Err(Error::ModelFormat(format!("malformed split node {i}")));
                }
            }
        }
        Ok(())
    }
}
