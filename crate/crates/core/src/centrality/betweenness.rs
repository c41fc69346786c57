//! Brandes' algorithm on the unweighted directed network.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::DependencyNetwork;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetweennessScores<T> {
    pub betweenness: T,
    /// `2 * betweenness / (n^2 - 3n + 2)`, zero when `n < 3`.
    pub norm_betweenness: T,
}

/// Sources are split into fixed-size chunks; chunk sums are added in chunk
/// order, so the result does not depend on thread scheduling.
const CHUNK: usize = 32;

pub fn betweenness_centrality<T: Scalar>(network: &DependencyNetwork) -> Vec<BetweennessScores<T>> {
    let n = network.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<T>> = sources
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![T::zero(); n];
            let mut state = State::new(n);
            for &s in chunk {
                state.accumulate(network, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut totals = vec![T::zero(); n];
    for partial in partials {
        for (t, p) in totals.iter_mut().zip(partial) {
            *t = *t + p;
        }
    }

    let denom = if n >= 3 { T::from_count(n * n + 2 - 3 * n) } else { T::zero() };
    let two = T::lit(2.0);
    totals
        .into_iter()
        .map(|b| BetweennessScores {
            betweenness: b,
            norm_betweenness: if n >= 3 { two * b / denom } else { T::zero() },
        })
        .collect()
}

struct State<T> {
    stack: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<T>,
    dist: Vec<usize>,
    delta: Vec<T>,
    queue: VecDeque<usize>,
}

impl<T: Scalar> State<T> {
    fn new(n: usize) -> Self {
        Self {
            stack: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![T::zero(); n],
            dist: vec![usize::MAX; n],
            delta: vec![T::zero(); n],
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, network: &DependencyNetwork, s: usize, acc: &mut [T]) {
        for v in 0..self.dist.len() {
            self.preds[v].clear();
            self.sigma[v] = T::zero();
            self.dist[v] = usize::MAX;
            self.delta[v] = T::zero();
        }
        self.stack.clear();
        self.sigma[s] = T::one();
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in network.out_neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] = self.sigma[w] + self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }
        while let Some(w) = self.stack.pop() {
            for i in 0..self.preds[w].len() {
                let v = self.preds[w][i];
                let share = self.sigma[v] / self.sigma[w] * (T::one() + self.delta[w]);
                self.delta[v] = self.delta[v] + share;
            }
            if w != s {
                acc[w] = acc[w] + self.delta[w];
            }
        }
    }
}
