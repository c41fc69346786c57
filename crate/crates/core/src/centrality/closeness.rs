use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::DependencyNetwork;
use crate::scalar::Scalar;

/// Which closeness formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosenessVariant {
    /// `(r / (n-1)) * (r / sum of distances)` over the `r` nodes reachable
    /// from the node; zero when nothing is reachable.
    #[default]
    Reachability,
    /// Mean of inverse distances over the other `n - 1` nodes.
    Harmonic,
}

impl std::str::FromStr for ClosenessVariant {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reachability" => Ok(ClosenessVariant::Reachability),
            "harmonic" => Ok(ClosenessVariant::Harmonic),
            other => Err(crate::error::Error::Config(format!("unknown closeness variant `{other}`"))),
        }
    }
}

/// BFS distances along outgoing edges; `usize::MAX` marks unreachable nodes.
pub(crate) fn bfs_distances(network: &DependencyNetwork, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; network.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in network.out_neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn closeness_centrality<T: Scalar>(network: &DependencyNetwork, variant: ClosenessVariant) -> Vec<T> {
    let n = network.node_count();
    (0..n)
        .into_par_iter()
        .map(|v| {
            if n < 2 {
                return T::zero();
            }
            let dist = bfs_distances(network, v);
            let reached: Vec<usize> =
                dist.iter().enumerate().filter(|&(w, &d)| w != v && d != usize::MAX).map(|(_, &d)| d).collect();
            if reached.is_empty() {
                return T::zero();
            }
            let others = T::from_count(n - 1);
            match variant {
                ClosenessVariant::Reachability => {
                    let r = T::from_count(reached.len());
                    let total = T::from_count(reached.iter().sum());
                    (r / others) * (r / total)
                }
                ClosenessVariant::Harmonic => reached.iter().map(|&d| T::one() / T::from_count(d)).sum::<T>() / others,
            }
        })
        .collect()
}
