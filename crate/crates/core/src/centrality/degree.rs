use crate::graph::DependencyNetwork;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeScores<T> {
    pub in_degree: usize,
    pub out_degree: usize,
    pub degree: usize,
    /// `degree / (n - 1)`; zero for a single-node network.
    pub norm_degree: T,
}

pub fn degree_centrality<T: Scalar>(network: &DependencyNetwork) -> Vec<DegreeScores<T>> {
    let n = network.node_count();
    (0..n)
        .map(|v| {
            let in_degree = network.in_degree(v);
            let out_degree = network.out_degree(v);
            let degree = in_degree + out_degree;
            let norm_degree = if n >= 2 { T::from_count(degree) / T::from_count(n - 1) } else { T::zero() };
            DegreeScores { in_degree, out_degree, degree, norm_degree }
        })
        .collect()
}
