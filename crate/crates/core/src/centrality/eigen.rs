//! Eigenvector-style centrality on incoming edges with a uniform offset.
//!
//! The score vector `x` is the max-normalized fixed point of
//!
//! ```text
//! y_v = sum of x_u over edges u -> v, plus offset
//! x   = y / max(y)
//! ```
//!
//! Without the offset, acyclic networks have a nilpotent adjacency matrix and
//! the plain eigenvector is zero. With it, nodes that collect many (and long)
//! chains of incoming edges score highest. At the fixed point,
//! `m x = A^T x + offset * 1` with `m = max(y)`, so `x` is the dominant
//! eigenvector of `A^T + offset * 1 e_k^T` where `k` is the arg-max node.
//!
//! Two solvers are provided. [`EigenMethod::Direct`] (the default) solves for
//! `x(m) = offset * (m I - A^T)^{-1} 1` one strongly connected component at a
//! time and bisects on `m` until `max x(m) = 1`. [`EigenMethod::PowerIteration`]
//! runs the lazy (half-step) form of the iteration above; it can stall on
//! networks with several components of equal spectral radius, where the
//! contraction factor is about `1 - offset`.

use crate::error::{Error, Result};
use crate::graph::DependencyNetwork;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    #[default]
    Direct,
    PowerIteration,
}

impl std::str::FromStr for EigenMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(EigenMethod::Direct),
            "power" | "power_iteration" => Ok(EigenMethod::PowerIteration),
            other => Err(Error::Config(format!("unknown eigenvector method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenConfig<T> {
    /// Constant added to every node on each step.
    pub damping_offset: T,
    /// Step cap for either solver.
    pub max_iterations: usize,
    /// Power iteration stops once no component moves by more than this.
    pub tolerance: T,
    pub method: EigenMethod,
}

impl<T: Scalar> Default for EigenConfig<T> {
    fn default() -> Self {
        Self {
            damping_offset: T::lit(1e-6),
            max_iterations: 1000,
            tolerance: T::lit(1e-10),
            method: EigenMethod::Direct,
        }
    }
}

impl<T: Scalar> EigenConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping_offset > T::zero()) || !(self.tolerance > T::zero()) || self.max_iterations == 0 {
            return Err(Error::Config("eigenvector parameters must be strictly positive".into()));
        }
        Ok(())
    }
}

pub fn eigenvector_centrality<T: Scalar>(network: &DependencyNetwork, config: &EigenConfig<T>) -> Result<Vec<T>> {
    config.validate()?;
    let n = network.node_count();
    if network.edge_count() == 0 {
        return Ok(vec![T::zero(); n]);
    }
    let x = match config.method {
        EigenMethod::Direct => direct(network, config)?,
        EigenMethod::PowerIteration => power_iteration(network, config)?,
    };
    normalize(x)
}

fn normalize<T: Scalar>(mut x: Vec<T>) -> Result<Vec<T>> {
    let max = x.iter().copied().fold(T::zero(), T::max);
    if !max.is_finite() || x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvector component".into()));
    }
    if max > T::zero() {
        for v in &mut x {
            *v = *v / max;
        }
    }
    Ok(x)
}

fn power_iteration<T: Scalar>(network: &DependencyNetwork, config: &EigenConfig<T>) -> Result<Vec<T>> {
    let n = network.node_count();
    let half = T::lit(0.5);
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    for _ in 0..config.max_iterations {
        for (v, slot) in y.iter_mut().enumerate() {
            *slot = network.in_neighbors(v).iter().map(|&u| x[u]).sum::<T>() + config.damping_offset;
        }
        let m = y.iter().copied().fold(T::zero(), T::max);
        if !m.is_finite() || m <= T::zero() {
            return Err(Error::Numerical(format!("power iteration normalizer {m}")));
        }
        let mut next: Vec<T> = x.iter().zip(&y).map(|(&xv, &yv)| half * (xv + yv / m)).collect();
        let top = next.iter().copied().fold(T::zero(), T::max);
        for v in &mut next {
            *v = *v / top;
        }
        let change = next.iter().zip(&x).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
        x = next;
        if change < config.tolerance {
            return Ok(x);
        }
    }
    log::warn!("eigenvector power iteration hit the cap of {} steps", config.max_iterations);
    Ok(x)
}

fn direct<T: Scalar>(network: &DependencyNetwork, config: &EigenConfig<T>) -> Result<Vec<T>> {
    let components = strongly_connected_components(network);
    let mut component_of = vec![0; network.node_count()];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            component_of[v] = c;
        }
    }
    let solver = ComponentSolver {
        network,
        components: &components,
        component_of: &component_of,
        offset: config.damping_offset,
    };

    // With m >= max in-degree + offset the maximum of x(m) is at most 1.
    let max_in = (0..network.node_count()).map(|v| network.in_degree(v)).max().unwrap_or(0);
    let mut hi = T::from_count(max_in) + config.damping_offset;
    let mut best =
        solver.solve(hi).ok_or_else(|| Error::Numerical("offset system infeasible at the upper bound".into()))?;
    let mut lo = T::zero();
    for _ in 0..config.max_iterations {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        match solver.solve(mid) {
            Some(x) if x.iter().copied().fold(T::zero(), T::max) <= T::one() => {
                hi = mid;
                best = x;
            }
            _ => lo = mid,
        }
    }
    Ok(best)
}

struct ComponentSolver<'a, T> {
    network: &'a DependencyNetwork,
    components: &'a [Vec<usize>],
    component_of: &'a [usize],
    offset: T,
}

impl<T: Scalar> ComponentSolver<'_, T> {
    /// `x(m) = offset (m I - A^T)^{-1} 1`, or `None` when `m` does not exceed
    /// the spectral radius (the solution is then not strictly positive).
    fn solve(&self, m: T) -> Option<Vec<T>> {
        let net = self.network;
        let mut x = vec![T::zero(); net.node_count()];
        for (c, members) in self.components.iter().enumerate() {
            let inflow = |v: usize, x: &[T]| -> T {
                net.in_neighbors(v).iter().filter(|&&u| self.component_of[u] != c).map(|&u| x[u]).sum::<T>()
                    + self.offset
            };
            if let [v] = members[..] {
                x[v] = inflow(v, &x) / m;
            } else {
                let k = members.len();
                let local = |v: usize| members.iter().position(|&w| w == v);
                let mut a = vec![vec![T::zero(); k]; k];
                let mut b = vec![T::zero(); k];
                for (i, &v) in members.iter().enumerate() {
                    a[i][i] = m;
                    for &u in net.in_neighbors(v) {
                        if let Some(j) = local(u) {
                            a[i][j] = a[i][j] - T::one();
                        }
                    }
                    b[i] = inflow(v, &x);
                }
                let solution = solve_dense(a, b)?;
                for (i, &v) in members.iter().enumerate() {
                    x[v] = solution[i];
                }
            }
            if members.iter().any(|&v| !(x[v] > T::zero()) || !x[v].is_finite()) {
                return None;
            }
        }
        Some(x)
    }
}

/// Gaussian elimination with partial pivoting.
fn solve_dense<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))?;
        if a[pivot][col] == T::zero() || !a[pivot][col].is_finite() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let pivot_row = a[col].clone();
        for row in col + 1..n {
            let factor = a[row][col] / pivot_row[col];
            if factor == T::zero() {
                continue;
            }
            for (target, &p) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *target = *target - factor * p;
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let tail: T = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Kosaraju's algorithm. Components come out in topological order of the
/// condensation (sources first).
pub(crate) fn strongly_connected_components(network: &DependencyNetwork) -> Vec<Vec<usize>> {
    let n = network.node_count();
    let mut visited = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = network.out_neighbors(v).get(*next) {
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                finish.push(v);
                stack.pop();
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    for &root in finish.iter().rev() {
        if assigned[root] {
            continue;
        }
        assigned[root] = true;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in network.in_neighbors(v) {
                if !assigned[u] {
                    assigned[u] = true;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}
