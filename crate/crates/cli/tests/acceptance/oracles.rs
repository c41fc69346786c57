//! Brute-force centrality oracles.
//!
//! Distances come from Floyd-Warshall, betweenness from enumerating every
//! shortest path, and the eigenvector score from dense eigenvalues: for each
//! candidate arg-max node `k` the score vector is the Perron vector of
//! `A^T + offset * 1 e_k^T` scaled so that `x_k = 1`, and the candidate is
//! kept when no other entry exceeds `x_k`.

use std::time::{Duration, Instant};

use archlayer::centrality::{compute_table, CentralityConfig, ClosenessVariant};
use archlayer::{CentralityTable, DependencyNetwork};
use nalgebra::{DMatrix, DVector, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::support::{close, random_dag, random_digraph, within_budget, Outcome};

const OFFSET: f64 = 1e-6;
const INF: usize = usize::MAX;

fn adjacency(g: &DependencyNetwork) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for e in g.indexed_edges() {
        adj[e.source][e.target] = true;
    }
    adj
}

fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn closeness(d: &[Vec<usize>], variant: ClosenessVariant) -> Vec<f64> {
    let n = d.len();
    (0..n)
        .map(|v| {
            if n < 2 {
                return 0.0;
            }
            let others: Vec<usize> = (0..n).filter(|&w| w != v && d[v][w] != INF).map(|w| d[v][w]).collect();
            match variant {
                ClosenessVariant::Reachability => {
                    if others.is_empty() {
                        return 0.0;
                    }
                    let r = others.len() as f64;
                    let total: usize = others.iter().sum();
                    (r / (n - 1) as f64) * (r / total as f64)
                }
                ClosenessVariant::Harmonic => others.iter().map(|&x| 1.0 / x as f64).sum::<f64>() / (n - 1) as f64,
            }
        })
        .collect()
}

/// Walks every shortest `s -> t` path; `on_path[v]` counts paths through `v`.
fn enumerate(
    adj: &[Vec<bool>],
    d: &[Vec<usize>],
    path: &mut Vec<usize>,
    t: usize,
    total: &mut u64,
    on_path: &mut [u64],
) {
    let here = *path.last().unwrap();
    if here == t {
        *total += 1;
        for &v in &path[1..path.len() - 1] {
            on_path[v] += 1;
        }
        return;
    }
    for next in 0..adj.len() {
        if adj[here][next] && d[next][t] != INF && d[next][t] + 1 == d[here][t] {
            path.push(next);
            enumerate(adj, d, path, t, total, on_path);
            path.pop();
        }
    }
}

fn betweenness(adj: &[Vec<bool>], d: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] == INF {
                continue;
            }
            let mut total = 0;
            let mut on_path = vec![0u64; n];
            enumerate(adj, d, &mut vec![s], t, &mut total, &mut on_path);
            for v in 0..n {
                score[v] += on_path[v] as f64 / total as f64;
            }
        }
    }
    score
}

/// Largest real part among the eigenvalues of `b`. The unshifted QR
/// iteration can stall on nearly nilpotent matrices, so shifted copies
/// `b + sigma I` are tried as well.
fn perron_root(b: &DMatrix<f64>) -> Option<f64> {
    let n = b.nrows();
    [0.0, 1.0, 0.37, 2.5].into_iter().find_map(|sigma| {
        let shifted = b + DMatrix::identity(n, n) * sigma;
        let schur = Schur::try_new(shifted, f64::EPSILON, 10_000)?;
        Some(schur.complex_eigenvalues().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max) - sigma)
    })
}

fn eigenvector(adj: &[Vec<bool>]) -> Result<Vec<f64>, String> {
    let n = adj.len();
    if !adj.iter().flatten().any(|&e| e) {
        return Ok(vec![0.0; n]);
    }
    // a_t[(v, u)] = 1 for every edge u -> v
    let a_t = DMatrix::from_fn(n, n, |v, u| if adj[u][v] { 1.0 } else { 0.0 });
    let mut accepted: Option<Vec<f64>> = None;
    for k in 0..n {
        let mut b = a_t.clone();
        for v in 0..n {
            b[(v, k)] += OFFSET;
        }
        let lambda = perron_root(&b).ok_or_else(|| format!("Schur iteration did not converge for k = {k}"))?;
        let shifted = DMatrix::identity(n, n) * lambda - &a_t;
        let Some(x) = shifted.lu().solve(&DVector::from_element(n, OFFSET)) else {
            continue;
        };
        let peak = x.max();
        if x[k].is_nan() || x[k] <= 0.0 || x.min() < -1e-9 * peak || peak > x[k] * (1.0 + 1e-9) {
            continue;
        }
        let candidate: Vec<f64> = x.iter().map(|v| v / peak).collect();
        if let Some(prev) = &accepted {
            if prev.iter().zip(&candidate).any(|(a, b)| (a - b).abs() > 1e-6) {
                return Err(format!("two eigen candidates disagree at k = {k}"));
            }
        } else {
            accepted = Some(candidate);
        }
    }
    accepted.ok_or_else(|| "no consistent Perron vector".to_string())
}

fn compare(label: &str, got: &[f64], want: &[f64], tol: f64) -> Result<(), String> {
    for (v, (g, w)) in got.iter().zip(want).enumerate() {
        if !close(*g, *w, tol) {
            return Err(format!("{label} at v{v}: library {g}, oracle {w}"));
        }
    }
    Ok(())
}

fn column(table: &CentralityTable, f: impl Fn(&archlayer::CentralityRecord) -> f64) -> Vec<f64> {
    table.records.iter().map(f).collect()
}

fn check_graph(g: &DependencyNetwork) -> Result<(), String> {
    let n = g.node_count();
    let adj = adjacency(g);
    let d = floyd_warshall(&adj);
    let table = compute_table::<f64>(g, &CentralityConfig::default()).map_err(|e| e.to_string())?;
    let harmonic = CentralityConfig { closeness: ClosenessVariant::Harmonic, ..CentralityConfig::default() };
    let table_h = compute_table::<f64>(g, &harmonic).map_err(|e| e.to_string())?;

    for (v, r) in table.records.iter().enumerate() {
        let (i, o) = ((0..n).filter(|&u| adj[u][v]).count(), (0..n).filter(|&w| adj[v][w]).count());
        if (r.in_degree, r.out_degree, r.degree) != (i, o, i + o) {
            return Err(format!("degree mismatch at v{v}"));
        }
    }
    compare("closeness", &column(&table, |r| r.closeness), &closeness(&d, ClosenessVariant::Reachability), 1e-9)?;
    compare(
        "harmonic closeness",
        &column(&table_h, |r| r.closeness),
        &closeness(&d, ClosenessVariant::Harmonic),
        1e-9,
    )?;
    let bet = betweenness(&adj, &d);
    compare("betweenness", &column(&table, |r| r.betweenness), &bet, 1e-9)?;
    let scale = if n >= 3 { 2.0 / (n * n - 3 * n + 2) as f64 } else { 0.0 };
    let norm: Vec<f64> = bet.iter().map(|b| b * scale).collect();
    compare("normalized betweenness", &column(&table, |r| r.norm_betweenness), &norm, 1e-9)?;
    compare("eigenvector", &column(&table, |r| r.eigenvector), &eigenvector(&adj)?, 1e-6)?;
    Ok(())
}

/// 200 seeded digraphs with 1 to 12 nodes.
pub fn run() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut edges = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.6);
        let g = random_digraph(&mut rng, n, p);
        edges += g.edge_count();
        check_graph(&g).map_err(|e| format!("graph {i} (n = {n}, {} edges): {e}", g.edge_count()))?;
    }
    within_budget(start, Duration::from_secs(30))?;
    Ok(format!("200 digraphs, {edges} edges, closeness/betweenness to 1e-9, eigenvector to 1e-6"))
}

/// Sinks have zero closeness and betweenness on 100 digraphs and 100 DAGs;
/// on the DAGs a sink of maximal in-degree also has the top eigenvector
/// score among sinks.
pub fn run_sinks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut eigen_misses = Vec::new();
    for i in 0..200 {
        let dag = i >= 100;
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(0.05..0.4);
        let g = if dag { random_dag(&mut rng, n, p) } else { random_digraph(&mut rng, n, p / 3.0) };
        let table = compute_table::<f64>(&g, &CentralityConfig::default()).map_err(|e| e.to_string())?;
        let sinks: Vec<_> = table.records.iter().filter(|r| r.out_degree == 0).collect();
        for r in &sinks {
            if r.closeness != 0.0 || r.betweenness != 0.0 {
                return Err(format!(
                    "graph {i}: sink {} has closeness {} betweenness {}",
                    r.node, r.closeness, r.betweenness
                ));
            }
        }
        if !dag || sinks.is_empty() {
            continue;
        }
        let top_in = sinks.iter().map(|r| r.in_degree).max().unwrap();
        let top_eigen = sinks.iter().map(|r| r.eigenvector).fold(0.0, f64::max);
        let best = sinks.iter().filter(|r| r.in_degree == top_in).map(|r| r.eigenvector).fold(0.0, f64::max);
        if best < top_eigen - 1e-9 {
            let leader = sinks.iter().find(|r| r.eigenvector == top_eigen).unwrap();
            eigen_misses.push(format!(
                "DAG {} (n = {n}): max in-degree sink scores {best:.4}, sink {} with in-degree {} scores {top_eigen:.4}",
                i - 100,
                leader.node,
                leader.in_degree
            ));
        }
    }
    if eigen_misses.is_empty() {
        Ok("200 graphs with zero sink closeness/betweenness; 100 DAGs with max in-degree sink on top".into())
    } else {
        for m in &eigen_misses {
            crate::support::note(m);
        }
        Err(format!(
            "{} of 100 DAGs: the sink with maximal in-degree does not hold the top eigenvector score among sinks",
            eigen_misses.len()
        ))
    }
}
