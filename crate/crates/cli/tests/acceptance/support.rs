use std::io::Write;
use std::time::{Duration, Instant};

use archlayer::{DependencyNetwork, EdgeKind, ElementKind, ProgramElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `Ok` carries a short summary, `Err` the reason for failing.
pub type Outcome = Result<String, String>;

/// Writes one line to the real stdout, bypassing test output capture.
pub fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

pub fn note(line: &str) {
    say(&format!("    {line}"));
}

/// Random simple digraph on `n` nodes named `v0..`; each ordered pair is an
/// edge with probability `p`.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DependencyNetwork {
    let mut g = nodes(n);
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen_bool(p) {
                g.add_edge_by_index(s, t, EdgeKind::Imports).unwrap();
            }
        }
    }
    g
}

/// Random DAG: edges only go forward along a random ordering of the nodes.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DependencyNetwork {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut g = nodes(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge_by_index(order[i], order[j], EdgeKind::Imports).unwrap();
            }
        }
    }
    g
}

fn nodes(n: usize) -> DependencyNetwork {
    let mut g = DependencyNetwork::new();
    for i in 0..n {
        g.add_node(ProgramElement::named(&format!("v{i}"), ElementKind::Class).unwrap()).unwrap();
    }
    g
}

pub fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    if spent > budget {
        return Err(format!("took {:.2}s, budget {:.0}s", spent.as_secs_f64(), budget.as_secs_f64()));
    }
    Ok(())
}

/// `|a - b| <= tol * max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
