//! Straight-line rendering of the two rule passes, compared with the library
//! on 10,000 centrality profiles under five threshold configs.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use archlayer::rules::assign_table;
use archlayer::{CentralityRecord, CentralityTable, LayerConfig, LayerLabel, NodeId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::support::{within_budget, Outcome};

use LayerLabel::{Lower, Middle, Upper};

/// Which branch decided the label, for coverage reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Branch {
    Agree,
    Isolated,
    Eigen,
    Sink,
    Source,
    Between,
    Close,
    InHigh,
    OutHigh,
    Fallback,
}

fn oracle(r: &CentralityRecord, c: &LayerConfig) -> (LayerLabel, LayerLabel, LayerLabel, Branch) {
    let inn = r.in_degree as f64;
    let out = r.out_degree as f64;

    let in_part;
    let out_part;
    if r.in_degree == 0 && r.out_degree == 0 {
        in_part = Lower;
        out_part = Lower;
    } else {
        if inn > c.delta_il {
            in_part = Lower;
        } else if inn < c.delta_iu {
            in_part = Upper;
        } else {
            in_part = Middle;
        }
        if out > c.delta_ou {
            out_part = Upper;
        } else if out < c.delta_ol {
            out_part = Lower;
        } else {
            out_part = Middle;
        }
    }

    if in_part == out_part {
        return (in_part, out_part, out_part, Branch::Agree);
    }
    let (label, branch) = if r.in_degree == 0 && r.out_degree == 0 {
        (Lower, Branch::Isolated)
    } else if r.eigenvector >= c.delta_e {
        (Lower, Branch::Eigen)
    } else if r.out_degree == 0 && r.in_degree > 0 {
        (Lower, Branch::Sink)
    } else if r.in_degree == 0 && r.out_degree > 0 {
        (Upper, Branch::Source)
    } else if r.betweenness > c.delta_b {
        (Middle, Branch::Between)
    } else if r.closeness > c.delta_c {
        (Upper, Branch::Close)
    } else if inn > c.delta_il {
        (Lower, Branch::InHigh)
    } else if out > c.delta_ou {
        (Upper, Branch::OutHigh)
    } else {
        (Middle, Branch::Fallback)
    };
    (in_part, out_part, label, branch)
}

fn configs() -> Vec<(&'static str, LayerConfig)> {
    vec![
        ("constore", LayerConfig::constore()),
        ("health-watcher", LayerConfig::health_watcher()),
        ("test-architecture", LayerConfig::test_architecture()),
        ("banded", LayerConfig::new(6.0, 2.0, 2.0, 6.0, 4.0, 0.5, 0.9)),
        ("tight", LayerConfig::new(3.0, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0)),
    ]
}

/// Values drawn half from the threshold boundaries, half at random.
fn profiles(count: usize) -> Vec<CentralityRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut degree_pool: Vec<usize> = (0..=12).collect();
    degree_pool.extend([0, 0, 1, 2, 3, 5, 6, 10, 11]);
    let mut between_pool = vec![0.0, 4.0, 6.0, 9.0];
    let mut unit_pool = vec![0.0, 0.5, 0.6, 0.8, 0.9, 1.0];
    for (_, c) in configs() {
        between_pool.push(c.delta_b);
        unit_pool.extend([c.delta_c, c.delta_e]);
    }
    let n = count as f64;
    (0..count)
        .map(|i| {
            let in_degree = *degree_pool.choose(&mut rng).unwrap();
            let out_degree = *degree_pool.choose(&mut rng).unwrap();
            let pick = |rng: &mut ChaCha8Rng, pool: &[f64], max: f64| {
                if rng.gen_bool(0.5) {
                    *pool.choose(rng).unwrap()
                } else {
                    rng.gen_range(0.0..max)
                }
            };
            let betweenness = pick(&mut rng, &between_pool, 20.0);
            CentralityRecord {
                node: NodeId::new(format!("p{i}")).unwrap(),
                name: format!("p{i}"),
                in_degree,
                out_degree,
                degree: in_degree + out_degree,
                norm_degree: (in_degree + out_degree) as f64 / (n - 1.0),
                closeness: pick(&mut rng, &unit_pool, 1.0),
                betweenness,
                norm_betweenness: 2.0 * betweenness / (n * n - 3.0 * n + 2.0),
                eigenvector: pick(&mut rng, &unit_pool, 1.0),
            }
        })
        .collect()
}

pub fn run() -> Outcome {
    let start = Instant::now();
    let table = CentralityTable { records: profiles(10_000) };
    let mut pairs = BTreeSet::new();
    let mut branches = BTreeSet::new();
    for (name, config) in configs() {
        config.validate().map_err(|e| format!("{name}: {e}"))?;
        let assigned = assign_table(&table, &config).map_err(|e| format!("{name}: {e}"))?;
        if assigned.len() != table.len() {
            return Err(format!("{name}: {} of {} profiles labeled", assigned.len(), table.len()));
        }
        for r in &table.records {
            let (i, o, want, branch) = oracle(r, &config);
            pairs.insert((i, o));
            branches.insert(branch);
            let got = assigned.get(&r.node).ok_or_else(|| format!("{name}: {} unlabeled", r.node))?;
            if got != want {
                return Err(format!("{name}: {} ({r:?}) library {got}, oracle {want}", r.node));
            }
        }
    }
    if pairs.len() != 9 {
        return Err(format!("only {} of 9 partition pairs exercised", pairs.len()));
    }
    // Isolated nodes always agree on (lower, lower), so that refinement
    // branch is unreachable; every other one must fire.
    if branches.len() != 9 || branches.contains(&Branch::Isolated) {
        return Err(format!("unexpected branch coverage: {branches:?}"));
    }
    within_budget(start, Duration::from_secs(5))?;
    Ok("10000 profiles x 5 configs, all 9 partition pairs and every reachable branch hit".into())
}
