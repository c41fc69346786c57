//! Runs extract, centrality, assign (ConStore rule thresholds) and evaluate
//! through the binary on the bundled toy tree, twice in separate
//! directories, and compares every produced file byte for byte.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use archlayer::centrality::parse_labels;
use archlayer::graph::parse_gml;
use archlayer::Provenance;

use crate::support::Outcome;

const BIN: &str = env!("CARGO_BIN_EXE_archlayer");

fn fixture(rel: &str) -> String {
    format!("{}/fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn pipeline(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let (src, labels) = (fixture("toy_src"), fixture("toy_labels.csv"));
    let steps: [&[&str]; 4] = [
        &["extract", &src, "--out", "toy.gml"],
        &["centrality", "toy.gml", "--out", "scores.csv"],
        &["assign", "scores.csv", "--mode", "rules", "--preset", "constore", "--out", "assigned.csv"],
        &["evaluate", "assigned.csv", &labels, "--out", "report.txt"],
    ];
    for args in steps {
        let out = Command::new(BIN)
            .args(args)
            .current_dir(dir)
            .env("SOURCE_DATE_EPOCH", "0")
            .env_remove("RUST_LOG")
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("`{}` exited with {}: {}", args[0], out.status, String::from_utf8_lossy(&out.stderr)));
        }
    }
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
        files.insert(path.file_name().unwrap().to_string_lossy().into_owned(), bytes);
    }
    Ok(files)
}

pub fn run() -> Outcome {
    let (a, b) = (tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?);
    let first = pipeline(a.path())?;
    let second = pipeline(b.path())?;
    if first != second {
        let differing: Vec<&String> =
            first.keys().chain(second.keys()).filter(|k| first.get(*k) != second.get(*k)).collect();
        return Err(format!("runs differ in {differing:?}"));
    }

    let text = |name: &str| String::from_utf8_lossy(&first[name]).into_owned();
    let network = parse_gml(&text("toy.gml")).map_err(|e| e.to_string())?;
    let assigned = parse_labels(&text("assigned.csv"), Provenance::External { source: "assigned".into() })
        .map_err(|e| e.to_string())?;
    if assigned.len() != network.node_count() || !network.elements().iter().all(|e| assigned.contains(&e.id)) {
        return Err(format!("assignment covers {} of {} nodes", assigned.len(), network.node_count()));
    }
    let accuracy = text("report.txt").lines().find(|l| l.starts_with("Accuracy")).unwrap_or("").to_string();
    Ok(format!(
        "{} nodes, {} edges, total assignment, {} files byte-identical across runs ({accuracy})",
        network.node_count(),
        network.edge_count(),
        first.len()
    ))
}
