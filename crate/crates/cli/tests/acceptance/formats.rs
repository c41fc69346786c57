//! GML and score-CSV round trips on 100 random networks each. GML must give
//! back an isomorphic network (matched by element name, since ids are
//! renumbered) and re-emit byte-identically. CSV values must agree to six
//! significant digits and labels exactly.

use std::collections::BTreeSet;

use archlayer::centrality::{compute_table, emit_csv, parse_csv, CentralityConfig};
use archlayer::graph::{emit_gml, parse_gml};
use archlayer::{
    DependencyNetwork, EdgeKind, ElementKind, LayerAssignment, LayerLabel, NodeId, ProgramElement, Provenance,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::support::Outcome;

const NAME_PARTS: [&str; 10] = ["com", "acme", "Order", "A&B", "say \"hi\"", "x[0]", "#tag", "naïve", "a b", "$Inner"];
const ELEMENT_KINDS: [ElementKind; 4] =
    [ElementKind::Class, ElementKind::Interface, ElementKind::Package, ElementKind::Unknown];
const EDGE_KINDS: [EdgeKind; 4] = [EdgeKind::Imports, EdgeKind::Extends, EdgeKind::Implements, EdgeKind::Unknown];

fn random_network(rng: &mut ChaCha8Rng) -> DependencyNetwork {
    let n = rng.gen_range(1..=25);
    let mut g = DependencyNetwork::new();
    for i in 0..n {
        let parts: Vec<&str> = (0..rng.gen_range(1..=3)).map(|_| *NAME_PARTS.choose(rng).unwrap()).collect();
        let name = format!("{}.N{i}", parts.join("."));
        let id = NodeId::new(format!("id-{}", rng.gen_range(0..1_000_000) * 100 + i)).unwrap();
        g.add_node(ProgramElement::new(id, name, *ELEMENT_KINDS.choose(rng).unwrap()).unwrap()).unwrap();
    }
    let p = rng.gen_range(0.0..0.4);
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen_bool(p) {
                g.add_edge_by_index(s, t, *EDGE_KINDS.choose(rng).unwrap()).unwrap();
            }
        }
    }
    g
}

type Shape = (BTreeSet<(String, &'static str)>, BTreeSet<(String, String, &'static str)>);

fn shape(g: &DependencyNetwork) -> Shape {
    let nodes = g.elements().iter().map(|e| (e.name.clone(), e.kind.as_str())).collect();
    let edges = g
        .indexed_edges()
        .iter()
        .map(|e| (g.element(e.source).name.clone(), g.element(e.target).name.clone(), e.kind.as_str()))
        .collect();
    (nodes, edges)
}

fn same_sig6(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 5e-6 * a.abs().max(b.abs())
}

fn check_gml(g: &DependencyNetwork) -> Result<(), String> {
    let text = emit_gml(g);
    let back = parse_gml(&text).map_err(|e| e.to_string())?;
    if back.node_count() != g.node_count() || back.edge_count() != g.edge_count() || shape(&back) != shape(g) {
        return Err("parsed network is not isomorphic to the original".into());
    }
    if emit_gml(&back) != text {
        return Err("re-emitted GML differs".into());
    }
    Ok(())
}

fn check_csv(g: &DependencyNetwork, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let table = compute_table::<f64>(g, &CentralityConfig::default()).map_err(|e| e.to_string())?;
    let labels = if rng.gen_bool(0.5) {
        let pairs = table.records.iter().map(|r| (r.node.clone(), *LayerLabel::ALL.choose(rng).unwrap()));
        Some(LayerAssignment::from_pairs(pairs, Provenance::External { source: "random".into() }).unwrap())
    } else {
        None
    };
    let text = emit_csv(&table, labels.as_ref());
    let sheet = parse_csv::<f64>(&text).map_err(|e| e.to_string())?;
    if sheet.table.len() != table.len() {
        return Err("row count changed".into());
    }
    for (i, (a, b)) in table.records.iter().zip(&sheet.table.records).enumerate() {
        let exact = a.node == b.node
            && a.name == b.name
            && (a.in_degree, a.out_degree, a.degree) == (b.in_degree, b.out_degree, b.degree);
        let approx = [
            (a.norm_degree, b.norm_degree),
            (a.closeness, b.closeness),
            (a.betweenness, b.betweenness),
            (a.norm_betweenness, b.norm_betweenness),
            (a.eigenvector, b.eigenvector),
        ]
        .iter()
        .all(|&(x, y)| same_sig6(x, y));
        let label = labels.as_ref().map(|l| l.get(&a.node));
        if !exact || !approx || label.unwrap_or(None) != sheet.layers[i] {
            return Err(format!("row {i} ({}) differs after the round trip", a.node));
        }
    }
    if emit_csv(&sheet.table, labels.as_ref()) != text {
        return Err("re-emitted CSV differs".into());
    }
    Ok(())
}

pub fn run() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut edges = 0;
    for i in 0..100 {
        let g = random_network(&mut rng);
        edges += g.edge_count();
        check_gml(&g).map_err(|e| format!("GML instance {i}: {e}"))?;
        check_csv(&g, &mut rng).map_err(|e| format!("CSV instance {i}: {e}"))?;
    }
    Ok(format!("100 GML and 100 CSV instances ({edges} edges) round-trip"))
}
