//! Classifier sanity on a planted system of 20 nodes per layer with sparse
//! downward edges: 1-NN memorizes its training set, the tree generalizes to
//! a held-out half, training is deterministic and models survive a
//! save/load cycle.

use archlayer::centrality::{compute_table, CentralityConfig};
use archlayer::eval::{generate_synthetic, SyntheticSpec};
use archlayer::ml::{load_model, predict, save_model, train, ModelKind, TrainConfig};
use archlayer::{CentralityTable, LabeledDataset, TrainedModel};

use crate::support::Outcome;

fn fit(data: &LabeledDataset, config: &TrainConfig<f64>) -> Result<TrainedModel, String> {
    train(data, config).map_err(|e| format!("{}: {e}", config.kind.as_str()))
}

pub fn run() -> Outcome {
    let spec = SyntheticSpec { downward: 0.3, seed: 7, ..SyntheticSpec::new(20, 20, 20) };
    let (g, truth) = generate_synthetic(&spec).map_err(|e| e.to_string())?;
    let table = compute_table::<f64>(&g, &CentralityConfig::default()).map_err(|e| e.to_string())?;
    let all = LabeledDataset::from_table(&table, &truth).map_err(|e| e.to_string())?;

    // 1-NN can only reproduce its labels when equal features share a label.
    for (i, a) in all.rows.iter().enumerate() {
        if let Some(b) = all.rows[..i].iter().find(|b| b.features == a.features && b.layer != a.layer) {
            return Err(format!("fixture has conflicting duplicates {} and {}", a.node, b.node));
        }
    }
    let one_nn = fit(&all, &TrainConfig { k: 1, ..TrainConfig::new(ModelKind::Knn) })?;
    if one_nn.accuracy(&all) != 1.0 {
        return Err(format!("1-NN training accuracy {:.3}", one_nn.accuracy(&all)));
    }

    let (train_half, test_half): (Vec<_>, Vec<_>) =
        table.records.iter().cloned().enumerate().partition(|(i, _)| i % 2 == 0);
    let strip = |v: Vec<(usize, archlayer::CentralityRecord)>| CentralityTable {
        records: v.into_iter().map(|p| p.1).collect(),
    };
    let (train_table, test_table) = (strip(train_half), strip(test_half));
    let train_set = LabeledDataset::from_table(&train_table, &truth).map_err(|e| e.to_string())?;
    let test_set = LabeledDataset::from_table(&test_table, &truth).map_err(|e| e.to_string())?;
    let tree = fit(&train_set, &TrainConfig::new(ModelKind::DecisionTree))?;
    let held_out = tree.accuracy(&test_set);
    if held_out < 0.9 {
        return Err(format!("decision tree held-out accuracy {held_out:.3} < 0.9"));
    }

    for kind in [ModelKind::Knn, ModelKind::DecisionTree, ModelKind::LinearSvm] {
        let config = TrainConfig::new(kind);
        let first = fit(&train_set, &config)?;
        let second = fit(&train_set, &config)?;
        let text = save_model(&first);
        if first != second || text != save_model(&second) {
            return Err(format!("{} training is not deterministic", kind.as_str()));
        }
        let loaded: TrainedModel = load_model(&text).map_err(|e| format!("{}: {e}", kind.as_str()))?;
        let before = predict(&first, &table).map_err(|e| e.to_string())?;
        let after = predict(&loaded, &table).map_err(|e| e.to_string())?;
        if !before.same_labels(&after) || loaded != first {
            return Err(format!("{} predictions change after save/load", kind.as_str()));
        }
    }
    Ok(format!(
        "1-NN reproduces {} labels, tree held-out accuracy {held_out:.3} on {} rows, 3 trainers deterministic and round-trip",
        all.len(),
        test_set.len()
    ))
}
