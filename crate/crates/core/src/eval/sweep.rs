use rayon::prelude::*;

use crate::centrality::CentralityTable;
use crate::config::KeyValueConfig;
use crate::error::{Error, Result};
use crate::graph::DependencyNetwork;
use crate::layer::LayerAssignment;
use crate::rules::{assign_rules, LayerConfig};
use crate::scalar::Scalar;

use super::{confusion, metrics, MetricsReport};

/// A scored cell, or a cell whose config failed validation.
type CellOutcome<T> = std::result::Result<SweepResult<T>, (LayerConfig<T>, String)>;

/// Candidate values for each threshold, in `LayerConfig` field order
/// (il, iu, ol, ou, b, c, e).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid<T> {
    pub values: [Vec<T>; 7],
    /// Supplies the rule order for every cell.
    pub base: LayerConfig<T>,
}

const GRID_KEYS: [&str; 7] = ["delta_il", "delta_iu", "delta_ol", "delta_ou", "delta_b", "delta_c", "delta_e"];

impl<T: Scalar> SweepGrid<T> {
    /// The one-cell grid holding `base`.
    pub fn single(base: LayerConfig<T>) -> Self {
        let values = [
            vec![base.delta_il],
            vec![base.delta_iu],
            vec![base.delta_ol],
            vec![base.delta_ou],
            vec![base.delta_b],
            vec![base.delta_c],
            vec![base.delta_e],
        ];
        Self { values, base }
    }

    /// Comma-separated value lists per `delta_*` key; missing keys keep the
    /// base value.
    pub fn from_config(kv: &KeyValueConfig, base: LayerConfig<T>) -> Result<Self> {
        let mut grid = Self::single(base);
        for (slot, key) in grid.values.iter_mut().zip(GRID_KEYS) {
            if let Some(list) = kv.get_list::<T>(key)? {
                if list.is_empty() {
                    return Err(Error::Config(format!("empty value list for `{key}`")));
                }
                *slot = list;
            }
        }
        Ok(grid)
    }

    pub fn cells(&self) -> usize {
        self.values.iter().map(Vec::len).product()
    }

    /// Config for cell `index`, with the last parameter varying fastest.
    fn cell(&self, mut index: usize) -> LayerConfig<T> {
        let mut picked = [T::zero(); 7];
        for p in (0..7).rev() {
            let len = self.values[p].len();
            picked[p] = self.values[p][index % len];
            index /= len;
        }
        LayerConfig {
            delta_il: picked[0],
            delta_iu: picked[1],
            delta_ol: picked[2],
            delta_ou: picked[3],
            delta_b: picked[4],
            delta_c: picked[5],
            delta_e: picked[6],
            order: self.base.order.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub config: LayerConfig<T>,
    pub report: MetricsReport<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome<T> {
    /// Sorted by accuracy, best first; equal accuracies keep grid order.
    pub results: Vec<SweepResult<T>>,
    /// Cells rejected by config validation, with the reason.
    pub skipped: Vec<(LayerConfig<T>, String)>,
}

/// Runs rule assignment for every grid cell and scores it against `actual`.
pub fn sweep_config<T: Scalar>(
    network: &DependencyNetwork,
    table: &CentralityTable<T>,
    actual: &LayerAssignment,
    grid: &SweepGrid<T>,
) -> Result<SweepOutcome<T>> {
    if let Some(p) = grid.values.iter().position(Vec::is_empty) {
        return Err(Error::Config(format!("empty value list for `{}`", GRID_KEYS[p])));
    }
    table.check_covers(network)?;
    let evaluated: Vec<Result<CellOutcome<T>>> = (0..grid.cells())
        .into_par_iter()
        .map(|i| {
            let config = grid.cell(i);
            if let Err(e) = config.validate() {
                return Ok(Err((config, e.to_string())));
            }
            let predicted = assign_rules(network, table, &config)?;
            let report = metrics(&confusion(&predicted, actual)?)?;
            Ok(Ok(SweepResult { config, report }))
        })
        .collect();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for cell in evaluated {
        match cell? {
            Ok(r) => results.push(r),
            Err(s) => skipped.push(s),
        }
    }
    results.sort_by(|a, b| b.report.accuracy.partial_cmp(&a.report.accuracy).unwrap_or(std::cmp::Ordering::Equal));
    Ok(SweepOutcome { results, skipped })
}
