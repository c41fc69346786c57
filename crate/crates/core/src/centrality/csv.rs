//! Score table CSV: `Id, Label, In-Degree, Out-Degree, Closeness,
//! Betweenness, Eigenvector, Layer`.
//!
//! Header names are matched case-insensitively with spaces, hyphens and
//! underscores ignored. `Layer` is optional on input and left empty on output
//! for unassigned nodes. Degree totals and the normalized columns are not
//! stored; they are recomputed from the row count on parse.

use std::collections::HashMap;

use super::{CentralityRecord, CentralityTable};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::layer::{LayerAssignment, LayerLabel, Provenance};
use crate::scalar::{format_sig6, Scalar};

pub const CSV_HEADER: [&str; 8] =
    ["Id", "Label", "In-Degree", "Out-Degree", "Closeness", "Betweenness", "Eigenvector", "Layer"];

/// A parsed score table plus the optional per-row layer column.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSheet<T> {
    pub table: CentralityTable<T>,
    pub layers: Vec<Option<LayerLabel>>,
}

impl<T: Scalar> ScoreSheet<T> {
    pub fn is_fully_labeled(&self) -> bool {
        self.layers.iter().all(Option::is_some)
    }

    /// The layer column as an assignment; every row must carry a label.
    pub fn assignment(&self, provenance: Provenance) -> Result<LayerAssignment> {
        let pairs = self.table.records.iter().zip(&self.layers).map(|(r, l)| {
            l.map(|l| (r.node.clone(), l)).ok_or_else(|| Error::Schema(format!("row `{}` has no layer label", r.node)))
        });
        LayerAssignment::from_pairs(pairs.collect::<Result<Vec<_>>>()?, provenance)
    }
}

pub fn emit_csv<T: Scalar>(table: &CentralityTable<T>, assignment: Option<&LayerAssignment>) -> String {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in &table.records {
        let layer = assignment.and_then(|a| a.get(&r.node)).map(|l| l.code().to_string()).unwrap_or_default();
        writer
            .write_record([
                r.node.as_str().to_string(),
                r.name.clone(),
                r.in_degree.to_string(),
                r.out_degree.to_string(),
                format_sig6(r.closeness),
                format_sig6(r.betweenness),
                format_sig6(r.eigenvector),
                layer,
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn normalize_header(h: &str) -> String {
    h.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect()
}

pub fn parse_csv<T: Scalar>(text: &str) -> Result<ScoreSheet<T>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(false).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Schema(e.to_string()))?.clone();
    let columns: HashMap<String, usize> = headers.iter().enumerate().map(|(i, h)| (normalize_header(h), i)).collect();
    let column = |name: &str| -> Result<usize> {
        columns.get(&normalize_header(name)).copied().ok_or_else(|| Error::Schema(format!("missing column `{name}`")))
    };
    let id_col = column("Id")?;
    let label_col = column("Label")?;
    let in_col = column("In-Degree")?;
    let out_col = column("Out-Degree")?;
    let clos_col = column("Closeness")?;
    let bet_col = column("Betweenness")?;
    let eig_col = column("Eigenvector")?;
    let layer_col = column("Layer").ok();

    let mut records = Vec::new();
    let mut layers = Vec::new();
    for (row, result) in reader.records().enumerate() {
        let line = row + 2;
        let rec = result.map_err(|e| Error::parse(line, e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let score = |i: usize, name: &str| -> Result<T> {
            let raw = field(i);
            let value: T = raw.parse().map_err(|_| Error::parse(line, format!("{name} `{raw}` is not a number")))?;
            if !value.is_finite() {
                return Err(Error::parse(line, format!("{name} `{raw}` is not finite")));
            }
            Ok(value)
        };
        let count = |i: usize, name: &str| -> Result<usize> {
            let raw = field(i);
            let value: f64 = raw.parse().map_err(|_| Error::parse(line, format!("{name} `{raw}` is not a number")))?;
            if value < 0.0 || value.fract() != 0.0 || !value.is_finite() {
                return Err(Error::parse(line, format!("{name} `{raw}` is not a count")));
            }
            Ok(value as usize)
        };
        let node = NodeId::new(field(id_col)).map_err(|_| Error::parse(line, "empty Id"))?;
        let name = match field(label_col) {
            "" => node.as_str().to_string(),
            label => label.to_string(),
        };
        let in_degree = count(in_col, "In-Degree")?;
        let out_degree = count(out_col, "Out-Degree")?;
        records.push(CentralityRecord {
            node,
            name,
            in_degree,
            out_degree,
            degree: in_degree + out_degree,
            norm_degree: T::zero(),
            closeness: score(clos_col, "Closeness")?,
            betweenness: score(bet_col, "Betweenness")?,
            norm_betweenness: T::zero(),
            eigenvector: score(eig_col, "Eigenvector")?,
        });
        let layer = match layer_col.map(field) {
            None | Some("") => None,
            Some(raw) => {
                Some(raw.parse::<LayerLabel>().map_err(|_| Error::parse(line, format!("invalid layer `{raw}`")))?)
            }
        };
        layers.push(layer);
    }

    let n = records.len();
    for r in &mut records {
        if n >= 2 {
            r.norm_degree = T::from_count(r.degree) / T::from_count(n - 1);
        }
        if n >= 3 {
            r.norm_betweenness = T::lit(2.0) * r.betweenness / T::from_count(n * n + 2 - 3 * n);
        }
    }
    Ok(ScoreSheet { table: CentralityTable { records }, layers })
}

/// Reads only the `Id` and `Layer` columns; other columns are ignored and
/// every row must carry a layer.
pub fn parse_labels(text: &str, provenance: Provenance) -> Result<LayerAssignment> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Schema(e.to_string()))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| normalize_header(h) == normalize_header(name))
            .ok_or_else(|| Error::Schema(format!("missing column `{name}`")))
    };
    let (id_col, layer_col) = (find("Id")?, find("Layer")?);
    let mut out = LayerAssignment::new(provenance);
    for (row, result) in reader.records().enumerate() {
        let line = row + 2;
        let rec = result.map_err(|e| Error::parse(line, e.to_string()))?;
        let node = NodeId::new(rec.get(id_col).unwrap_or("")).map_err(|_| Error::parse(line, "empty Id"))?;
        let raw = rec.get(layer_col).unwrap_or("");
        if raw.is_empty() {
            return Err(Error::Schema(format!("row `{node}` has no layer label")));
        }
        let layer = raw.parse::<LayerLabel>().map_err(|_| Error::parse(line, format!("invalid layer `{raw}`")))?;
        out.insert(node, layer)?;
    }
    Ok(out)
}
