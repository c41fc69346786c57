use super::{DependencyNetwork, EdgeKind, ElementKind, NodeId, ProgramElement};
use crate::error::{Error, Result};

/// Parses `source target [kind]` records, one per line. `#` starts a comment.
/// Nodes are created on first mention with kind `unknown`.
pub fn parse_edge_list(text: &str) -> Result<DependencyNetwork> {
    let mut network = DependencyNetwork::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 {
            return Err(Error::parse(line_no + 1, "expected `source target [kind]`"));
        }
        let kind = fields.get(2).map(|k| k.parse().unwrap_or(EdgeKind::Unknown)).unwrap_or(EdgeKind::Unknown);
        let source = node(&mut network, fields[0])?;
        let target = node(&mut network, fields[1])?;
        network.add_edge_by_index(source, target, kind)?;
    }
    Ok(network)
}

fn node(network: &mut DependencyNetwork, name: &str) -> Result<usize> {
    let id = NodeId::new(name)?;
    match network.index_of(&id) {
        Some(idx) => Ok(idx),
        None => network.add_node(ProgramElement::new(id, name, ElementKind::Unknown)?),
    }
}
