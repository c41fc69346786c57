//! Reader and writer for the GML subset used for dependency networks:
//! `graph`, `node` and `edge` blocks with `id`, `label`, `source`, `target`
//! and an optional `kind` (or `relationship`) string.

use std::collections::HashMap;
use std::fmt::Write;

use super::{DependencyNetwork, EdgeKind, ElementKind, NodeId, ProgramElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Key(String),
    Int(i64),
    Real(f64),
    Str(String),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '[' {
                chars.next();
                tokens.push((Token::Open, line_no));
            } else if c == ']' {
                chars.next();
                tokens.push((Token::Close, line_no));
            } else if c == '"' {
                chars.next();
                let mut value = String::new();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    value.push(c);
                }
                if !closed {
                    return Err(Error::parse(line_no, "unterminated string"));
                }
                tokens.push((Token::Str(unescape(&value)), line_no));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Key(line[start..end].to_string()), line_no));
            } else if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || matches!(c, '-' | '+' | '.') {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let raw = &line[start..end];
                let token = if let Ok(v) = raw.parse::<i64>() {
                    Token::Int(v)
                } else if let Ok(v) = raw.parse::<f64>() {
                    Token::Real(v)
                } else {
                    return Err(Error::parse(line_no, format!("invalid number `{raw}`")));
                };
                tokens.push((token, line_no));
            } else {
                return Err(Error::parse(line_no, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(tokens)
}

fn unescape(s: &str) -> String {
    s.replace("&quot;", "\"").replace("&amp;", "&")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;")
}

#[derive(Debug, Clone)]
enum Value {
    Int(i64),
    Real(f64),
    Str(String),
    List(Vec<Entry>),
}

#[derive(Debug, Clone)]
struct Entry {
    key: String,
    value: Value,
    line: usize,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    last_line: usize,
}

impl Parser {
    fn list(&mut self, nested: bool) -> Result<Vec<Entry>> {
        let mut entries = Vec::new();
        loop {
            let Some((token, line)) = self.tokens.get(self.pos).cloned() else {
                if nested {
                    return Err(Error::parse(self.last_line, "missing `]`"));
                }
                return Ok(entries);
            };
            self.pos += 1;
            let key = match token {
                Token::Close if nested => return Ok(entries),
                Token::Key(k) => k,
                other => return Err(Error::parse(line, format!("expected a key, found {other:?}"))),
            };
            let Some((token, vline)) = self.tokens.get(self.pos).cloned() else {
                return Err(Error::parse(line, format!("key `{key}` has no value")));
            };
            self.pos += 1;
            let value = match token {
                Token::Int(v) => Value::Int(v),
                Token::Real(v) => Value::Real(v),
                Token::Str(s) => Value::Str(s),
                Token::Open => Value::List(self.list(true)?),
                other => return Err(Error::parse(vline, format!("invalid value for `{key}`: {other:?}"))),
            };
            entries.push(Entry { key, value, line });
        }
    }
}

/// Parses GML text into a network. Node ids become [`NodeId`]s, labels
/// become element names.
pub fn parse_gml(text: &str) -> Result<DependencyNetwork> {
    let tokens = tokenize(text)?;
    let last_line = tokens.last().map(|t| t.1).unwrap_or(1);
    let mut parser = Parser { tokens, pos: 0, last_line };
    let top = parser.list(false)?;
    let graph = top
        .iter()
        .find(|e| e.key == "graph")
        .ok_or_else(|| Error::parse(1, "missing top-level `graph [...]` block"))?;
    let Value::List(items) = &graph.value else {
        return Err(Error::parse(graph.line, "`graph` must be a list"));
    };

    let mut network = DependencyNetwork::new();
    let mut by_gml_id: HashMap<i64, usize> = HashMap::new();
    for item in items.iter().filter(|e| e.key == "node") {
        let Value::List(attrs) = &item.value else {
            return Err(Error::parse(item.line, "`node` must be a list"));
        };
        let id = int_attr(attrs, "id").ok_or_else(|| Error::parse(item.line, "node without integer `id`"))?;
        let label =
            str_attr(attrs, &["label"]).ok_or_else(|| Error::parse(item.line, "node without string `label`"))?;
        let kind = str_attr(attrs, &["kind", "type"])
            .map(|k| k.parse().unwrap_or(ElementKind::Unknown))
            .unwrap_or(ElementKind::Unknown);
        let node_id = NodeId::new(id.to_string())?;
        let element = ProgramElement::new(node_id, label, kind).map_err(|e| Error::parse(item.line, e.to_string()))?;
        let idx = network.add_node(element)?;
        by_gml_id.insert(id, idx);
    }
    for item in items.iter().filter(|e| e.key == "edge") {
        let Value::List(attrs) = &item.value else {
            return Err(Error::parse(item.line, "`edge` must be a list"));
        };
        let endpoint = |key: &str| -> Result<usize> {
            let id =
                int_attr(attrs, key).ok_or_else(|| Error::parse(item.line, format!("edge without integer `{key}`")))?;
            by_gml_id.get(&id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()))
        };
        let (source, target) = (endpoint("source")?, endpoint("target")?);
        let kind = str_attr(attrs, &["kind", "relationship"])
            .map(|k| k.parse().unwrap_or(EdgeKind::Unknown))
            .unwrap_or(EdgeKind::Unknown);
        network.add_edge_by_index(source, target, kind)?;
    }
    Ok(network)
}

fn int_attr(attrs: &[Entry], key: &str) -> Option<i64> {
    attrs.iter().find(|e| e.key == key).and_then(|e| match e.value {
        Value::Int(v) => Some(v),
        Value::Real(v) if v.fract() == 0.0 => Some(v as i64),
        _ => None,
    })
}

fn str_attr(attrs: &[Entry], keys: &[&str]) -> Option<String> {
    attrs.iter().find(|e| keys.contains(&e.key.as_str())).and_then(|e| match &e.value {
        Value::Str(s) => Some(s.clone()),
        _ => None,
    })
}

/// Writes the network as GML. Nodes are ordered by (name, id) and renumbered
/// densely from 0; edges are ordered by (source, target).
pub fn emit_gml(network: &DependencyNetwork) -> String {
    let mut order: Vec<usize> = (0..network.node_count()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (network.element(a), network.element(b));
        ea.name.cmp(&eb.name).then_with(|| ea.id.cmp(&eb.id))
    });
    let mut renumber = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }

    let mut out = String::from("graph [\n  directed 1\n");
    for (new, &old) in order.iter().enumerate() {
        let element = network.element(old);
        let _ = write!(out, "  node [ id {new} label \"{}\"", escape(&element.name));
        if element.kind != ElementKind::Unknown {
            let _ = write!(out, " kind \"{}\"", element.kind.as_str());
        }
        out.push_str(" ]\n");
    }
    let mut edges: Vec<(usize, usize, EdgeKind)> =
        network.indexed_edges().iter().map(|e| (renumber[e.source], renumber[e.target], e.kind)).collect();
    edges.sort_by_key(|&(s, t, _)| (s, t));
    for (s, t, kind) in edges {
        let _ = write!(out, "  edge [ source {s} target {t}");
        if kind != EdgeKind::Unknown {
            let _ = write!(out, " kind \"{}\"", kind.as_str());
        }
        out.push_str(" ]\n");
    }
    out.push_str("]\n");
    out
}
