//! Text-level dependency extraction from Java-style sources.
//!
//! Comments and string/char literals are blanked first, then the token stream
//! is matched against `package`, `import`, and type declaration headers
//! (`extends` / `implements`). No type checking is attempted: wildcard imports
//! are reported but never resolved, and nested types are folded into their
//! top-level unit.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::KeyValueConfig;
use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, EdgeKind, ElementKind, NodeId, ProgramElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    /// Fully-qualified type name. For static imports this is the declaring type.
    pub name: String,
    /// Identifier whose presence in the body marks the import as used.
    pub usage: String,
    pub is_static: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supertype {
    /// Name as written, possibly qualified (`q.B`), without type arguments.
    pub name: String,
    pub relation: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub path: PathBuf,
    pub package: String,
    pub unit_name: String,
    pub kind: ElementKind,
    pub imports: Vec<Import>,
    /// Packages imported with `.*`; they never produce edges.
    pub wildcard_imports: Vec<String>,
    pub supertypes: Vec<Supertype>,
    /// Source with comments and literals blanked out.
    pub body: String,
    pub warnings: Vec<String>,
}

impl SourceUnit {
    pub fn qualified_name(&self) -> String {
        if self.package.is_empty() {
            self.unit_name.clone()
        } else {
            format!("{}.{}", self.package, self.unit_name)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionConfig {
    pub exclude_prefixes: Vec<String>,
    pub drop_unused_imports: bool,
    pub include_package_nodes: bool,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            exclude_prefixes: vec!["java.".into(), "javax.".into()],
            drop_unused_imports: true,
            include_package_nodes: false,
        }
    }
}

impl ExtractionConfig {
    pub const KEYS: [&'static str; 3] = ["exclude_prefixes", "drop_unused_imports", "include_package_nodes"];

    pub fn with_overrides(mut self, kv: &KeyValueConfig) -> Result<Self> {
        if let Some(v) = kv.get_list("exclude_prefixes")? {
            self.exclude_prefixes = v;
        }
        if let Some(v) = kv.get("drop_unused_imports")? {
            self.drop_unused_imports = v;
        }
        if let Some(v) = kv.get("include_package_nodes")? {
            self.include_package_nodes = v;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.exclude_prefixes.iter().any(|p| p.is_empty()) {
            return Err(Error::Config("exclude prefixes must be non-empty".into()));
        }
        Ok(())
    }

    fn excluded(&self, name: &str) -> bool {
        self.exclude_prefixes.iter().any(|p| name.starts_with(p.as_str()))
    }
}

/// Diagnostics collected while building a network.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtractionReport {
    /// (unit, package) for every wildcard import.
    pub wildcard_imports: Vec<(String, String)>,
    /// (unit, name) for imports and supertypes that match no scanned unit.
    pub unresolved: Vec<(String, String)>,
    /// (unit, import) dropped because the imported name is never used.
    pub unused_imports: Vec<(String, String)>,
    /// Names skipped because they match an excluded prefix.
    pub excluded: usize,
    pub warnings: Vec<String>,
}

/// Replaces comments and string, text-block and char literals with spaces.
/// Newlines are preserved so positions keep their line numbers.
pub fn strip_comments_and_literals(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let blank = |c: char, out: &mut String| out.push(if c == '\n' { '\n' } else { ' ' });
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        if c == '/' && next == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                out.push(' ');
                i += 1;
            }
        } else if c == '/' && next == Some('*') {
            out.push_str("  ");
            i += 2;
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                blank(chars[i], &mut out);
                i += 1;
            }
            if i < chars.len() {
                out.push_str("  ");
                i += 2;
            }
        } else if c == '"' && next == Some('"') && chars.get(i + 2) == Some(&'"') {
            out.push_str("   ");
            i += 3;
            while i < chars.len()
                && !(chars[i] == '"' && chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"'))
            {
                if chars[i] == '\\' && i + 1 < chars.len() {
                    blank(chars[i], &mut out);
                    i += 1;
                }
                blank(chars[i], &mut out);
                i += 1;
            }
            if i < chars.len() {
                out.push_str("   ");
                i += 3;
            }
        } else if c == '"' || c == '\'' {
            out.push(' ');
            i += 1;
            while i < chars.len() && chars[i] != c && chars[i] != '\n' {
                if chars[i] == '\\' && i + 1 < chars.len() && chars[i + 1] != '\n' {
                    out.push(' ');
                    i += 1;
                }
                out.push(' ');
                i += 1;
            }
            if i < chars.len() && chars[i] == c {
                out.push(' ');
                i += 1;
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn tokens(stripped: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in stripped.char_indices() {
        if is_ident_char(c) {
            start.get_or_insert(i);
            continue;
        }
        if let Some(s) = start.take() {
            out.push(&stripped[s..i]);
        }
        if !c.is_whitespace() {
            out.push(&stripped[i..i + c.len_utf8()]);
        }
    }
    if let Some(s) = start {
        out.push(&stripped[s..]);
    }
    out
}

fn is_ident(token: &str) -> bool {
    token.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
}

/// Identifiers of the body, excluding `package` and `import` statements.
fn body_identifiers(stripped: &str) -> HashSet<&str> {
    let toks = tokens(stripped);
    let mut set = HashSet::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] == "package" || toks[i] == "import" {
            while i < toks.len() && toks[i] != ";" {
                i += 1;
            }
        } else if is_ident(toks[i]) {
            set.insert(toks[i]);
        }
        i += 1;
    }
    set
}

/// Reads a dotted name starting at `i`. Returns the name, whether it ended in
/// `.*`, and the position after it.
fn dotted_name(toks: &[&str], mut i: usize) -> (String, bool, usize) {
    let mut name = String::new();
    let mut wildcard = false;
    while i < toks.len() {
        if is_ident(toks[i]) {
            name.push_str(toks[i]);
            i += 1;
            if toks.get(i) == Some(&".") {
                if toks.get(i + 1) == Some(&"*") {
                    wildcard = true;
                    i += 2;
                    break;
                }
                name.push('.');
                i += 1;
                continue;
            }
        }
        break;
    }
    (name.trim_end_matches('.').to_string(), wildcard, i)
}

fn skip_balanced(toks: &[&str], mut i: usize, open: &str, close: &str) -> usize {
    let mut depth = 0usize;
    while i < toks.len() {
        if toks[i] == open {
            depth += 1;
        } else if toks[i] == close {
            depth = depth.saturating_sub(1);
            if depth == 0 {
                return i + 1;
            }
        }
        i += 1;
    }
    i
}

const DECL_KEYWORDS: [&str; 4] = ["class", "interface", "enum", "record"];

/// Scans one source file. Never fails: a file without a type declaration gets
/// its file stem as unit name and a warning.
pub fn scan_source(text: &str, path: impl AsRef<Path>) -> SourceUnit {
    let path = path.as_ref();
    let body = strip_comments_and_literals(text);
    let toks = tokens(&body);
    let mut unit = SourceUnit {
        path: path.to_path_buf(),
        package: String::new(),
        unit_name: String::new(),
        kind: ElementKind::Unknown,
        imports: Vec::new(),
        wildcard_imports: Vec::new(),
        supertypes: Vec::new(),
        body: String::new(),
        warnings: Vec::new(),
    };

    let mut depth = 0usize;
    let mut i = 0;
    while i < toks.len() {
        let tok = toks[i];
        match tok {
            "{" => depth += 1,
            "}" => depth = depth.saturating_sub(1),
            "package" if depth == 0 && unit.package.is_empty() => {
                let (name, _, next) = dotted_name(&toks, i + 1);
                unit.package = name;
                i = next;
                continue;
            }
            "import" if depth == 0 => {
                let is_static = toks.get(i + 1) == Some(&"static");
                let start = if is_static { i + 2 } else { i + 1 };
                let (name, wildcard, next) = dotted_name(&toks, start);
                i = next;
                if name.is_empty() {
                    continue;
                }
                match (is_static, wildcard) {
                    (false, true) => unit.wildcard_imports.push(name),
                    (false, false) => {
                        let usage = name.rsplit('.').next().unwrap_or(&name).to_string();
                        unit.imports.push(Import { name, usage, is_static });
                    }
                    (true, true) => {
                        let usage = name.rsplit('.').next().unwrap_or(&name).to_string();
                        unit.imports.push(Import { name, usage, is_static });
                    }
                    (true, false) => match name.rsplit_once('.') {
                        Some((owner, member)) => {
                            unit.imports.push(Import { name: owner.to_string(), usage: member.to_string(), is_static })
                        }
                        None => unit.warnings.push(format!("malformed static import `{name}`")),
                    },
                }
                continue;
            }
            kw if DECL_KEYWORDS.contains(&kw) => {
                let qualifier = i.checked_sub(1).map(|p| toks[p]);
                let name = toks.get(i + 1).copied().filter(|t| is_ident(t));
                if qualifier != Some(".") && qualifier != Some("::") {
                    if let Some(name) = name {
                        if depth == 0 && unit.unit_name.is_empty() {
                            unit.unit_name = name.to_string();
                            unit.kind = if kw == "interface" { ElementKind::Interface } else { ElementKind::Class };
                        }
                        i = scan_header(&toks, i + 2, &mut unit.supertypes);
                        continue;
                    }
                }
            }
            _ => {}
        }
        i += 1;
    }

    if unit.unit_name.is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("").to_string();
        unit.unit_name = if stem.is_empty() { "unnamed".into() } else { stem };
        unit.warnings.push(format!("no type declaration found in {}", path.display()));
    }
    let mut seen = HashSet::new();
    unit.supertypes.retain(|s| seen.insert(s.name.clone()));
    unit.body = body;
    unit
}

/// Parses a type declaration header after the type name, up to (not
/// including) the opening brace. Returns the position of the brace.
fn scan_header(toks: &[&str], mut i: usize, supertypes: &mut Vec<Supertype>) -> usize {
    let mut relation: Option<EdgeKind> = None;
    while i < toks.len() {
        match toks[i] {
            "{" | ";" => return i,
            "<" => i = skip_balanced(toks, i, "<", ">"),
            "(" => i = skip_balanced(toks, i, "(", ")"),
            "extends" => {
                relation = Some(EdgeKind::Extends);
                i += 1;
            }
            "implements" => {
                relation = Some(EdgeKind::Implements);
                i += 1;
            }
            "permits" => {
                relation = None;
                i += 1;
            }
            "@" => {
                let (_, _, next) = dotted_name(toks, i + 1);
                i = next.max(i + 1);
            }
            t if is_ident(t) => {
                let (name, _, next) = dotted_name(toks, i);
                if let Some(rel) = relation {
                    supertypes.push(Supertype { name, relation: rel });
                }
                i = next.max(i + 1);
            }
            _ => i += 1,
        }
    }
    i
}

/// Keeps only imports whose usage identifier appears in the body outside the
/// import section. `body_text` must already have comments and literals blanked.
pub fn filter_unused_imports(unit: &SourceUnit, body_text: &str) -> SourceUnit {
    let used = body_identifiers(body_text);
    let mut out = unit.clone();
    out.imports.retain(|imp| used.contains(imp.usage.as_str()));
    out
}

/// Scans many files in parallel; output order follows input order.
pub fn scan_sources(files: &[(PathBuf, String)]) -> Vec<SourceUnit> {
    files.par_iter().map(|(path, text)| scan_source(text, path)).collect()
}

pub fn build_network(units: &[SourceUnit], config: &ExtractionConfig) -> Result<DependencyNetwork> {
    build_network_with_report(units, config).map(|(network, _)| network)
}

/// Builds the dependency network: one node per top-level unit, edges for
/// resolvable imports and supertypes. Input order does not matter.
pub fn build_network_with_report(
    units: &[SourceUnit],
    config: &ExtractionConfig,
) -> Result<(DependencyNetwork, ExtractionReport)> {
    config.validate()?;
    if units.is_empty() {
        return Err(Error::Schema("no source units to build a network from".into()));
    }
    let mut report = ExtractionReport::default();
    let mut by_name: BTreeMap<String, &SourceUnit> = BTreeMap::new();
    for unit in units {
        let fq = unit.qualified_name();
        if config.excluded(&fq) {
            report.excluded += 1;
            continue;
        }
        if by_name.insert(fq.clone(), unit).is_some() {
            return Err(Error::DuplicateNode(fq));
        }
    }

    let mut network = DependencyNetwork::new();
    let mut index = HashMap::new();
    for (fq, unit) in &by_name {
        let idx = network.add_node(ProgramElement::new(NodeId::new(fq.clone())?, fq.clone(), unit.kind)?)?;
        index.insert(fq.clone(), idx);
        for w in &unit.warnings {
            report.warnings.push(format!("{fq}: {w}"));
        }
    }

    for (fq, unit) in &by_name {
        let source = index[fq];
        for pkg in &unit.wildcard_imports {
            report.wildcard_imports.push((fq.clone(), pkg.clone()));
        }
        let filtered;
        let unit: &SourceUnit = if config.drop_unused_imports {
            filtered = filter_unused_imports(unit, &unit.body);
            for imp in &unit.imports {
                if !filtered.imports.contains(imp) {
                    report.unused_imports.push((fq.clone(), imp.name.clone()));
                }
            }
            &filtered
        } else {
            unit
        };

        let mut link =
            |name: &str, resolved: Option<String>, kind: EdgeKind, report: &mut ExtractionReport| -> Result<()> {
                match resolved {
                    Some(target) if config.excluded(&target) => report.excluded += 1,
                    Some(target) => match index.get(&target) {
                        Some(&t) if t != source => {
                            network.add_edge_by_index(source, t, kind)?;
                        }
                        Some(_) => {}
                        None => report.unresolved.push((fq.clone(), name.to_string())),
                    },
                    None if config.excluded(name) => report.excluded += 1,
                    None => report.unresolved.push((fq.clone(), name.to_string())),
                }
                Ok(())
            };

        for sup in &unit.supertypes {
            let resolved = resolve_type(&sup.name, unit, &index);
            link(&sup.name, resolved, sup.relation, &mut report)?;
        }
        for imp in &unit.imports {
            let resolved = longest_known_prefix(&imp.name, &index);
            link(&imp.name, resolved, EdgeKind::Imports, &mut report)?;
        }
    }

    if config.include_package_nodes {
        add_package_nodes(&mut network, &by_name)?;
    }
    Ok((network, report))
}

/// Longest dotted prefix of `name` that is a scanned unit (`q.B.Inner` → `q.B`).
fn longest_known_prefix(name: &str, index: &HashMap<String, usize>) -> Option<String> {
    let mut candidate = name;
    loop {
        if index.contains_key(candidate) {
            return Some(candidate.to_string());
        }
        candidate = candidate.rsplit_once('.')?.0;
    }
}

fn resolve_type(name: &str, unit: &SourceUnit, index: &HashMap<String, usize>) -> Option<String> {
    let (head, rest) = match name.split_once('.') {
        Some((h, r)) => (h, Some(r)),
        None => (name, None),
    };
    if rest.is_some() {
        if let Some(found) = longest_known_prefix(name, index) {
            return Some(found);
        }
    }
    // Simple name (or the head of a qualified one): explicit import first,
    // then the unit's own package.
    for imp in unit.imports.iter().filter(|i| !i.is_static) {
        if imp.usage == head {
            let full = match rest {
                Some(r) => format!("{}.{}", imp.name, r),
                None => imp.name.clone(),
            };
            return longest_known_prefix(&full, index).or(Some(imp.name.clone()));
        }
    }
    let local = if unit.package.is_empty() { name.to_string() } else { format!("{}.{}", unit.package, name) };
    longest_known_prefix(&local, index).filter(|found| found.len() > unit.package.len())
}

fn add_package_nodes(network: &mut DependencyNetwork, units: &BTreeMap<String, &SourceUnit>) -> Result<()> {
    let package_of = |fq: &str| -> String {
        let pkg = &units[fq].package;
        if pkg.is_empty() {
            "(default)".to_string()
        } else {
            pkg.clone()
        }
    };
    let class_count = network.node_count();
    let mut packages: BTreeMap<String, usize> = BTreeMap::new();
    for fq in units.keys() {
        packages.entry(package_of(fq)).or_insert(0);
    }
    for (pkg, slot) in packages.iter_mut() {
        let id = NodeId::new(format!("package:{pkg}"))?;
        *slot = network.add_node(ProgramElement::new(id, pkg.clone(), ElementKind::Package)?)?;
    }
    let class_edges: Vec<_> = network.indexed_edges().to_vec();
    for e in class_edges {
        if e.source >= class_count || e.target >= class_count {
            continue;
        }
        let sp = packages[&package_of(&network.element(e.source).name)];
        let tp = packages[&package_of(&network.element(e.target).name)];
        if sp != tp {
            network.add_edge_by_index(sp, tp, e.kind)?;
        }
    }
    Ok(())
}
