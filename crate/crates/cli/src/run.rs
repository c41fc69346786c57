use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use archlayer::centrality::{compute_table, emit_csv, parse_csv, parse_labels, CentralityConfig};
use archlayer::config::KeyValueConfig;
use archlayer::eval::{confusion, generate_synthetic, matched_config, metrics, sweep_config, SweepGrid, SyntheticSpec};
use archlayer::extractor::{build_network_with_report, scan_sources, ExtractionConfig};
use archlayer::graph::{emit_dot, emit_gml, parse_gml};
use archlayer::ml::{self, load_model, save_model, LabeledDataset, ModelKind, TrainConfig};
use archlayer::rules::assign_table;
use archlayer::{Error, LayerAssignment, LayerConfig, NodeId, Provenance, ScoreSheet};
use globset::{Glob, GlobSet, GlobSetBuilder};
use walkdir::WalkDir;

use crate::output::{read_text, RunManifest};
use crate::{
    AssignArgs, CentralityArgs, Cli, Command, EvaluateArgs, ExportDotArgs, ExtractArgs, Mode, ReportFormat, SweepArgs,
    SynthArgs, TrainArgs,
};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn empty(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Train(_) | Error::Spec(_) | Error::Numerical(_) => {
                CliError::config(e.to_string())
            }
            Error::EmptyMatrix => CliError::empty(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

fn known_keys() -> Vec<&'static str> {
    let mut keys = Vec::new();
    keys.extend(LayerConfig::KEYS);
    keys.extend(TrainConfig::<f64>::KEYS);
    keys.extend(ExtractionConfig::KEYS);
    keys.extend(CentralityConfig::<f64>::KEYS);
    keys
}

struct Context {
    kv: KeyValueConfig,
    config_path: Option<PathBuf>,
}

impl Context {
    fn load(path: Option<PathBuf>) -> Result<Self, CliError> {
        let kv = match &path {
            None => KeyValueConfig::default(),
            Some(p) => {
                KeyValueConfig::parse(&read_text(p)?).map_err(|e| CliError::config(format!("{}: {e}", p.display())))?
            }
        };
        let known = known_keys();
        for key in kv.unknown_keys(&known) {
            log::warn!("ignoring unknown config key `{key}`");
        }
        Ok(Self { kv, config_path: path })
    }

    fn manifest(&self, command: &str) -> RunManifest {
        let mut m = RunManifest::new(command);
        if let Some(p) = &self.config_path {
            m.input(p);
        }
        m
    }

    fn centrality(&self) -> Result<CentralityConfig<f64>, CliError> {
        Ok(CentralityConfig::default().with_overrides(&self.kv)?)
    }
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let ctx = Context::load(cli.config)?;
    match cli.command {
        Command::Extract(a) => extract(&ctx, a),
        Command::Centrality(a) => centrality(&ctx, a),
        Command::Assign(a) => assign(&ctx, a),
        Command::Train(a) => train(&ctx, a),
        Command::Evaluate(a) => evaluate(&ctx, a),
        Command::Sweep(a) => sweep(&ctx, a),
        Command::Synth(a) => synth(&ctx, a),
        Command::ExportDot(a) => export_dot(&ctx, a),
    }
}

fn glob_set(patterns: &[String]) -> Result<GlobSet, CliError> {
    let mut b = GlobSetBuilder::new();
    for p in patterns {
        b.add(Glob::new(p).map_err(|e| CliError::config(format!("invalid glob `{p}`: {e}")))?);
    }
    b.build().map_err(|e| CliError::config(e.to_string()))
}

/// Source files under `root` in path order.
fn collect_sources(root: &Path, include: &GlobSet, exclude: &GlobSet) -> Result<Vec<(PathBuf, String)>, CliError> {
    let meta = std::fs::metadata(root).map_err(|e| CliError::input(format!("cannot read {}: {e}", root.display())))?;
    if !meta.is_dir() {
        return Err(CliError::input(format!("{} is not a directory", root.display())));
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::input(format!("cannot walk {}: {e}", root.display())))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
        if !include.is_match(rel) || exclude.is_match(rel) {
            continue;
        }
        let bytes = std::fs::read(entry.path())
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", entry.path().display())))?;
        let text = match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(e) => {
                log::warn!("{}: not valid UTF-8, decoding lossily", rel.display());
                String::from_utf8_lossy(e.as_bytes()).into_owned()
            }
        };
        files.push((rel.to_path_buf(), text));
    }
    Ok(files)
}

fn extract(ctx: &Context, a: ExtractArgs) -> Result<(), CliError> {
    let config = ExtractionConfig::default().with_overrides(&ctx.kv)?;
    let files = collect_sources(&a.src_root, &glob_set(&a.include)?, &glob_set(&a.exclude)?)?;
    if files.is_empty() {
        return Err(CliError::empty(format!("no source files under {}", a.src_root.display())));
    }
    let units = scan_sources(&files);
    let (network, report) = build_network_with_report(&units, &config)?;
    if network.is_empty() {
        return Err(CliError::empty("every scanned unit was excluded"));
    }
    log::info!("scanned {} files: {} nodes, {} edges", files.len(), network.node_count(), network.edge_count());
    for w in &report.warnings {
        log::warn!("{w}");
    }
    if !report.wildcard_imports.is_empty() {
        log::warn!("{} wildcard imports ignored", report.wildcard_imports.len());
        for (unit, pkg) in &report.wildcard_imports {
            log::debug!("wildcard import {pkg}.* in {unit}");
        }
    }
    if !report.unresolved.is_empty() {
        log::warn!("{} names did not resolve to a scanned unit", report.unresolved.len());
        for (unit, name) in &report.unresolved {
            log::debug!("unresolved {name} in {unit}");
        }
    }
    if !report.unused_imports.is_empty() {
        log::info!("{} unused imports dropped", report.unused_imports.len());
    }
    log::info!("{} references to excluded namespaces skipped", report.excluded);

    let mut m = ctx.manifest("extract");
    m.input(&a.src_root);
    m.set("exclude_prefixes", config.exclude_prefixes.join(","));
    m.set("drop_unused_imports", config.drop_unused_imports);
    m.set("include_package_nodes", config.include_package_nodes);
    m.set("include", a.include.join(","));
    m.set("exclude", a.exclude.join(","));
    m.write(&a.out, &emit_gml(&network))?;
    m.finish()
}

fn centrality(ctx: &Context, a: CentralityArgs) -> Result<(), CliError> {
    let network = parse_gml(&read_text(&a.input)?)?;
    if network.is_empty() {
        return Err(CliError::input(format!("{} has no nodes", a.input.display())));
    }
    let config = ctx.centrality()?;
    let table = compute_table(&network, &config)?;
    let mut m = ctx.manifest("centrality");
    m.input(&a.input);
    m.set("eigen_offset", config.eigen.damping_offset);
    m.set("eigen_method", format!("{:?}", config.eigen.method));
    m.set("closeness", format!("{:?}", config.closeness));
    m.write(&a.out, &emit_csv(&table, None))?;
    m.finish()
}

fn read_sheet(path: &Path) -> Result<ScoreSheet, CliError> {
    parse_csv(&read_text(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn rule_config(ctx: &Context, preset: &str, overrides: &[String]) -> Result<LayerConfig, CliError> {
    let base = LayerConfig::preset(preset).ok_or_else(|| CliError::config(format!("unknown preset `{preset}`")))?;
    let mut kv = ctx.kv.clone();
    for o in overrides {
        let (k, v) = o.split_once('=').ok_or_else(|| CliError::config(format!("expected KEY=VALUE, found `{o}`")))?;
        kv.set(k.trim(), v.trim());
    }
    Ok(base.with_overrides(&kv)?)
}

fn assign(ctx: &Context, a: AssignArgs) -> Result<(), CliError> {
    let sheet = read_sheet(&a.input)?;
    if sheet.table.is_empty() {
        return Err(CliError::input(format!("{} has no rows", a.input.display())));
    }
    let mut m = ctx.manifest("assign");
    m.input(&a.input);
    let assignment = match a.mode {
        Mode::Rules => {
            let config = rule_config(ctx, &a.preset, &a.overrides)?;
            m.set("mode", "rules");
            m.set("preset", &a.preset);
            m.set_kv_text(&config.to_kv_text());
            assign_table(&sheet.table, &config)?
        }
        Mode::Model => {
            let path = a.model.as_ref().ok_or_else(|| CliError::config("--mode model needs --model"))?;
            let model = load_model::<f64>(&read_text(path)?)?;
            m.input(path);
            m.set("mode", "model");
            m.set("model_kind", model.kind());
            ml::predict(&model, &sheet.table)?
        }
    };
    let [lower, middle, upper] = assignment.counts();
    log::info!("assigned {} nodes: {lower} lower, {middle} middle, {upper} upper", assignment.len());
    m.write(&a.out, &emit_csv(&sheet.table, Some(&assignment)))?;
    m.finish()
}

fn train(ctx: &Context, a: TrainArgs) -> Result<(), CliError> {
    let sheet = read_sheet(&a.input)?;
    let dataset =
        LabeledDataset::from_sheet(&sheet).map_err(|e| CliError::input(format!("{}: {e}", a.input.display())))?;
    if dataset.is_empty() {
        return Err(CliError::input(format!("{} has no rows", a.input.display())));
    }
    if dataset.class_counts().iter().filter(|&&c| c > 0).count() < 2 {
        return Err(CliError::config("training data holds a single class"));
    }
    let mut config = TrainConfig::new(ModelKind::DecisionTree).with_overrides(&ctx.kv)?;
    if let Some(kind) = a.algorithm {
        config.kind = kind;
    }
    config.k = a.k.unwrap_or(config.k);
    config.max_depth = a.max_depth.unwrap_or(config.max_depth);
    config.min_leaf = a.min_leaf.unwrap_or(config.min_leaf);
    config.epochs = a.epochs.unwrap_or(config.epochs);
    config.learning_rate = a.learning_rate.unwrap_or(config.learning_rate);
    config.regularization = a.regularization.unwrap_or(config.regularization);
    config.seed = a.seed.unwrap_or(config.seed);

    let model = ml::train(&dataset, &config)?;
    log::info!("training accuracy {:.4} on {} rows", model.accuracy(&dataset), dataset.len());

    let mut m = ctx.manifest("train");
    m.input(&a.input);
    m.set("algorithm", config.kind);
    m.set("k", config.k);
    m.set("max_depth", config.max_depth);
    m.set("min_leaf", config.min_leaf);
    m.set("epochs", config.epochs);
    m.set("learning_rate", config.learning_rate);
    m.set("regularization", config.regularization);
    m.set("seed", config.seed);
    m.write(&a.out, &save_model(&model))?;
    m.finish()
}

/// `Id` and `Layer` columns of a CSV; every row must be labeled.
fn labels_of(path: &Path) -> Result<archlayer::LayerAssignment, CliError> {
    parse_labels(&read_text(path)?, Provenance::External { source: path.display().to_string() })
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn evaluate(ctx: &Context, a: EvaluateArgs) -> Result<(), CliError> {
    let predicted = labels_of(&a.predicted)?;
    let actual = labels_of(&a.actual)?;
    let report = metrics::<f64>(&confusion(&predicted, &actual)?)?;
    log::info!("accuracy {:.4} over {} nodes", report.accuracy, report.matrix.total());
    let text = match a.format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Csv => report.to_csv(),
    };
    let mut m = ctx.manifest("evaluate");
    m.input(&a.predicted);
    m.input(&a.actual);
    m.set("format", format!("{:?}", a.format).to_lowercase());
    m.write(&a.out, &text)?;
    m.finish()
}

fn sweep(ctx: &Context, a: SweepArgs) -> Result<(), CliError> {
    let network = parse_gml(&read_text(&a.graph)?)?;
    let table = compute_table(&network, &ctx.centrality()?)?;
    let actual = labels_of(&a.labels)?;
    let base = rule_config(ctx, &a.preset, &[])?;
    let grid_kv = KeyValueConfig::parse(&read_text(&a.grid)?)
        .map_err(|e| CliError::config(format!("{}: {e}", a.grid.display())))?;
    let grid = SweepGrid::from_config(&grid_kv, base)?;
    let outcome = sweep_config(&network, &table, &actual, &grid)?;
    for (config, reason) in &outcome.skipped {
        log::warn!("skipped cell {}: {reason}", config.to_kv_text().trim_end().replace('\n', " "));
    }
    if outcome.results.is_empty() {
        return Err(CliError::empty("no valid grid cell"));
    }
    log::info!("{} cells evaluated, best accuracy {:.4}", outcome.results.len(), outcome.results[0].report.accuracy);
    let mut csv = String::from("rank,delta_il,delta_iu,delta_ol,delta_ou,delta_b,delta_c,delta_e,accuracy,macro_f1\n");
    for (i, r) in outcome.results.iter().enumerate() {
        let c = &r.config;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            i + 1,
            c.delta_il,
            c.delta_iu,
            c.delta_ol,
            c.delta_ou,
            c.delta_b,
            c.delta_c,
            c.delta_e,
            r.report.accuracy,
            r.report.macro_f1
        );
    }
    let mut m = ctx.manifest("sweep");
    m.input(&a.graph);
    m.input(&a.labels);
    m.input(&a.grid);
    m.set("preset", &a.preset);
    m.write(&a.out, &csv)?;
    m.finish()
}

fn synth(ctx: &Context, a: SynthArgs) -> Result<(), CliError> {
    let spec = SyntheticSpec {
        nodes_per_layer: [a.lower, a.middle, a.upper],
        downward: a.downward,
        violation: a.violation,
        crosscut: a.crosscut,
        seed: a.seed,
    };
    let (generated, planted) = generate_synthetic(&spec)?;
    // Key the sheet by GML ids so it lines up with anything read from the GML.
    let gml = emit_gml(&generated);
    let network = parse_gml(&gml)?;
    let mut truth = LayerAssignment::new(planted.provenance().clone());
    for element in network.elements() {
        // generated nodes use their name as id
        let label = planted.get(&NodeId::new(element.name.as_str())?).expect("every generated node is labeled");
        truth.insert(element.id.clone(), label)?;
    }
    let table = compute_table(&network, &ctx.centrality()?)?;
    let mut m = ctx.manifest("synth");
    m.set("lower", a.lower);
    m.set("middle", a.middle);
    m.set("upper", a.upper);
    m.set("downward", a.downward);
    m.set("violation", a.violation);
    m.set("crosscut", a.crosscut);
    m.set("seed", a.seed);
    m.write(&a.out_gml, &gml)?;
    m.write(&a.out_csv, &emit_csv(&table, Some(&truth)))?;
    if let Some(path) = &a.out_config {
        m.write(path, &matched_config::<f64>(&spec).to_kv_text())?;
    }
    m.finish()
}

fn export_dot(ctx: &Context, a: ExportDotArgs) -> Result<(), CliError> {
    let network = parse_gml(&read_text(&a.input)?)?;
    let mut m = ctx.manifest("export-dot");
    m.input(&a.input);
    let assignment = match &a.assignment {
        None => None,
        Some(path) => {
            m.input(path);
            let labels = labels_of(path)?;
            if labels.len() != network.node_count() {
                return Err(CliError::input(format!(
                    "{} labels {} nodes, the network has {}",
                    path.display(),
                    labels.len(),
                    network.node_count()
                )));
            }
            Some(labels)
        }
    };
    m.write(&a.out, &emit_dot(&network, assignment.as_ref())?)?;
    m.finish()
}
