//! `archlayer`: recover a three-layer architecture from Java sources.
//!
//! Every command reads files and writes files; diagnostics go to stderr.
//! Exit codes: 0 success, 2 input error, 3 empty result, 4 invalid
//! configuration.

mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use archlayer::ml::{ModelKind, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "archlayer", version, about = "Layer recovery from module dependency networks")]
struct Cli {
    /// Flat `key = value` file with thresholds, extraction and training keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Only print warnings and errors.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan a Java source tree and write its dependency network as GML.
    Extract(ExtractArgs),
    /// Score every node of a GML network and write the score CSV.
    Centrality(CentralityArgs),
    /// Fill the Layer column of a score CSV with rules or a trained model.
    Assign(AssignArgs),
    /// Train a classifier on a labeled score CSV.
    Train(TrainArgs),
    /// Compare predicted and actual labels and write a metrics report.
    Evaluate(EvaluateArgs),
    /// Evaluate a grid of rule thresholds against reference labels.
    Sweep(SweepArgs),
    /// Generate a planted three-layer system.
    Synth(SynthArgs),
    /// Write a GML network as Graphviz DOT, optionally clustered by layer.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
struct ExtractArgs {
    /// Root of the Java source tree.
    src_root: PathBuf,
    /// GML output.
    #[arg(long)]
    out: PathBuf,
    /// Glob (relative to the root) selecting source files.
    #[arg(long, default_value = "**/*.java")]
    include: Vec<String>,
    /// Glob (relative to the root) of files to skip.
    #[arg(long)]
    exclude: Vec<String>,
}

#[derive(Debug, Args)]
struct CentralityArgs {
    /// Network in GML.
    input: PathBuf,
    /// Score CSV output.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rules,
    Model,
}

#[derive(Debug, Args)]
struct AssignArgs {
    /// Score CSV; an existing Layer column is replaced.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Rules)]
    mode: Mode,
    /// Threshold preset: constore, health-watcher or test-architecture.
    #[arg(long, default_value = "constore")]
    preset: String,
    /// Model file, required with `--mode model`.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Override one config key, e.g. `--set delta_b=4`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Score CSV output with the Layer column filled.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Score CSV with a complete Layer column.
    input: PathBuf,
    /// knn, decision_tree or linear_svm [default: decision_tree].
    #[arg(long)]
    algorithm: Option<ModelKind>,
    /// Neighbours for knn [default: 5].
    #[arg(long)]
    k: Option<usize>,
    /// Tree depth limit [default: 5].
    #[arg(long)]
    max_depth: Option<usize>,
    /// Smallest leaf the tree may create [default: 1].
    #[arg(long)]
    min_leaf: Option<usize>,
    /// SVM passes over the data [default: 200].
    #[arg(long)]
    epochs: Option<usize>,
    /// SVM step size [default: 0.01].
    #[arg(long)]
    learning_rate: Option<f64>,
    /// SVM L2 penalty [default: 0.01].
    #[arg(long)]
    regularization: Option<f64>,
    /// Seed for the SVM row order [default: 20].
    #[arg(long)]
    seed: Option<u64>,
    /// Model file output.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// CSV with Id and Layer columns (a score CSV works).
    predicted: PathBuf,
    /// Reference labels, same format.
    actual: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Report output.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Network in GML.
    graph: PathBuf,
    /// Score CSV whose Layer column holds the reference labels.
    labels: PathBuf,
    /// `key = v1, v2, ...` file listing candidate values per `delta_*` key.
    #[arg(long)]
    grid: PathBuf,
    /// Supplies the rule order and any key missing from the grid.
    #[arg(long, default_value = "constore")]
    preset: String,
    /// Ranking CSV output, best first.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Nodes in the lower layer.
    #[arg(long, default_value_t = 5)]
    lower: usize,
    /// Nodes in the middle layer.
    #[arg(long, default_value_t = 5)]
    middle: usize,
    /// Nodes in the upper layer.
    #[arg(long, default_value_t = 5)]
    upper: usize,
    /// Probability of each edge to a node one layer down.
    #[arg(long, default_value_t = 1.0)]
    downward: f64,
    /// Probability of each edge to a node one layer up.
    #[arg(long, default_value_t = 0.0)]
    violation: f64,
    /// Extra lower nodes that every other node depends on.
    #[arg(long, default_value_t = 0)]
    crosscut: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Network output (GML).
    #[arg(long)]
    out_gml: PathBuf,
    /// Score CSV with the planted layers in the Layer column.
    #[arg(long)]
    out_csv: PathBuf,
    /// Also write the thresholds matched to the generator.
    #[arg(long)]
    out_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportDotArgs {
    /// Network in GML.
    input: PathBuf,
    /// Score CSV with a complete Layer column.
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// DOT output.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "warn" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .format_target(false)
        .init();
    match run::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}
