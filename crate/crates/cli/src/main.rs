//! `ig` — the institutional-grammar analysis pipeline.
//!
//! Subcommands correspond to pipeline stages (`ingest`, `train`,
//! `extract`, `cluster`, `analyze`, `report`) plus `all`, which chains
//! them. Flags mirror the pipeline configuration one-to-one; a TOML config
//! file may supply any subset of them, with flags taking precedence.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ig_core::pipeline::{self, PipelineConfig, Stage};
use ig_core::CorpusFormat;

#[derive(Parser)]
#[command(
    name = "ig",
    version,
    about = "Parse policy statements into grammatical components and quantify governance structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the corpus and write its normalized form to the run directory
    Ingest(StageArgs),
    /// Train the per-token component classifier on gold annotations
    Train(StageArgs),
    /// Label every token and group labels into component spans
    Extract(StageArgs),
    /// Embed and cluster extracted agent/object texts into topics
    Cluster(StageArgs),
    /// Categorize components and compute histograms, crosstabs, and tests
    Analyze(StageArgs),
    /// Render tables, charts, and the consolidated run report
    Report(StageArgs),
    /// Run every stage in order
    All(StageArgs),
}

impl Command {
    fn split(self) -> (Stage, StageArgs) {
        match self {
            Command::Ingest(args) => (Stage::Ingest, args),
            Command::Train(args) => (Stage::Train, args),
            Command::Extract(args) => (Stage::Extract, args),
            Command::Cluster(args) => (Stage::Cluster, args),
            Command::Analyze(args) => (Stage::Analyze, args),
            Command::Report(args) => (Stage::Report, args),
            Command::All(args) => (Stage::All, args),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct StageArgs {
    /// TOML config file supplying any subset of the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus file (JSONL or CSV)
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Gold annotations (JSONL), required to train
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Model file path (default: model.tsv inside the run directory)
    #[arg(long)]
    model: Option<PathBuf>,
    /// Taxonomy config mapping clusters/terms to categories
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    /// Training and shuffling seed
    #[arg(long, env = "IG_SEED")]
    seed: Option<u64>,
    /// Training epochs
    #[arg(long)]
    epochs: Option<u32>,
    /// Smallest group that counts as a cluster
    #[arg(long)]
    min_cluster_size: Option<usize>,
    /// Cosine-distance threshold where agglomeration stops
    #[arg(long)]
    distance_threshold: Option<f64>,
    /// Embedding dimension
    #[arg(long)]
    embed_dim: Option<usize>,
    /// How many deontic columns the tested crosstab keeps
    #[arg(long)]
    top_k: Option<usize>,
    /// Run directory for all artifacts
    #[arg(long)]
    out: Option<PathBuf>,
    /// Corpus input format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    corpus: Option<PathBuf>,
    gold: Option<PathBuf>,
    model: Option<PathBuf>,
    taxonomy: Option<PathBuf>,
    seed: Option<u64>,
    epochs: Option<u32>,
    min_cluster_size: Option<usize>,
    distance_threshold: Option<f64>,
    embed_dim: Option<usize>,
    top_k: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
}

fn resolve(args: StageArgs) -> Result<PipelineConfig> {
    let file = match &args.config {
        Some(path) => {
            let content = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            toml::from_str::<ConfigFile>(&content)
                .with_context(|| format!("cannot parse config file {}", path.display()))?
        }
        None => ConfigFile::default(),
    };
    let corpus = args
        .corpus
        .or(file.corpus)
        .context("--corpus is required (flag or config file)")?;
    let out = args
        .out
        .or(file.out)
        .context("--out is required (flag or config file)")?;
    let format = match args.format {
        Some(FormatArg::Jsonl) => CorpusFormat::Jsonl,
        Some(FormatArg::Csv) => CorpusFormat::Csv,
        None => match file.format.as_deref() {
            Some(s) => s.parse().map_err(anyhow::Error::msg)?,
            None => CorpusFormat::Jsonl,
        },
    };

    let mut config = PipelineConfig::new(corpus, out);
    config.gold = args.gold.or(file.gold);
    config.model = args.model.or(file.model);
    config.taxonomy = args.taxonomy.or(file.taxonomy);
    if let Some(seed) = args.seed.or(file.seed) {
        config.seed = seed;
    }
    if let Some(epochs) = args.epochs.or(file.epochs) {
        config.epochs = epochs;
    }
    if let Some(size) = args.min_cluster_size.or(file.min_cluster_size) {
        config.min_cluster_size = size;
    }
    if let Some(threshold) = args.distance_threshold.or(file.distance_threshold) {
        config.distance_threshold = threshold;
    }
    if let Some(dim) = args.embed_dim.or(file.embed_dim) {
        config.embed_dim = dim;
    }
    if let Some(k) = args.top_k.or(file.top_k) {
        config.top_k = k;
    }
    config.format = format;
    Ok(config)
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let (stage, args) = cli.command.split();
    let outcome =
        resolve(args).and_then(|config| pipeline::run(stage, &config).map_err(anyhow::Error::from));
    if let Err(e) = outcome {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
