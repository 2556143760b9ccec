//! File-based orchestration of the full analysis pipeline.
//!
//! Each stage reads its prerequisites from the output directory and writes
//! its own artifacts there, so running stages one at a time is equivalent
//! to running `all`. Artifacts:
//!
//! | stage   | writes |
//! |---------|--------|
//! | ingest  | `corpus.jsonl` (normalized) |
//! | train   | model file (default `model.tsv`) |
//! | extract | `extraction.jsonl` (one component span per line) |
//! | cluster | `clusters_{agents,objects}.jsonl`, `topics_{agents,objects}.jsonl` |
//! | analyze | `records.jsonl`, `stats.json` |
//! | report  | `report.md`, `tables/*.csv`, `charts/*.svg`, `run.json` |

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::classifier::{self, ComponentLabel, ComponentSpan, TokenClassifierModel};
use crate::clustering::{
    self, ClusterAssignment, ClusterId, ClusterParams, ClusterRecord, TopicRecord,
};
use crate::corpus::{self, Corpus, CorpusFormat};
use crate::error::{Error, Result};
use crate::report::{self, CrosstabReport, ExclusionCounts, RunReport};
use crate::stats::{self, AnalysisRecord, Axis, RecordField};
use crate::syntax;
use crate::taxonomy::{self, CategoryMap};

/// Number of keywords stored per topic.
const TOPIC_TERM_COUNT: usize = 10;

/// Resolved configuration for one run. The seed and every path end up in
/// `run.json`, which is sufficient to repeat the run exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub corpus: PathBuf,
    pub gold: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub seed: u64,
    pub epochs: u32,
    pub min_cluster_size: usize,
    pub distance_threshold: f64,
    pub embed_dim: usize,
    pub top_k: usize,
    pub out: PathBuf,
    pub format: CorpusFormat,
}

impl PipelineConfig {
    pub fn new(corpus: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            corpus: corpus.into(),
            gold: None,
            model: None,
            taxonomy: None,
            seed: 42,
            epochs: 10,
            min_cluster_size: 2,
            distance_threshold: 0.6,
            embed_dim: clustering::DEFAULT_EMBED_DIM,
            top_k: 3,
            out: out.into(),
            format: CorpusFormat::Jsonl,
        }
    }

    pub fn model_path(&self) -> PathBuf {
        self.model
            .clone()
            .unwrap_or_else(|| self.out.join("model.tsv"))
    }

    fn cluster_params(&self) -> ClusterParams {
        ClusterParams {
            min_cluster_size: self.min_cluster_size,
            distance_threshold: self.distance_threshold,
        }
    }

    fn settings(&self) -> BTreeMap<String, String> {
        let path_str = |p: &Option<PathBuf>| {
            p.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let mut map = BTreeMap::new();
        map.insert("corpus".into(), self.corpus.display().to_string());
        map.insert("gold".into(), path_str(&self.gold));
        map.insert("model".into(), self.model_path().display().to_string());
        map.insert("taxonomy".into(), path_str(&self.taxonomy));
        map.insert("seed".into(), self.seed.to_string());
        map.insert("epochs".into(), self.epochs.to_string());
        map.insert("min_cluster_size".into(), self.min_cluster_size.to_string());
        map.insert(
            "distance_threshold".into(),
            self.distance_threshold.to_string(),
        );
        map.insert("embed_dim".into(), self.embed_dim.to_string());
        map.insert("top_k".into(), self.top_k.to_string());
        map.insert("out".into(), self.out.display().to_string());
        map.insert("format".into(), self.format.to_string());
        map
    }
}

/// Pipeline stages, runnable individually or chained via [`Stage::All`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Train,
    Extract,
    Cluster,
    Analyze,
    Report,
    All,
}

impl std::str::FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ingest" => Ok(Stage::Ingest),
            "train" => Ok(Stage::Train),
            "extract" => Ok(Stage::Extract),
            "cluster" => Ok(Stage::Cluster),
            "analyze" => Ok(Stage::Analyze),
            "report" => Ok(Stage::Report),
            "all" => Ok(Stage::All),
            other => Err(format!("unknown stage `{other}`")),
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Ingest => "ingest",
            Stage::Train => "train",
            Stage::Extract => "extract",
            Stage::Cluster => "cluster",
            Stage::Analyze => "analyze",
            Stage::Report => "report",
            Stage::All => "all",
        })
    }
}

/// Runs one stage (or the whole chain) against the configuration.
pub fn run(stage: Stage, config: &PipelineConfig) -> Result<()> {
    validate_inputs(stage, config)?;
    match stage {
        Stage::Ingest => ingest(config),
        Stage::Train => train(config),
        Stage::Extract => extract(config),
        Stage::Cluster => cluster(config),
        Stage::Analyze => analyze(config),
        Stage::Report => report_stage(config),
        Stage::All => {
            ingest(config)?;
            if config.gold.is_some() {
                train(config)?;
            }
            extract(config)?;
            cluster(config)?;
            analyze(config)?;
            report_stage(config)
        }
    }
}

fn validate_inputs(stage: Stage, config: &PipelineConfig) -> Result<()> {
    let check = |path: &Path| -> Result<()> {
        fs::metadata(path)
            .map(|_| ())
            .map_err(|e| Error::io(path, e))
    };
    if matches!(stage, Stage::Ingest | Stage::All) {
        check(&config.corpus)?;
    }
    if matches!(stage, Stage::Train) {
        let gold = config
            .gold
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("the train stage requires a gold path".into()))?;
        check(gold)?;
    }
    if matches!(stage, Stage::All) {
        if let Some(gold) = &config.gold {
            check(gold)?;
        }
    }
    if matches!(stage, Stage::Analyze | Stage::All) {
        if let Some(taxonomy) = &config.taxonomy {
            check(taxonomy)?;
        }
    }
    Ok(())
}

fn normalized_corpus_path(config: &PipelineConfig) -> PathBuf {
    config.out.join("corpus.jsonl")
}

fn extraction_path(config: &PipelineConfig) -> PathBuf {
    config.out.join("extraction.jsonl")
}

fn require(path: &Path, producing_stage: Stage) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::MissingArtifact {
            path: path.to_path_buf(),
            stage: producing_stage.to_string(),
        })
    }
}

fn write_jsonl<T: Serialize>(path: &Path, items: impl IntoIterator<Item = T>) -> Result<()> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(&item).expect("artifact record serializes"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    content
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

fn load_normalized_corpus(config: &PipelineConfig) -> Result<Corpus> {
    let path = normalized_corpus_path(config);
    require(&path, Stage::Ingest)?;
    corpus::load_corpus(&path, CorpusFormat::Jsonl)
}

fn ingest(config: &PipelineConfig) -> Result<()> {
    let corpus = corpus::load_corpus(&config.corpus, config.format)?;
    fs::create_dir_all(&config.out).map_err(|e| Error::io(&config.out, e))?;
    corpus::save_corpus(&corpus, normalized_corpus_path(config), CorpusFormat::Jsonl)
}

fn train(config: &PipelineConfig) -> Result<()> {
    let gold_path = config
        .gold
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("the train stage requires a gold path".into()))?;
    let corpus = load_normalized_corpus(config)?;
    let gold = corpus::load_gold(gold_path, &corpus, config.format)?;
    let model = classifier::train(&corpus, &gold, config.epochs, config.seed)?;
    let model_path = config.model_path();
    if let Some(parent) = model_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    model.save(&model_path)
}

fn extract(config: &PipelineConfig) -> Result<()> {
    let corpus = load_normalized_corpus(config)?;
    let model_path = config.model_path();
    require(&model_path, Stage::Train)?;
    let model = TokenClassifierModel::load(&model_path)?;
    let mut spans = Vec::new();
    for statement in corpus.statements() {
        let annotated = syntax::annotate_syntax(&statement.tokens);
        let labels = classifier::predict(&model, &annotated);
        spans.extend(classifier::group_spans(
            &labels,
            &statement.tokens,
            &statement.statement_id,
        )?);
    }
    write_jsonl(&extraction_path(config), spans)
}

fn component_items(spans: &[ComponentSpan], label: ComponentLabel) -> Vec<(String, String)> {
    spans
        .iter()
        .filter(|s| s.label == label)
        .map(|s| (s.component_ref(), s.text.clone()))
        .collect()
}

fn write_assignment(
    config: &PipelineConfig,
    kind: &str,
    assignment: &ClusterAssignment,
) -> Result<()> {
    let records: Vec<ClusterRecord> = assignment
        .items
        .iter()
        .map(|(component_ref, cluster_id)| ClusterRecord {
            component_ref: component_ref.clone(),
            cluster_id: *cluster_id,
        })
        .collect();
    write_jsonl(&config.out.join(format!("clusters_{kind}.jsonl")), records)?;
    let topics: Vec<TopicRecord> = assignment
        .topics
        .iter()
        .map(|(cluster_id, terms)| TopicRecord {
            cluster_id: *cluster_id,
            terms: terms.clone(),
        })
        .collect();
    write_jsonl(&config.out.join(format!("topics_{kind}.jsonl")), topics)
}

fn cluster(config: &PipelineConfig) -> Result<()> {
    let path = extraction_path(config);
    require(&path, Stage::Extract)?;
    let spans: Vec<ComponentSpan> = read_jsonl(&path)?;
    for (kind, label) in [
        ("agents", ComponentLabel::Agent),
        ("objects", ComponentLabel::Object),
    ] {
        let items = component_items(&spans, label);
        let assignment = clustering::assign_components(
            &items,
            &config.cluster_params(),
            config.embed_dim,
            TOPIC_TERM_COUNT,
        )?;
        write_assignment(config, kind, &assignment)?;
    }
    Ok(())
}

fn read_assignment(config: &PipelineConfig, kind: &str) -> Result<ClusterAssignment> {
    let path = config.out.join(format!("clusters_{kind}.jsonl"));
    require(&path, Stage::Cluster)?;
    let records: Vec<ClusterRecord> = read_jsonl(&path)?;
    let items = records
        .into_iter()
        .map(|r| (r.component_ref, r.cluster_id))
        .collect();
    Ok(ClusterAssignment::new(items, BTreeMap::new()))
}

struct Categorized {
    records: Vec<AnalysisRecord>,
    exclusions: ExclusionCounts,
}

fn categorize_records(
    corpus: &Corpus,
    spans: &[ComponentSpan],
    agent_assignment: &ClusterAssignment,
    object_assignment: &ClusterAssignment,
    map: &CategoryMap,
) -> Result<Categorized> {
    let mut by_statement: BTreeMap<&str, Vec<&ComponentSpan>> = BTreeMap::new();
    for span in spans {
        by_statement
            .entry(span.statement_id.as_str())
            .or_default()
            .push(span);
    }
    let mut records = Vec::new();
    let mut exclusions = ExclusionCounts::default();
    for statement in corpus.statements() {
        let spans = by_statement
            .get(statement.statement_id.as_str())
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        let first = |label: ComponentLabel| spans.iter().find(|s| s.label == label);

        let mut record = AnalysisRecord {
            statement_id: statement.statement_id.clone(),
            agent_category: None,
            object_category: None,
            deontic_class: None,
            deontic_text: None,
        };
        if let Some(span) = first(ComponentLabel::Agent) {
            if agent_assignment.cluster_of(&span.component_ref()) == Some(ClusterId::Noise) {
                exclusions.agent_noise += 1;
            }
            record.agent_category = taxonomy::categorize_agent(span, agent_assignment, map)?;
            if record.agent_category.is_none() {
                exclusions.agent_other_bucket += 1;
            }
        }
        if let Some(span) = first(ComponentLabel::Object) {
            if object_assignment.cluster_of(&span.component_ref()) == Some(ClusterId::Noise) {
                exclusions.object_noise += 1;
            }
            record.object_category = taxonomy::categorize_object(span, object_assignment, map)?;
            if record.object_category.is_none() {
                exclusions.object_other_bucket += 1;
            }
        }
        if let Some(span) = first(ComponentLabel::Deontic) {
            record.deontic_class = Some(taxonomy::classify_deontic(&span.text));
            record.deontic_text = Some(span.text.clone());
        }
        if record.has_any_field() {
            records.push(record);
        }
    }
    Ok(Categorized {
        records,
        exclusions,
    })
}

fn crosstab_report(
    records: &[AnalysisRecord],
    row_key: RecordField,
    top_k: usize,
) -> CrosstabReport {
    let full = stats::crosstab(records, row_key, RecordField::Deontic);
    let filtered = stats::top_k_filter(&full, Axis::Cols, top_k);
    match stats::chi_square(&filtered) {
        Ok(result) => CrosstabReport {
            full,
            filtered,
            chi_square: Some(result),
            skipped: None,
        },
        Err(e) => CrosstabReport {
            full,
            filtered,
            chi_square: None,
            skipped: Some(e.to_string()),
        },
    }
}

fn analyze(config: &PipelineConfig) -> Result<()> {
    let corpus = load_normalized_corpus(config)?;
    let extraction = extraction_path(config);
    require(&extraction, Stage::Extract)?;
    let spans: Vec<ComponentSpan> = read_jsonl(&extraction)?;
    let agent_assignment = read_assignment(config, "agents")?;
    let object_assignment = read_assignment(config, "objects")?;
    let map = match &config.taxonomy {
        Some(path) => taxonomy::load_taxonomy(path)?,
        None => CategoryMap::default(),
    };

    let categorized =
        categorize_records(&corpus, &spans, &agent_assignment, &object_assignment, &map)?;
    write_jsonl(&config.out.join("records.jsonl"), &categorized.records)?;

    let mut label_counts: BTreeMap<String, u64> = BTreeMap::new();
    for span in &spans {
        *label_counts.entry(span.label.to_string()).or_insert(0) += 1;
    }

    let records = &categorized.records;
    let report = RunReport {
        settings: config.settings(),
        corpus_digest: corpus.digest(),
        statement_count: corpus.total_statements(),
        label_counts,
        agent_histogram: stats::histogram(records, RecordField::Agent),
        object_histogram: stats::histogram(records, RecordField::Object),
        deontic_histogram: stats::histogram(records, RecordField::Deontic),
        agent_deontic: crosstab_report(records, RecordField::Agent, config.top_k),
        object_deontic: crosstab_report(records, RecordField::Object, config.top_k),
        exclusions: categorized.exclusions,
    };
    let json = serde_json::to_string_pretty(&report).expect("run report serializes");
    let path = config.out.join("stats.json");
    fs::write(&path, format!("{json}\n")).map_err(|e| Error::io(&path, e))
}

fn report_stage(config: &PipelineConfig) -> Result<()> {
    let path = config.out.join("stats.json");
    require(&path, Stage::Analyze)?;
    let content = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let run_report: RunReport =
        serde_json::from_str(&content).map_err(|e| Error::MalformedRecord {
            path: path.clone(),
            line: 1,
            message: e.to_string(),
        })?;
    report::write_report(&run_report, &config.out)
}
