//! Per-token component labeling and span grouping.
//!
//! The labeler is a linear multi-class scorer over the symbolic features
//! from [`crate::syntax`], trained with the averaged perceptron. Training
//! is fully deterministic for a fixed `(gold, epochs, seed)` triple, and a
//! saved model reloads to bit-identical predictions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{Corpus, GoldAnnotation};
use crate::error::{Error, Result};
use crate::syntax::{self, FeatureVector, SyntacticToken};

/// The component label assigned to every token. `None` marks tokens
/// outside any component. The declaration order doubles as the fixed
/// tie-break order for prediction: A < B < D < I < C < O < NONE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentLabel {
    #[serde(rename = "A")]
    Agent,
    #[serde(rename = "B")]
    Object,
    #[serde(rename = "D")]
    Deontic,
    #[serde(rename = "I")]
    Aim,
    #[serde(rename = "C")]
    Context,
    #[serde(rename = "O")]
    OrElse,
    #[serde(rename = "NONE")]
    None,
}

pub const LABEL_COUNT: usize = 7;

/// All labels in tie-break order.
pub const ALL_LABELS: [ComponentLabel; LABEL_COUNT] = [
    ComponentLabel::Agent,
    ComponentLabel::Object,
    ComponentLabel::Deontic,
    ComponentLabel::Aim,
    ComponentLabel::Context,
    ComponentLabel::OrElse,
    ComponentLabel::None,
];

impl ComponentLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentLabel::Agent => "A",
            ComponentLabel::Object => "B",
            ComponentLabel::Deontic => "D",
            ComponentLabel::Aim => "I",
            ComponentLabel::Context => "C",
            ComponentLabel::OrElse => "O",
            ComponentLabel::None => "NONE",
        }
    }

    fn ordinal(&self) -> usize {
        ALL_LABELS
            .iter()
            .position(|l| l == self)
            .expect("label in table")
    }
}

impl std::fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(ComponentLabel::Agent),
            "B" => Ok(ComponentLabel::Object),
            "D" => Ok(ComponentLabel::Deontic),
            "I" => Ok(ComponentLabel::Aim),
            "C" => Ok(ComponentLabel::Context),
            "O" => Ok(ComponentLabel::OrElse),
            "NONE" => Ok(ComponentLabel::None),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// A maximal run of tokens sharing one component label (never `NONE`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSpan {
    pub statement_id: String,
    pub label: ComponentLabel,
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl ComponentSpan {
    /// Stable reference string used to join spans with cluster assignments.
    pub fn component_ref(&self) -> String {
        format!("{}:{}-{}", self.statement_id, self.start, self.end)
    }
}

/// Training provenance stored alongside the weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub seed: u64,
    pub epochs: u32,
    pub corpus_digest: String,
}

/// Linear multi-class token classifier: a weight per (feature, label).
#[derive(Debug, Clone, PartialEq)]
pub struct TokenClassifierModel {
    weights: BTreeMap<String, [f64; LABEL_COUNT]>,
    pub metadata: ModelMetadata,
}

impl TokenClassifierModel {
    /// A model with no weights; predicts the first label in tie order for
    /// every token.
    pub fn empty(metadata: ModelMetadata) -> Self {
        TokenClassifierModel {
            weights: BTreeMap::new(),
            metadata,
        }
    }

    pub fn weight(&self, feature: &str, label: ComponentLabel) -> f64 {
        self.weights
            .get(feature)
            .map(|row| row[label.ordinal()])
            .unwrap_or(0.0)
    }

    fn scores(&self, features: &FeatureVector) -> [f64; LABEL_COUNT] {
        score_features(&self.weights, features)
    }

    fn argmax(scores: &[f64; LABEL_COUNT]) -> ComponentLabel {
        let mut best = 0;
        for (i, s) in scores.iter().enumerate().skip(1) {
            if *s > scores[best] {
                best = i;
            }
        }
        ALL_LABELS[best]
    }

    /// Serializes the model as a metadata header plus one
    /// `feature<TAB>label<TAB>weight` line per nonzero weight.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("#igmodel\tv1\n");
        out.push_str(&format!("#seed\t{}\n", self.metadata.seed));
        out.push_str(&format!("#epochs\t{}\n", self.metadata.epochs));
        out.push_str(&format!(
            "#corpus_digest\t{}\n",
            self.metadata.corpus_digest
        ));
        out.push_str("#labels\tA B D I C O NONE\n");
        for (feature, row) in &self.weights {
            for (label, weight) in ALL_LABELS.iter().zip(row.iter()) {
                if *weight != 0.0 {
                    out.push_str(&format!("{feature}\t{label}\t{weight}\n"));
                }
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let malformed = |line: usize, message: &str| Error::MalformedModel {
            path: path.to_path_buf(),
            line,
            message: message.to_string(),
        };
        let mut weights: BTreeMap<String, [f64; LABEL_COUNT]> = BTreeMap::new();
        let mut seed = 0u64;
        let mut epochs = 0u32;
        let mut corpus_digest = String::new();
        let mut versioned = false;
        for (i, line) in content.lines().enumerate() {
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if let Some(key) = fields[0].strip_prefix('#') {
                if fields.len() != 2 {
                    return Err(malformed(lineno, "header lines take one value"));
                }
                match key {
                    "igmodel" => {
                        if fields[1] != "v1" {
                            return Err(malformed(lineno, "unsupported model version"));
                        }
                        versioned = true;
                    }
                    "seed" => {
                        seed = fields[1]
                            .parse()
                            .map_err(|_| malformed(lineno, "bad seed"))?;
                    }
                    "epochs" => {
                        epochs = fields[1]
                            .parse()
                            .map_err(|_| malformed(lineno, "bad epochs"))?;
                    }
                    "corpus_digest" => corpus_digest = fields[1].to_string(),
                    "labels" => {}
                    other => {
                        return Err(malformed(lineno, &format!("unknown header `{other}`")));
                    }
                }
                continue;
            }
            if fields.len() != 3 {
                return Err(malformed(lineno, "expected feature<TAB>label<TAB>weight"));
            }
            let label: ComponentLabel = fields[1].parse()?;
            let weight: f64 = fields[2]
                .parse()
                .map_err(|_| malformed(lineno, "bad weight"))?;
            weights
                .entry(fields[0].to_string())
                .or_insert([0.0; LABEL_COUNT])[label.ordinal()] = weight;
        }
        if !versioned {
            return Err(malformed(1, "missing #igmodel header"));
        }
        Ok(TokenClassifierModel {
            weights,
            metadata: ModelMetadata {
                seed,
                epochs,
                corpus_digest,
            },
        })
    }
}

fn score_features(
    weights: &BTreeMap<String, [f64; LABEL_COUNT]>,
    features: &FeatureVector,
) -> [f64; LABEL_COUNT] {
    let mut scores = [0.0; LABEL_COUNT];
    for (name, value) in features.iter() {
        if let Some(row) = weights.get(name) {
            for (s, w) in scores.iter_mut().zip(row.iter()) {
                *s += w * value;
            }
        }
    }
    scores
}

fn gold_digest(corpus: &Corpus, gold: &[GoldAnnotation]) -> Result<String> {
    let mut hasher = Sha256::new();
    for annotation in gold {
        let statement = corpus
            .statement(&annotation.statement_id)
            .ok_or_else(|| Error::UnknownStatementId(annotation.statement_id.clone()))?;
        hasher.update(statement.statement_id.as_bytes());
        hasher.update(b"\t");
        hasher.update(statement.text.as_bytes());
        hasher.update(b"\t");
        for label in &annotation.labels {
            hasher.update(label.as_str().as_bytes());
            hasher.update(b" ");
        }
        hasher.update(b"\n");
    }
    Ok(hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

struct TrainingExample {
    features: Vec<FeatureVector>,
    labels: Vec<ComponentLabel>,
}

fn build_examples(corpus: &Corpus, gold: &[GoldAnnotation]) -> Result<Vec<TrainingExample>> {
    gold.iter()
        .map(|annotation| {
            let statement = corpus
                .statement(&annotation.statement_id)
                .ok_or_else(|| Error::UnknownStatementId(annotation.statement_id.clone()))?;
            if annotation.labels.len() != statement.tokens.len() {
                return Err(Error::LabelAlignment {
                    statement_id: annotation.statement_id.clone(),
                    labels: annotation.labels.len(),
                    tokens: statement.tokens.len(),
                });
            }
            let annotated = syntax::annotate_syntax(&statement.tokens);
            let features = (0..annotated.len())
                .map(|i| syntax::featurize(&annotated, i))
                .collect();
            Ok(TrainingExample {
                features,
                labels: annotation.labels.clone(),
            })
        })
        .collect()
}

/// Trains the averaged perceptron.
///
/// Statement order is reshuffled each epoch with a ChaCha8 stream seeded
/// from `seed`, so the result is a pure function of `(gold, epochs, seed)`.
pub fn train(
    corpus: &Corpus,
    gold: &[GoldAnnotation],
    epochs: u32,
    seed: u64,
) -> Result<TokenClassifierModel> {
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    let examples = build_examples(corpus, gold)?;

    let mut weights: BTreeMap<String, [f64; LABEL_COUNT]> = BTreeMap::new();
    let mut totals: BTreeMap<String, [f64; LABEL_COUNT]> = BTreeMap::new();
    let mut stamps: BTreeMap<String, [u64; LABEL_COUNT]> = BTreeMap::new();
    let mut instant = 0u64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();

    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &ei in &order {
            let example = &examples[ei];
            for (features, &gold_label) in example.features.iter().zip(&example.labels) {
                instant += 1;
                let predicted = TokenClassifierModel::argmax(&score_features(&weights, features));
                if predicted != gold_label {
                    for (name, _) in features.iter() {
                        update_weight(
                            &mut weights,
                            &mut totals,
                            &mut stamps,
                            name,
                            gold_label.ordinal(),
                            1.0,
                            instant,
                        );
                        update_weight(
                            &mut weights,
                            &mut totals,
                            &mut stamps,
                            name,
                            predicted.ordinal(),
                            -1.0,
                            instant,
                        );
                    }
                }
            }
        }
    }

    // Final flush: average each weight over the full update history.
    let mut averaged: BTreeMap<String, [f64; LABEL_COUNT]> = BTreeMap::new();
    let t = instant.max(1) as f64;
    for (feature, row) in &weights {
        let total_row = totals.get(feature).expect("totals tracked");
        let stamp_row = stamps.get(feature).expect("stamps tracked");
        let mut avg = [0.0; LABEL_COUNT];
        let mut any = false;
        for i in 0..LABEL_COUNT {
            let total = total_row[i] + (instant - stamp_row[i]) as f64 * row[i];
            let value = total / t;
            avg[i] = value;
            any |= value != 0.0;
        }
        if any {
            averaged.insert(feature.clone(), avg);
        }
    }

    Ok(TokenClassifierModel {
        weights: averaged,
        metadata: ModelMetadata {
            seed,
            epochs,
            corpus_digest: gold_digest(corpus, gold)?,
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn update_weight(
    weights: &mut BTreeMap<String, [f64; LABEL_COUNT]>,
    totals: &mut BTreeMap<String, [f64; LABEL_COUNT]>,
    stamps: &mut BTreeMap<String, [u64; LABEL_COUNT]>,
    feature: &str,
    label: usize,
    delta: f64,
    instant: u64,
) {
    let row = weights
        .entry(feature.to_string())
        .or_insert([0.0; LABEL_COUNT]);
    let total_row = totals
        .entry(feature.to_string())
        .or_insert([0.0; LABEL_COUNT]);
    let stamp_row = stamps
        .entry(feature.to_string())
        .or_insert([0; LABEL_COUNT]);
    total_row[label] += (instant - stamp_row[label]) as f64 * row[label];
    stamp_row[label] = instant;
    row[label] += delta;
}

/// Predicts one label per annotated token, breaking score ties by the
/// fixed label order.
pub fn predict(model: &TokenClassifierModel, tokens: &[SyntacticToken]) -> Vec<ComponentLabel> {
    (0..tokens.len())
        .map(|i| {
            let features = syntax::featurize(tokens, i);
            TokenClassifierModel::argmax(&model.scores(&features))
        })
        .collect()
}

/// Precision/recall/F1 for one label. F1 is zero when precision + recall
/// is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Token-level evaluation results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub token_accuracy: f64,
    pub per_label: BTreeMap<ComponentLabel, LabelMetrics>,
}

/// Evaluates a model against held-out gold annotations.
pub fn evaluate(
    model: &TokenClassifierModel,
    corpus: &Corpus,
    held_out: &[GoldAnnotation],
) -> Result<Metrics> {
    if held_out.is_empty() {
        return Err(Error::EmptyGold);
    }
    let mut correct = 0usize;
    let mut total = 0usize;
    let mut tp = [0usize; LABEL_COUNT];
    let mut fp = [0usize; LABEL_COUNT];
    let mut fn_ = [0usize; LABEL_COUNT];
    for annotation in held_out {
        let statement = corpus
            .statement(&annotation.statement_id)
            .ok_or_else(|| Error::UnknownStatementId(annotation.statement_id.clone()))?;
        if annotation.labels.len() != statement.tokens.len() {
            return Err(Error::LabelAlignment {
                statement_id: annotation.statement_id.clone(),
                labels: annotation.labels.len(),
                tokens: statement.tokens.len(),
            });
        }
        let annotated = syntax::annotate_syntax(&statement.tokens);
        let predicted = predict(model, &annotated);
        for (p, g) in predicted.iter().zip(&annotation.labels) {
            total += 1;
            if p == g {
                correct += 1;
                tp[p.ordinal()] += 1;
            } else {
                fp[p.ordinal()] += 1;
                fn_[g.ordinal()] += 1;
            }
        }
    }
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let per_label = ALL_LABELS
        .iter()
        .map(|label| {
            let i = label.ordinal();
            let precision = ratio(tp[i], tp[i] + fp[i]);
            let recall = ratio(tp[i], tp[i] + fn_[i]);
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            (
                *label,
                LabelMetrics {
                    precision,
                    recall,
                    f1,
                },
            )
        })
        .collect();
    Ok(Metrics {
        token_accuracy: ratio(correct, total),
        per_label,
    })
}

/// Groups maximal runs of equal labels into spans, dropping `NONE` runs.
/// Span text is the detokenized surface form of the covered tokens.
pub fn group_spans(
    labels: &[ComponentLabel],
    tokens: &[String],
    statement_id: &str,
) -> Result<Vec<ComponentSpan>> {
    if labels.len() != tokens.len() {
        return Err(Error::LabelAlignment {
            statement_id: statement_id.to_string(),
            labels: labels.len(),
            tokens: tokens.len(),
        });
    }
    let mut spans = Vec::new();
    let mut start = 0usize;
    while start < labels.len() {
        let label = labels[start];
        let mut end = start + 1;
        while end < labels.len() && labels[end] == label {
            end += 1;
        }
        if label != ComponentLabel::None {
            spans.push(ComponentSpan {
                statement_id: statement_id.to_string(),
                label,
                start,
                end,
                text: syntax::detokenize(&tokens[start..end]),
            });
        }
        start = end;
    }
    Ok(spans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{load_corpus, CorpusFormat};
    use std::io::Write as _;

    fn corpus_of(lines: &[(&str, &str)]) -> Corpus {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for (id, text) in lines {
            writeln!(
                f,
                "{}",
                serde_json::json!({"doc_id": "d", "statement_id": id, "text": text})
            )
            .unwrap();
        }
        load_corpus(f.path(), CorpusFormat::Jsonl).unwrap()
    }

    fn gold_of(id: &str, labels: &str) -> GoldAnnotation {
        GoldAnnotation {
            statement_id: id.to_string(),
            labels: labels
                .split_whitespace()
                .map(|s| s.parse().unwrap())
                .collect(),
        }
    }

    #[test]
    fn zero_weight_model_predicts_first_label_everywhere() {
        let model = TokenClassifierModel::empty(ModelMetadata {
            seed: 0,
            epochs: 0,
            corpus_digest: String::new(),
        });
        let tokens = syntax::tokenize("The mentor must notify the community.");
        let annotated = syntax::annotate_syntax(&tokens);
        let predicted = predict(&model, &annotated);
        assert_eq!(predicted.len(), tokens.len());
        assert!(predicted.iter().all(|l| *l == ComponentLabel::Agent));
    }

    #[test]
    fn memorizes_a_single_statement() {
        let corpus = corpus_of(&[("s1", "The mentor must notify the community.")]);
        let gold = vec![gold_of("s1", "A A D I B B NONE")];
        let model = train(&corpus, &gold, 50, 42).unwrap();
        let statement = corpus.statement("s1").unwrap();
        let annotated = syntax::annotate_syntax(&statement.tokens);
        assert_eq!(predict(&model, &annotated), gold[0].labels);
    }

    #[test]
    fn training_is_deterministic() {
        let corpus = corpus_of(&[
            ("s1", "The mentor must notify the community."),
            ("s2", "Committers may vote on the release."),
        ]);
        let gold = vec![
            gold_of("s1", "A A D I B B NONE"),
            gold_of("s2", "A D I B B B NONE"),
        ];
        let a = train(&corpus, &gold, 10, 42).unwrap();
        let b = train(&corpus, &gold, 10, 42).unwrap();
        assert_eq!(a.to_tsv(), b.to_tsv());
    }

    #[test]
    fn empty_gold_is_an_error() {
        let corpus = corpus_of(&[("s1", "The mentor must notify the community.")]);
        assert!(matches!(train(&corpus, &[], 5, 42), Err(Error::EmptyGold)));
    }

    #[test]
    fn misaligned_gold_names_statement() {
        let corpus = corpus_of(&[("s1", "The mentor must notify the community.")]);
        let gold = vec![gold_of("s1", "A A D")];
        match train(&corpus, &gold, 5, 42) {
            Err(Error::LabelAlignment { statement_id, .. }) => assert_eq!(statement_id, "s1"),
            other => panic!("expected alignment error, got {other:?}"),
        }
    }

    #[test]
    fn save_load_reproduces_predictions() {
        let corpus = corpus_of(&[
            ("s1", "The mentor must notify the community."),
            ("s2", "Committers may vote on the release."),
        ]);
        let gold = vec![
            gold_of("s1", "A A D I B B NONE"),
            gold_of("s2", "A D I B B B NONE"),
        ];
        let model = train(&corpus, &gold, 10, 42).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        model.save(file.path()).unwrap();
        let loaded = TokenClassifierModel::load(file.path()).unwrap();
        assert_eq!(loaded, model);
        for statement in corpus.statements() {
            let annotated = syntax::annotate_syntax(&statement.tokens);
            assert_eq!(predict(&loaded, &annotated), predict(&model, &annotated));
        }
    }

    // Hand-computed confusion counts on a 3-statement sample.
    //
    // Gold/pred pairs per token (model trained only on s1, evaluated on a
    // held-out set engineered so counts are easy to tally by hand): instead
    // of relying on a trained model we check `evaluate` against an
    // all-Agent zero-weight model, where precision/recall reduce to label
    // frequencies.
    #[test]
    fn metrics_match_hand_computation() {
        let corpus = corpus_of(&[
            ("s1", "The mentor must notify the community."),
            ("s2", "Committers may vote on the release."),
            ("s3", "Vote now."),
        ]);
        let gold = vec![
            gold_of("s1", "A A D I B B NONE"),
            gold_of("s2", "A D I B B B NONE"),
            gold_of("s3", "I C NONE"),
        ];
        let model = TokenClassifierModel::empty(ModelMetadata {
            seed: 0,
            epochs: 0,
            corpus_digest: String::new(),
        });
        let metrics = evaluate(&model, &corpus, &gold).unwrap();
        // 17 tokens total; gold A count = 3, all predictions are A.
        assert!((metrics.token_accuracy - 3.0 / 17.0).abs() < 1e-12);
        let a = metrics.per_label[&ComponentLabel::Agent];
        assert!((a.precision - 3.0 / 17.0).abs() < 1e-12);
        assert!((a.recall - 1.0).abs() < 1e-12);
        let expected_f1 = 2.0 * (3.0 / 17.0) / (1.0 + 3.0 / 17.0);
        assert!((a.f1 - expected_f1).abs() < 1e-12);
        // No other label is ever predicted: precision = recall = f1 = 0.
        let b = metrics.per_label[&ComponentLabel::Object];
        assert_eq!((b.precision, b.recall, b.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn perfect_predictions_score_one() {
        let corpus = corpus_of(&[("s1", "The mentor must notify the community.")]);
        let gold = vec![gold_of("s1", "A A D I B B NONE")];
        let model = train(&corpus, &gold, 50, 42).unwrap();
        let metrics = evaluate(&model, &corpus, &gold).unwrap();
        assert_eq!(metrics.token_accuracy, 1.0);
        for label in [
            ComponentLabel::Agent,
            ComponentLabel::Deontic,
            ComponentLabel::None,
        ] {
            assert_eq!(metrics.per_label[&label].f1, 1.0);
        }
    }

    #[test]
    fn group_spans_merges_runs_and_drops_none() {
        let tokens: Vec<String> = syntax::tokenize("The mentor must notify the community.");
        let labels: Vec<ComponentLabel> = "A A D I B B NONE"
            .split_whitespace()
            .map(|s| s.parse().unwrap())
            .collect();
        let spans = group_spans(&labels, &tokens, "s1").unwrap();
        let summary: Vec<(ComponentLabel, usize, usize, &str)> = spans
            .iter()
            .map(|s| (s.label, s.start, s.end, s.text.as_str()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (ComponentLabel::Agent, 0, 2, "The mentor"),
                (ComponentLabel::Deontic, 2, 3, "must"),
                (ComponentLabel::Aim, 3, 4, "notify"),
                (ComponentLabel::Object, 4, 6, "the community"),
            ]
        );
    }

    #[test]
    fn all_none_yields_no_spans() {
        let tokens = vec!["a".to_string(), "b".to_string()];
        let labels = vec![ComponentLabel::None, ComponentLabel::None];
        assert!(group_spans(&labels, &tokens, "s").unwrap().is_empty());
    }

    #[test]
    fn alternating_labels_yield_distinct_adjacent_spans() {
        let tokens = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let labels = vec![
            ComponentLabel::Agent,
            ComponentLabel::Object,
            ComponentLabel::Agent,
        ];
        let spans = group_spans(&labels, &tokens, "s").unwrap();
        assert_eq!(spans.len(), 3);
        for pair in spans.windows(2) {
            assert_ne!(pair[0].label, pair[1].label);
        }
    }

    #[test]
    fn group_spans_rejects_length_mismatch() {
        let tokens = vec!["x".to_string()];
        let labels = vec![ComponentLabel::Agent, ComponentLabel::Object];
        assert!(group_spans(&labels, &tokens, "s").is_err());
    }

    #[test]
    fn component_ref_is_stable() {
        let span = ComponentSpan {
            statement_id: "d#3".to_string(),
            label: ComponentLabel::Agent,
            start: 0,
            end: 2,
            text: "The mentor".to_string(),
        };
        assert_eq!(span.component_ref(), "d#3:0-2");
    }
}
