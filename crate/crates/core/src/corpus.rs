//! Corpus loading, segmentation, and gold-annotation validation.
//!
//! Statements are ingested from JSONL (one record per line) or CSV with a
//! header; both formats carry `doc_id`, `statement_id`, and `text` fields
//! (plus an optional `title` for document display names). Tokenization is
//! filled in eagerly so every downstream consumer sees the same token
//! boundaries.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classifier::ComponentLabel;
use crate::error::{Error, Result};
use crate::syntax;

/// Input/output serialization format for statement and gold files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "csv" => Ok(CorpusFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected jsonl or csv)")),
        }
    }
}

impl std::fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CorpusFormat::Jsonl => "jsonl",
            CorpusFormat::Csv => "csv",
        })
    }
}

/// One policy sentence with provenance and tokenization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstitutionalStatement {
    pub statement_id: String,
    pub doc_id: String,
    pub text: String,
    pub tokens: Vec<String>,
}

impl InstitutionalStatement {
    pub fn new(
        statement_id: impl Into<String>,
        doc_id: impl Into<String>,
        text: impl Into<String>,
    ) -> Self {
        let text = text.into();
        let tokens = syntax::tokenize(&text);
        InstitutionalStatement {
            statement_id: statement_id.into(),
            doc_id: doc_id.into(),
            text,
            tokens,
        }
    }
}

/// A policy document: an ordered list of statements under one id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyDocument {
    pub doc_id: String,
    pub title: String,
    pub statements: Vec<InstitutionalStatement>,
}

/// Gold per-token labels for one statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldAnnotation {
    pub statement_id: String,
    pub labels: Vec<ComponentLabel>,
}

/// An ordered collection of policy documents. Immutable after loading and
/// safe to share across threads.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub documents: Vec<PolicyDocument>,
    index: BTreeMap<String, (usize, usize)>,
}

impl Corpus {
    /// Builds a corpus from statements in order, grouping consecutive and
    /// non-consecutive statements by `doc_id` (document order follows first
    /// appearance). Duplicate statement ids are rejected.
    pub fn from_statements(
        statements: Vec<InstitutionalStatement>,
        titles: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut corpus = Corpus::default();
        let mut doc_slot: BTreeMap<String, usize> = BTreeMap::new();
        for statement in statements {
            if corpus.index.contains_key(&statement.statement_id) {
                return Err(Error::DuplicateStatementId(statement.statement_id));
            }
            let doc_idx = match doc_slot.get(&statement.doc_id) {
                Some(&i) => i,
                None => {
                    let title = titles
                        .get(&statement.doc_id)
                        .cloned()
                        .unwrap_or_else(|| statement.doc_id.clone());
                    corpus.documents.push(PolicyDocument {
                        doc_id: statement.doc_id.clone(),
                        title,
                        statements: Vec::new(),
                    });
                    let i = corpus.documents.len() - 1;
                    doc_slot.insert(statement.doc_id.clone(), i);
                    i
                }
            };
            let stmt_idx = corpus.documents[doc_idx].statements.len();
            corpus
                .index
                .insert(statement.statement_id.clone(), (doc_idx, stmt_idx));
            corpus.documents[doc_idx].statements.push(statement);
        }
        Ok(corpus)
    }

    pub fn statements(&self) -> impl Iterator<Item = &InstitutionalStatement> {
        self.documents.iter().flat_map(|d| d.statements.iter())
    }

    pub fn statement(&self, statement_id: &str) -> Option<&InstitutionalStatement> {
        self.index
            .get(statement_id)
            .map(|&(d, s)| &self.documents[d].statements[s])
    }

    pub fn total_statements(&self) -> usize {
        self.documents.iter().map(|d| d.statements.len()).sum()
    }

    /// SHA-256 over the canonical JSONL serialization, as a lowercase hex
    /// string. Stable across loads of identical content.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for line in self.to_jsonl_lines() {
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        hex_string(&hasher.finalize())
    }

    fn to_jsonl_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for doc in &self.documents {
            for (i, statement) in doc.statements.iter().enumerate() {
                let record = StatementRecord {
                    doc_id: statement.doc_id.clone(),
                    statement_id: statement.statement_id.clone(),
                    text: statement.text.clone(),
                    title: (i == 0 && doc.title != doc.doc_id).then(|| doc.title.clone()),
                };
                lines.push(serde_json::to_string(&record).expect("statement record serializes"));
            }
        }
        lines
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct StatementRecord {
    doc_id: String,
    statement_id: String,
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    title: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GoldRecord {
    statement_id: String,
    labels: Vec<String>,
}

/// Loads a corpus from `path` in the declared format.
///
/// Malformed records fail with the offending line number; duplicate
/// statement ids fail naming the id. An empty file yields an empty corpus.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus> {
    let path = path.as_ref();
    let records = match format {
        CorpusFormat::Jsonl => read_jsonl_records(path)?,
        CorpusFormat::Csv => read_csv_records(path)?,
    };
    let mut titles = BTreeMap::new();
    let mut statements = Vec::with_capacity(records.len());
    for (line, record) in records {
        if record.text.trim().is_empty() {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line,
                message: "empty text".to_string(),
            });
        }
        if record.statement_id.is_empty() || record.doc_id.is_empty() {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line,
                message: "empty doc_id or statement_id".to_string(),
            });
        }
        if let Some(title) = &record.title {
            titles
                .entry(record.doc_id.clone())
                .or_insert_with(|| title.clone());
        }
        statements.push(InstitutionalStatement::new(
            record.statement_id,
            record.doc_id,
            record.text,
        ));
    }
    Corpus::from_statements(statements, &titles)
}

fn read_jsonl_records(path: &Path) -> Result<Vec<(usize, StatementRecord)>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: StatementRecord =
            serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
        records.push((i + 1, record));
    }
    Ok(records)
}

fn read_csv_records(path: &Path) -> Result<Vec<(usize, StatementRecord)>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
        _ => Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        },
    })?;
    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let mut records = Vec::new();
    for result in reader.records() {
        let malformed = |line: usize, e: csv::Error| Error::MalformedRecord {
            path: path.to_path_buf(),
            line,
            message: e.to_string(),
        };
        let raw = result.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            malformed(line, e)
        })?;
        let line = raw.position().map(|p| p.line() as usize).unwrap_or(0);
        let mut record: StatementRecord = raw
            .deserialize(Some(&headers))
            .map_err(|e| malformed(line, e))?;
        if record.title.as_deref() == Some("") {
            record.title = None;
        }
        records.push((line, record));
    }
    Ok(records)
}

/// Writes a corpus in the given format. `load_corpus` of the written file
/// reproduces identical ids, order, and text.
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>, format: CorpusFormat) -> Result<()> {
    let path = path.as_ref();
    match format {
        CorpusFormat::Jsonl => {
            let mut out = String::new();
            for line in corpus.to_jsonl_lines() {
                out.push_str(&line);
                out.push('\n');
            }
            fs::write(path, out).map_err(|e| Error::io(path, e))
        }
        CorpusFormat::Csv => {
            // CSV rows must all have the same arity, so the title column is
            // always present (empty when it matches the doc_id default).
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["doc_id", "statement_id", "text", "title"])
                .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
            for doc in &corpus.documents {
                for (i, statement) in doc.statements.iter().enumerate() {
                    let title = if i == 0 && doc.title != doc.doc_id {
                        doc.title.as_str()
                    } else {
                        ""
                    };
                    writer
                        .write_record([
                            statement.doc_id.as_str(),
                            statement.statement_id.as_str(),
                            statement.text.as_str(),
                            title,
                        ])
                        .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
                }
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
            fs::write(path, bytes).map_err(|e| Error::io(path, e))
        }
    }
}

/// Splits raw document text into statements on sentence-final punctuation
/// (`.`, `!`, `?`) followed by whitespace, never splitting inside
/// parentheses or brackets. Statement ids are `doc_id#k` with `k` starting
/// at zero. Idempotent on its own output.
pub fn segment_statements(raw_text: &str, doc_id: &str) -> Vec<InstitutionalStatement> {
    let chars: Vec<char> = raw_text.chars().collect();
    let mut pieces: Vec<String> = Vec::new();
    let mut start = 0usize;
    let mut depth = 0i32;
    let mut i = 0usize;
    while i < chars.len() {
        match chars[i] {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = (depth - 1).max(0),
            '.' | '!' | '?' if depth == 0 => {
                let mut j = i;
                while j + 1 < chars.len() && matches!(chars[j + 1], '.' | '!' | '?') {
                    j += 1;
                }
                if j + 1 == chars.len() || chars[j + 1].is_whitespace() {
                    let piece: String = chars[start..=j].iter().collect();
                    pieces.push(piece);
                    start = j + 1;
                }
                i = j;
            }
            _ => {}
        }
        i += 1;
    }
    if start < chars.len() {
        pieces.push(chars[start..].iter().collect());
    }
    pieces
        .iter()
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .enumerate()
        .map(|(k, text)| InstitutionalStatement::new(format!("{doc_id}#{k}"), doc_id, text))
        .collect()
}

/// Loads gold annotations, eagerly validating that every referenced
/// statement exists, every label string is in the closed set, and the label
/// count matches the statement's token count. The CSV form uses the same
/// field names as header, with the labels space-separated in one cell.
pub fn load_gold(
    path: impl AsRef<Path>,
    corpus: &Corpus,
    format: CorpusFormat,
) -> Result<Vec<GoldAnnotation>> {
    let path = path.as_ref();
    let records = match format {
        CorpusFormat::Jsonl => {
            let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let mut records = Vec::new();
            for (i, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let record: GoldRecord =
                    serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                        path: path.to_path_buf(),
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                records.push(record);
            }
            records
        }
        CorpusFormat::Csv => read_csv_gold(path)?,
    };
    let mut out = Vec::new();
    let mut seen = BTreeMap::new();
    for record in records {
        out.push(validate_gold(record, corpus, &mut seen)?);
    }
    Ok(out)
}

fn read_csv_gold(path: &Path) -> Result<Vec<GoldRecord>> {
    #[derive(Deserialize)]
    struct CsvGoldRow {
        statement_id: String,
        labels: String,
    }
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => Error::io(path, std::io::Error::other(e.to_string())),
        _ => Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        },
    })?;
    let mut records = Vec::new();
    for result in reader.deserialize::<CsvGoldRow>() {
        let row = result.map_err(|e| Error::MalformedRecord {
            path: path.to_path_buf(),
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            message: e.to_string(),
        })?;
        records.push(GoldRecord {
            statement_id: row.statement_id,
            labels: row.labels.split_whitespace().map(String::from).collect(),
        });
    }
    Ok(records)
}

fn validate_gold(
    record: GoldRecord,
    corpus: &Corpus,
    seen: &mut BTreeMap<String, ()>,
) -> Result<GoldAnnotation> {
    if seen.insert(record.statement_id.clone(), ()).is_some() {
        return Err(Error::DuplicateGold(record.statement_id));
    }
    let statement = corpus
        .statement(&record.statement_id)
        .ok_or_else(|| Error::UnknownStatementId(record.statement_id.clone()))?;
    let labels = record
        .labels
        .iter()
        .map(|s| s.parse::<ComponentLabel>())
        .collect::<Result<Vec<_>>>()?;
    if labels.len() != statement.tokens.len() {
        return Err(Error::LabelAlignment {
            statement_id: record.statement_id,
            labels: labels.len(),
            tokens: statement.tokens.len(),
        });
    }
    Ok(GoldAnnotation {
        statement_id: record.statement_id,
        labels,
    })
}

/// Writes gold annotations as JSONL, the inverse of [`load_gold`].
pub fn save_gold(
    gold: &[GoldAnnotation],
    path: impl AsRef<Path>,
    format: CorpusFormat,
) -> Result<()> {
    let path = path.as_ref();
    match format {
        CorpusFormat::Jsonl => {
            let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
            let mut writer = std::io::BufWriter::new(file);
            for annotation in gold {
                let record = GoldRecord {
                    statement_id: annotation.statement_id.clone(),
                    labels: annotation.labels.iter().map(|l| l.to_string()).collect(),
                };
                let line = serde_json::to_string(&record).expect("gold record serializes");
                writeln!(writer, "{line}").map_err(|e| Error::io(path, e))?;
            }
            Ok(())
        }
        CorpusFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["statement_id", "labels"])
                .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
            for annotation in gold {
                let labels = annotation
                    .labels
                    .iter()
                    .map(|l| l.as_str())
                    .collect::<Vec<_>>()
                    .join(" ");
                writer
                    .write_record([annotation.statement_id.as_str(), labels.as_str()])
                    .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
            fs::write(path, bytes).map_err(|e| Error::io(path, e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn empty_file_yields_empty_corpus() {
        let f = write_temp("");
        let corpus = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.documents.len(), 0);
        assert_eq!(corpus.total_statements(), 0);
    }

    #[test]
    fn duplicate_statement_id_is_rejected() {
        let f = write_temp(concat!(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A must vote.\"}\n",
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"B may abstain.\"}\n",
        ));
        let err = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap_err();
        match err {
            Error::DuplicateStatementId(id) => assert_eq!(id, "s1"),
            other => panic!("expected duplicate id error, got {other}"),
        }
    }

    #[test]
    fn malformed_record_names_line_number() {
        let f = write_temp(concat!(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A must vote.\"}\n",
            "{not json}\n",
        ));
        let err = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap_err();
        match err {
            Error::MalformedRecord { line, .. } => assert_eq!(line, 2),
            other => panic!("expected malformed record error, got {other}"),
        }
    }

    #[test]
    fn csv_and_jsonl_agree() {
        let jsonl = write_temp(concat!(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A must vote, always.\"}\n",
            "{\"doc_id\":\"e\",\"statement_id\":\"s2\",\"text\":\"B may abstain.\"}\n",
        ));
        let csv = write_temp(concat!(
            "doc_id,statement_id,text\n",
            "d,s1,\"A must vote, always.\"\n",
            "e,s2,B may abstain.\n",
        ));
        let a = load_corpus(jsonl.path(), CorpusFormat::Jsonl).unwrap();
        let b = load_corpus(csv.path(), CorpusFormat::Csv).unwrap();
        assert_eq!(a.documents, b.documents);
    }

    #[test]
    fn round_trip_preserves_ids_order_and_text() {
        let f = write_temp(concat!(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A must vote.\",\"title\":\"Doc D\"}\n",
            "{\"doc_id\":\"d\",\"statement_id\":\"s2\",\"text\":\"B may abstain.\"}\n",
            "{\"doc_id\":\"e\",\"statement_id\":\"s3\",\"text\":\"C is chair.\"}\n",
        ));
        let corpus = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        for format in [CorpusFormat::Jsonl, CorpusFormat::Csv] {
            let out = tempfile::NamedTempFile::new().unwrap();
            save_corpus(&corpus, out.path(), format).unwrap();
            let reloaded = load_corpus(out.path(), format).unwrap();
            assert_eq!(reloaded.documents, corpus.documents, "format {format}");
        }
        assert_eq!(corpus.documents[0].title, "Doc D");
    }

    #[test]
    fn digest_is_stable_and_content_sensitive() {
        let f =
            write_temp("{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A must vote.\"}\n");
        let a = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        assert_eq!(a.digest(), a.digest());
        let g = write_temp("{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"A may vote.\"}\n");
        let b = load_corpus(g.path(), CorpusFormat::Jsonl).unwrap();
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn segments_on_terminal_punctuation() {
        let segments = segment_statements("A must vote. B may abstain.", "d");
        assert_eq!(segments.len(), 2);
        assert_eq!(segments[0].text, "A must vote.");
        assert_eq!(segments[0].statement_id, "d#0");
        assert_eq!(segments[1].text, "B may abstain.");
        assert_eq!(segments[1].statement_id, "d#1");
    }

    #[test]
    fn empty_input_segments_to_nothing() {
        assert!(segment_statements("", "d").is_empty());
        assert!(segment_statements("   ", "d").is_empty());
    }

    // Hand-built segmentation oracle, including the parenthesis-protection
    // rule and unterminated trailing text.
    #[test]
    fn segmentation_oracle_cases() {
        let cases: Vec<(&str, Vec<&str>)> = vec![
            (
                "Podlings (i.e. new projects) must report.",
                vec!["Podlings (i.e. new projects) must report."],
            ),
            ("Really? Yes. Go!", vec!["Really?", "Yes.", "Go!"]),
            ("Wait... then vote.", vec!["Wait...", "then vote."]),
            ("No terminal punctuation", vec!["No terminal punctuation"]),
            (
                "Trailing text. And more",
                vec!["Trailing text.", "And more"],
            ),
            (
                "Version 3.0 ships now. Done.",
                vec!["Version 3.0 ships now.", "Done."],
            ),
            (
                "One (two. three) four. Five.",
                vec!["One (two. three) four.", "Five."],
            ),
            ("A [see 4. above] b.", vec!["A [see 4. above] b."]),
        ];
        for (input, expected) in cases {
            let got: Vec<String> = segment_statements(input, "d")
                .into_iter()
                .map(|s| s.text)
                .collect();
            assert_eq!(got, expected, "input: {input:?}");
        }
    }

    #[test]
    fn segmentation_is_idempotent_on_its_output() {
        let inputs = [
            "A must vote. B may abstain.",
            "Podlings (i.e. new projects) must report. Mentors must help!",
            "Trailing text. And more",
        ];
        for input in inputs {
            for statement in segment_statements(input, "d") {
                let again = segment_statements(&statement.text, "d");
                assert_eq!(again.len(), 1, "statement: {:?}", statement.text);
                assert_eq!(again[0].text, statement.text);
            }
        }
    }

    #[test]
    fn gold_length_mismatch_names_statement() {
        let f = write_temp(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"The mentor must notify the community.\"}\n",
        );
        let corpus = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        // statement has 7 tokens; give 6 labels
        let g = write_temp(
            "{\"statement_id\":\"s1\",\"labels\":[\"A\",\"A\",\"D\",\"I\",\"B\",\"B\"]}\n",
        );
        let err = load_gold(g.path(), &corpus, CorpusFormat::Jsonl).unwrap_err();
        match err {
            Error::LabelAlignment {
                statement_id,
                labels,
                tokens,
            } => {
                assert_eq!(statement_id, "s1");
                assert_eq!(labels, 6);
                assert_eq!(tokens, 7);
            }
            other => panic!("expected alignment error, got {other}"),
        }
    }

    #[test]
    fn gold_accepts_aligned_labels_and_rejects_unknown() {
        let f = write_temp(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"The mentor must notify the community.\"}\n",
        );
        let corpus = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        let ok = write_temp(
            "{\"statement_id\":\"s1\",\"labels\":[\"A\",\"A\",\"D\",\"I\",\"B\",\"B\",\"NONE\"]}\n",
        );
        let gold = load_gold(ok.path(), &corpus, CorpusFormat::Jsonl).unwrap();
        assert_eq!(gold.len(), 1);
        assert_eq!(gold[0].labels.len(), 7);

        let bad = write_temp(
            "{\"statement_id\":\"s1\",\"labels\":[\"Z\",\"A\",\"D\",\"I\",\"B\",\"B\",\"NONE\"]}\n",
        );
        let err = load_gold(bad.path(), &corpus, CorpusFormat::Jsonl).unwrap_err();
        assert!(err.to_string().contains("A, B, D, I, C, O, NONE"));
        match err {
            Error::UnknownLabel(l) => assert_eq!(l, "Z"),
            other => panic!("expected unknown label error, got {other}"),
        }
    }

    #[test]
    fn gold_round_trips() {
        let f = write_temp(
            "{\"doc_id\":\"d\",\"statement_id\":\"s1\",\"text\":\"The mentor must notify the community.\"}\n",
        );
        let corpus = load_corpus(f.path(), CorpusFormat::Jsonl).unwrap();
        let gold = vec![GoldAnnotation {
            statement_id: "s1".to_string(),
            labels: "A A D I B B NONE"
                .split_whitespace()
                .map(|s| s.parse().unwrap())
                .collect(),
        }];
        for format in [CorpusFormat::Jsonl, CorpusFormat::Csv] {
            let out = tempfile::NamedTempFile::new().unwrap();
            save_gold(&gold, out.path(), format).unwrap();
            assert_eq!(
                load_gold(out.path(), &corpus, format).unwrap(),
                gold,
                "format {format}"
            );
        }
    }
}
