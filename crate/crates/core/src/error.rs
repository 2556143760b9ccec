use std::path::PathBuf;

use crate::classifier::ComponentLabel;

/// Crate-wide error type.
///
/// Every fallible operation reports enough context to locate the offending
/// input: file paths carry line numbers, identifier clashes carry the
/// identifier, alignment failures carry the statement id.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed record: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate statement id `{0}`")]
    DuplicateStatementId(String),

    #[error("duplicate gold annotation for statement `{0}`")]
    DuplicateGold(String),

    #[error("unknown statement id `{0}`")]
    UnknownStatementId(String),

    #[error("statement `{statement_id}`: {labels} labels for {tokens} tokens")]
    LabelAlignment {
        statement_id: String,
        labels: usize,
        tokens: usize,
    },

    #[error("unknown label `{0}`; valid labels are A, B, D, I, C, O, NONE")]
    UnknownLabel(String),

    #[error("cannot train on an empty gold set")]
    EmptyGold,

    #[error("{path}:{line}: malformed model file: {message}")]
    MalformedModel {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("clustering requires at least one vector")]
    EmptyClusterInput,

    #[error("invalid clustering parameters: {0}")]
    InvalidClusterParams(String),

    #[error("{path}:{line}: {message}")]
    MalformedTaxonomy {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown category `{0}`")]
    UnknownCategory(String),

    #[error("duplicate taxonomy key `{0}`")]
    DuplicateTaxonomyKey(String),

    #[error("component `{0}` has no category mapping")]
    UnmappedComponent(String),

    #[error("component `{component_ref}` is a {actual} span, expected {expected}")]
    ComponentKindMismatch {
        component_ref: String,
        expected: ComponentLabel,
        actual: ComponentLabel,
    },

    #[error("contingency table is degenerate after dropping zero marginals ({rows}x{cols})")]
    DegenerateTable { rows: usize, cols: usize },

    #[error("malformed table csv: {0}")]
    MalformedCsv(String),

    #[error("cannot render an empty histogram")]
    EmptyHistogram,

    #[error("missing prerequisite artifact {path} (run the `{stage}` stage first)")]
    MissingArtifact { path: PathBuf, stage: String },

    #[error("invalid pipeline configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
