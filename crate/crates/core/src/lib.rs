//! Institutional-grammar analysis of written policy statements.
//!
//! The crate decomposes policy sentences into labeled grammatical
//! components (agent, object, deontic, aim, context, or-else), clusters
//! extracted component texts into topics with a noise bucket, maps them
//! onto governance categories, and quantifies administrative hierarchy
//! with histograms, crosstabs, and Pearson chi-square independence tests.
//!
//! Stages, in pipeline order:
//!
//! 1. [`corpus`] — load/segment policy documents and gold annotations.
//! 2. [`syntax`] — tokenization and shallow syntactic features.
//! 3. [`classifier`] — per-token component labeling and span grouping.
//! 4. [`clustering`] — trigram-hash embeddings, density-style clustering,
//!    and class-based topic keywords.
//! 5. [`taxonomy`] — cluster/head-noun category rules and deontic
//!    strength.
//! 6. [`stats`] — histograms, crosstabs, top-k filtering, chi-square.
//! 7. [`report`] — CSV/SVG/markdown rendering and the run report.
//! 8. [`pipeline`] — file-based orchestration behind the `ig` binary.
//!
//! Everything is deterministic: identical inputs and configuration produce
//! byte-identical artifacts, and model training is a pure function of
//! `(gold, epochs, seed)`.

pub mod classifier;
pub mod clustering;
pub mod corpus;
mod error;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod syntax;
pub mod synth;
pub mod taxonomy;

pub use classifier::{ComponentLabel, ComponentSpan, Metrics, TokenClassifierModel};
pub use clustering::{ClusterAssignment, ClusterId, ClusterParams, EmbeddingVector};
pub use corpus::{Corpus, CorpusFormat, GoldAnnotation, InstitutionalStatement, PolicyDocument};
pub use error::{Error, Result};
pub use pipeline::{PipelineConfig, Stage};
pub use report::RunReport;
pub use stats::{AnalysisRecord, ChiSquareResult, ContingencyTable};
pub use syntax::{FeatureVector, PosTag, SyntacticToken};
pub use taxonomy::{AgentCategory, CategoryMap, DeonticClass, ObjectCategory};
