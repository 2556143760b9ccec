//! Mapping of raw clusters and head nouns onto governance categories, and
//! deontic strength classification.
//!
//! The aggregation that a domain expert would do by hand lives in a
//! declarative config file so it stays auditable: section `[agents]` maps
//! agent clusters/terms to `Authority` or `Participant`, `[objects]` maps
//! object clusters/terms to the five object categories, and `[options]`
//! picks what happens to unmapped components.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::{ComponentLabel, ComponentSpan};
use crate::clustering::{ClusterAssignment, ClusterId};
use crate::error::{Error, Result};
use crate::syntax;

/// High-level agent categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AgentCategory {
    Authority,
    Participant,
}

impl AgentCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            AgentCategory::Authority => "Authority",
            AgentCategory::Participant => "Participant",
        }
    }
}

impl std::fmt::Display for AgentCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AgentCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match normalize_category(s).as_str() {
            "authority" => Ok(AgentCategory::Authority),
            "participant" => Ok(AgentCategory::Participant),
            _ => Err(Error::UnknownCategory(s.to_string())),
        }
    }
}

/// High-level object categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObjectCategory {
    ProductManagement,
    ProjectManagement,
    Authority,
    Product,
    Participants,
}

impl ObjectCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectCategory::ProductManagement => "ProductManagement",
            ObjectCategory::ProjectManagement => "ProjectManagement",
            ObjectCategory::Authority => "Authority",
            ObjectCategory::Product => "Product",
            ObjectCategory::Participants => "Participants",
        }
    }
}

impl std::fmt::Display for ObjectCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ObjectCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match normalize_category(s).as_str() {
            "productmanagement" => Ok(ObjectCategory::ProductManagement),
            "projectmanagement" => Ok(ObjectCategory::ProjectManagement),
            "authority" => Ok(ObjectCategory::Authority),
            "product" => Ok(ObjectCategory::Product),
            "participants" => Ok(ObjectCategory::Participants),
            _ => Err(Error::UnknownCategory(s.to_string())),
        }
    }
}

fn normalize_category(s: &str) -> String {
    s.chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(|c| c.to_lowercase())
        .collect()
}

/// Deontic strength classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DeonticClass {
    Strong,
    Weak,
    Proscriptive,
    Stative,
    Other,
}

impl DeonticClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DeonticClass::Strong => "Strong",
            DeonticClass::Weak => "Weak",
            DeonticClass::Proscriptive => "Proscriptive",
            DeonticClass::Stative => "Stative",
            DeonticClass::Other => "Other",
        }
    }
}

impl std::fmt::Display for DeonticClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What happens to a component no rule matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefaultPolicy {
    /// Unmapped components are an error.
    Error,
    /// Unmapped components land in an "other" bucket and are excluded from
    /// crosstabs; the exclusion is counted in the run report.
    #[default]
    OtherBucket,
}

/// Declarative cluster/term-to-category rules.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CategoryMap {
    agent_cluster_rules: BTreeMap<usize, AgentCategory>,
    agent_literal_rules: BTreeMap<String, AgentCategory>,
    object_cluster_rules: BTreeMap<usize, ObjectCategory>,
    object_literal_rules: BTreeMap<String, ObjectCategory>,
    pub default_policy: DefaultPolicy,
}

impl CategoryMap {
    pub fn new(default_policy: DefaultPolicy) -> Self {
        CategoryMap {
            default_policy,
            ..CategoryMap::default()
        }
    }

    pub fn add_agent_cluster(&mut self, id: usize, category: AgentCategory) -> Result<()> {
        if self.agent_cluster_rules.insert(id, category).is_some() {
            return Err(Error::DuplicateTaxonomyKey(format!("cluster:{id}")));
        }
        Ok(())
    }

    pub fn add_agent_literal(&mut self, term: &str, category: AgentCategory) -> Result<()> {
        let key = term.to_lowercase();
        if self
            .agent_literal_rules
            .insert(key.clone(), category)
            .is_some()
        {
            return Err(Error::DuplicateTaxonomyKey(key));
        }
        Ok(())
    }

    pub fn add_object_cluster(&mut self, id: usize, category: ObjectCategory) -> Result<()> {
        if self.object_cluster_rules.insert(id, category).is_some() {
            return Err(Error::DuplicateTaxonomyKey(format!("cluster:{id}")));
        }
        Ok(())
    }

    pub fn add_object_literal(&mut self, term: &str, category: ObjectCategory) -> Result<()> {
        let key = term.to_lowercase();
        if self
            .object_literal_rules
            .insert(key.clone(), category)
            .is_some()
        {
            return Err(Error::DuplicateTaxonomyKey(key));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.agent_cluster_rules.is_empty()
            && self.agent_literal_rules.is_empty()
            && self.object_cluster_rules.is_empty()
            && self.object_literal_rules.is_empty()
    }
}

/// Loads a taxonomy config: `#` comments, `[agents]` / `[objects]` /
/// `[options]` sections, `key = value` lines. Keys are `cluster:<id>` or
/// literal terms (lowercased on load); values are category names. The
/// `[options]` section accepts `unmapped = other | error`.
pub fn load_taxonomy(path: impl AsRef<Path>) -> Result<CategoryMap> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_taxonomy(&content, path)
}

fn parse_taxonomy(content: &str, path: &Path) -> Result<CategoryMap> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Agents,
        Objects,
        Options,
    }

    let malformed = |line: usize, message: String| Error::MalformedTaxonomy {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut map = CategoryMap::default();
    let mut section = Section::None;
    let mut saw_unmapped = false;
    for (i, raw_line) in content.lines().enumerate() {
        let lineno = i + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = match name.trim() {
                "agents" => Section::Agents,
                "objects" => Section::Objects,
                "options" => Section::Options,
                other => return Err(malformed(lineno, format!("unknown section `[{other}]`"))),
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(malformed(
                lineno,
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(malformed(lineno, "empty key or value".to_string()));
        }
        match section {
            Section::None => {
                return Err(malformed(
                    lineno,
                    "key outside of a [agents]/[objects]/[options] section".to_string(),
                ));
            }
            Section::Options => match key {
                "unmapped" => {
                    if saw_unmapped {
                        return Err(Error::DuplicateTaxonomyKey("unmapped".to_string()));
                    }
                    saw_unmapped = true;
                    map.default_policy = match value.to_lowercase().as_str() {
                        "other" => DefaultPolicy::OtherBucket,
                        "error" => DefaultPolicy::Error,
                        other => {
                            return Err(malformed(
                                lineno,
                                format!("unmapped must be `other` or `error`, got `{other}`"),
                            ));
                        }
                    };
                }
                other => return Err(malformed(lineno, format!("unknown option `{other}`"))),
            },
            Section::Agents => {
                let category: AgentCategory = value.parse()?;
                match parse_cluster_key(key, lineno, &malformed)? {
                    Some(id) => map.add_agent_cluster(id, category)?,
                    None => map.add_agent_literal(key, category)?,
                }
            }
            Section::Objects => {
                let category: ObjectCategory = value.parse()?;
                match parse_cluster_key(key, lineno, &malformed)? {
                    Some(id) => map.add_object_cluster(id, category)?,
                    None => map.add_object_literal(key, category)?,
                }
            }
        }
    }
    Ok(map)
}

fn parse_cluster_key(
    key: &str,
    lineno: usize,
    malformed: &impl Fn(usize, String) -> Error,
) -> Result<Option<usize>> {
    match key.strip_prefix("cluster:") {
        Some(id) => id
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| malformed(lineno, format!("bad cluster id `{id}`"))),
        None => Ok(None),
    }
}

/// Head noun of a span: the last token containing an alphanumeric
/// character, lowercased. Drives the literal taxonomy rules.
pub fn head_noun(text: &str) -> Option<String> {
    syntax::tokenize(text)
        .into_iter()
        .rev()
        .find(|t| t.chars().any(|c| c.is_alphanumeric()))
        .map(|t| t.to_lowercase())
}

fn lookup<C: Copy>(
    span: &ComponentSpan,
    assignment: &ClusterAssignment,
    cluster_rules: &BTreeMap<usize, C>,
    literal_rules: &BTreeMap<String, C>,
    default_policy: DefaultPolicy,
) -> Result<Option<C>> {
    if let Some(ClusterId::Cluster(id)) = assignment.cluster_of(&span.component_ref()) {
        if let Some(category) = cluster_rules.get(&id) {
            return Ok(Some(*category));
        }
    }
    if let Some(noun) = head_noun(&span.text) {
        if let Some(category) = literal_rules.get(&noun) {
            return Ok(Some(*category));
        }
    }
    match default_policy {
        DefaultPolicy::OtherBucket => Ok(None),
        DefaultPolicy::Error => Err(Error::UnmappedComponent(span.component_ref())),
    }
}

/// Categorizes an agent (`A`) span. Lookup order: explicit cluster rule,
/// then literal head-noun rule, then the default policy (`Ok(None)` means
/// the component fell into the other bucket).
pub fn categorize_agent(
    span: &ComponentSpan,
    assignment: &ClusterAssignment,
    map: &CategoryMap,
) -> Result<Option<AgentCategory>> {
    if span.label != ComponentLabel::Agent {
        return Err(Error::ComponentKindMismatch {
            component_ref: span.component_ref(),
            expected: ComponentLabel::Agent,
            actual: span.label,
        });
    }
    lookup(
        span,
        assignment,
        &map.agent_cluster_rules,
        &map.agent_literal_rules,
        map.default_policy,
    )
}

/// Categorizes an object (`B`) span; see [`categorize_agent`].
pub fn categorize_object(
    span: &ComponentSpan,
    assignment: &ClusterAssignment,
    map: &CategoryMap,
) -> Result<Option<ObjectCategory>> {
    if span.label != ComponentLabel::Object {
        return Err(Error::ComponentKindMismatch {
            component_ref: span.component_ref(),
            expected: ComponentLabel::Object,
            actual: span.label,
        });
    }
    lookup(
        span,
        assignment,
        &map.object_cluster_rules,
        &map.object_literal_rules,
        map.default_policy,
    )
}

const STRONG_MODALS: [&str; 3] = ["must", "will", "shall"];
const WEAK_MODALS: [&str; 5] = ["may", "can", "should", "might", "could"];
const NEGATORS: [&str; 2] = ["not", "never"];
const STATIVE_VERBS: [&str; 4] = ["is", "are", "be", "been"];

fn is_modal(word: &str) -> bool {
    STRONG_MODALS.contains(&word) || WEAK_MODALS.contains(&word)
}

/// `n't` contractions of modal verbs count as a modal plus an adjacent
/// negator.
fn is_negated_modal_contraction(word: &str) -> bool {
    word.strip_suffix("n't")
        .map(|stem| is_modal(stem) || matches!(stem, "wo" | "ca" | "sha"))
        .unwrap_or(false)
}

/// Classifies a deontic span by strength. Case-insensitive and total: a
/// negator adjacent to a modal is proscriptive, then the first modal
/// decides strong/weak, then a bare copula is stative, everything else is
/// other.
pub fn classify_deontic(text: &str) -> DeonticClass {
    let words = syntax::tokenize(&text.to_lowercase());
    for (i, word) in words.iter().enumerate() {
        if is_negated_modal_contraction(word) {
            return DeonticClass::Proscriptive;
        }
        if is_modal(word) {
            let prev_negated = i > 0 && NEGATORS.contains(&words[i - 1].as_str());
            let next_negated = words
                .get(i + 1)
                .map(|w| NEGATORS.contains(&w.as_str()))
                .unwrap_or(false);
            if prev_negated || next_negated {
                return DeonticClass::Proscriptive;
            }
        }
    }
    if let Some(word) = words.iter().find(|w| is_modal(w)) {
        return if STRONG_MODALS.contains(&word.as_str()) {
            DeonticClass::Strong
        } else {
            DeonticClass::Weak
        };
    }
    if words.iter().any(|w| STATIVE_VERBS.contains(&w.as_str())) {
        return DeonticClass::Stative;
    }
    DeonticClass::Other
}
