//! Deterministic synthetic policy corpora.
//!
//! Statements are assembled from labeled templates over a small governance
//! vocabulary, so every generated token carries a known component label.
//! The same generator backs the bundled fixtures, the classifier
//! experiments, and the planted-ratio corpora used to sanity-check the
//! independence tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::ComponentLabel;
use crate::corpus::{Corpus, GoldAnnotation, InstitutionalStatement};
use crate::syntax;

/// One document to generate: id, display title, and statement count.
#[derive(Debug, Clone)]
pub struct DocSpec {
    pub doc_id: String,
    pub title: String,
    pub statements: usize,
}

impl DocSpec {
    pub fn new(doc_id: &str, title: &str, statements: usize) -> Self {
        DocSpec {
            doc_id: doc_id.to_string(),
            title: title.to_string(),
            statements,
        }
    }
}

const AUTHORITY_AGENTS: [&str; 6] = ["mentor", "mentors", "ipmc", "asf", "chair", "board"];
const PARTICIPANT_AGENTS: [&str; 7] = [
    "committer",
    "committers",
    "podling",
    "podlings",
    "contributor",
    "contributors",
    "ppmc",
];
const AIM_VERBS: [&str; 10] = [
    "notify", "submit", "approve", "reject", "review", "publish", "sign", "archive", "maintain",
    "update",
];
const OBJECTS: [&str; 14] = [
    "vote",
    "votes",
    "release",
    "releases",
    "record",
    "records",
    "repository",
    "roadmap",
    "codebase",
    "license",
    "artifact",
    "branch",
    "community",
    "board",
];
const CONTEXT_PREPS: [&str; 3] = ["during", "before", "after"];
const CONTEXT_NOUNS: [&str; 4] = ["incubation", "graduation", "retirement", "onboarding"];
const STRONG_DEONTICS: [&str; 3] = ["must", "will", "shall"];
const WEAK_DEONTICS: [&str; 3] = ["may", "can", "should"];

type LabeledToken = (&'static str, ComponentLabel);

fn pick(rng: &mut ChaCha8Rng, pool: &[&'static str]) -> &'static str {
    pool[rng.gen_range(0..pool.len())]
}

fn is_plural(agent: &str) -> bool {
    agent.ends_with('s') && agent != "asf"
}

fn agent_pool(rng: &mut ChaCha8Rng) -> &'static [&'static str] {
    // Participants are regulated more often than authorities.
    if rng.gen_range(0..10) < 6 {
        &PARTICIPANT_AGENTS
    } else {
        &AUTHORITY_AGENTS
    }
}

fn deontic_pool(rng: &mut ChaCha8Rng) -> &'static [&'static str] {
    // Strong deontics dominate.
    if rng.gen_range(0..10) < 7 {
        &STRONG_DEONTICS
    } else {
        &WEAK_DEONTICS
    }
}

fn basic(
    rng: &mut ChaCha8Rng,
    agents: &[&'static str],
    deontics: &[&'static str],
) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    vec![
        ("the", Agent),
        (pick(rng, agents), Agent),
        (pick(rng, deontics), Deontic),
        (pick(rng, &AIM_VERBS), Aim),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        (".", None),
    ]
}

fn with_context(
    rng: &mut ChaCha8Rng,
    agents: &[&'static str],
    deontics: &[&'static str],
) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    let mut tokens = basic(rng, agents, deontics);
    tokens.pop(); // drop the period, re-append after the context tail
    tokens.push((pick(rng, &CONTEXT_PREPS), Context));
    tokens.push((pick(rng, &CONTEXT_NOUNS), Context));
    tokens.push((".", None));
    tokens
}

fn bare_agent(rng: &mut ChaCha8Rng, deontics: &[&'static str]) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    let plurals: Vec<&'static str> = PARTICIPANT_AGENTS
        .iter()
        .chain(AUTHORITY_AGENTS.iter())
        .copied()
        .filter(|a| is_plural(a))
        .collect();
    vec![
        (pick(rng, &plurals), Agent),
        (pick(rng, deontics), Deontic),
        (pick(rng, &AIM_VERBS), Aim),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        (".", None),
    ]
}

fn context_first(
    rng: &mut ChaCha8Rng,
    agents: &[&'static str],
    deontics: &[&'static str],
) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    vec![
        (pick(rng, &CONTEXT_PREPS), Context),
        (pick(rng, &CONTEXT_NOUNS), Context),
        (",", None),
        ("the", Agent),
        (pick(rng, agents), Agent),
        (pick(rng, deontics), Deontic),
        (pick(rng, &AIM_VERBS), Aim),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        (".", None),
    ]
}

fn stative(rng: &mut ChaCha8Rng, agents: &[&'static str]) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    let agent = pick(rng, agents);
    let copula = if is_plural(agent) { "are" } else { "is" };
    let aim = if rng.gen_range(0..2) == 0 {
        "responsible"
    } else {
        "accountable"
    };
    vec![
        ("the", Agent),
        (agent, Agent),
        (copula, Deontic),
        (aim, Aim),
        ("for", Object),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        (".", None),
    ]
}

fn proscriptive(rng: &mut ChaCha8Rng, agents: &[&'static str]) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    let modal = if rng.gen_range(0..2) == 0 {
        "must"
    } else {
        "will"
    };
    vec![
        ("the", Agent),
        (pick(rng, agents), Agent),
        (modal, Deontic),
        ("not", Deontic),
        (pick(rng, &AIM_VERBS), Aim),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        (".", None),
    ]
}

fn or_else(rng: &mut ChaCha8Rng, agents: &[&'static str]) -> Vec<LabeledToken> {
    use ComponentLabel::*;
    vec![
        ("the", Agent),
        (pick(rng, agents), Agent),
        ("must", Deontic),
        (pick(rng, &AIM_VERBS), Aim),
        ("the", Object),
        (pick(rng, &OBJECTS), Object),
        ("or", OrElse),
        ("else", OrElse),
        ("the", OrElse),
        ("ipmc", OrElse),
        ("may", OrElse),
        ("retire", OrElse),
        ("the", OrElse),
        ("podling", OrElse),
        (".", None),
    ]
}

fn generate_tokens(rng: &mut ChaCha8Rng) -> Vec<LabeledToken> {
    let agents = agent_pool(rng);
    let deontics = deontic_pool(rng);
    match rng.gen_range(0..100) {
        0..=29 => basic(rng, agents, deontics),
        30..=49 => with_context(rng, agents, deontics),
        50..=64 => bare_agent(rng, deontics),
        65..=74 => context_first(rng, agents, deontics),
        75..=86 => stative(rng, agents),
        87..=94 => proscriptive(rng, agents),
        _ => or_else(rng, agents),
    }
}

fn capitalize_first(token: &str) -> String {
    let mut chars = token.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn assemble(
    doc_id: &str,
    k: usize,
    labeled: Vec<LabeledToken>,
) -> (InstitutionalStatement, GoldAnnotation) {
    let mut tokens: Vec<String> = labeled.iter().map(|(t, _)| t.to_string()).collect();
    tokens[0] = capitalize_first(&tokens[0]);
    let labels: Vec<ComponentLabel> = labeled.iter().map(|(_, l)| *l).collect();
    let text = syntax::detokenize(&tokens);
    let statement = InstitutionalStatement::new(format!("{doc_id}#{k}"), doc_id, text);
    assert_eq!(
        statement.tokens, tokens,
        "template tokens must survive the tokenize/detokenize round trip"
    );
    let gold = GoldAnnotation {
        statement_id: statement.statement_id.clone(),
        labels,
    };
    (statement, gold)
}

/// Generates a synthetic corpus with gold labels for every token.
/// Deterministic for a fixed `(specs, seed)`.
pub fn generate_corpus(specs: &[DocSpec], seed: u64) -> (Corpus, Vec<GoldAnnotation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut statements = Vec::new();
    let mut gold = Vec::new();
    let mut titles = std::collections::BTreeMap::new();
    for spec in specs {
        titles.insert(spec.doc_id.clone(), spec.title.clone());
        for k in 0..spec.statements {
            let (statement, annotation) = assemble(&spec.doc_id, k, generate_tokens(&mut rng));
            statements.push(statement);
            gold.push(annotation);
        }
    }
    let corpus = Corpus::from_statements(statements, &titles).expect("generated ids are unique");
    (corpus, gold)
}

/// A corpus with planted agent-group x deontic-strength proportions: every
/// statement has one agent span and one deontic span, so the crosstab `N`
/// equals the statement count exactly.
#[derive(Debug, Clone, Copy)]
pub struct DeonticRatioSpec {
    pub authority_statements: usize,
    pub authority_strong: usize,
    pub participant_statements: usize,
    pub participant_strong: usize,
}

/// Generates the planted-ratio corpus. Statement order is shuffled but the
/// per-group strong/weak counts are exact.
pub fn generate_deontic_ratio_corpus(
    spec: &DeonticRatioSpec,
    doc_id: &str,
    seed: u64,
) -> (Corpus, Vec<GoldAnnotation>) {
    assert!(spec.authority_strong <= spec.authority_statements);
    assert!(spec.participant_strong <= spec.participant_statements);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plan: Vec<(bool, bool)> = Vec::new();
    for i in 0..spec.authority_statements {
        plan.push((true, i < spec.authority_strong));
    }
    for i in 0..spec.participant_statements {
        plan.push((false, i < spec.participant_strong));
    }
    plan.shuffle(&mut rng);

    let mut statements = Vec::new();
    let mut gold = Vec::new();
    for (k, (authority, strong)) in plan.into_iter().enumerate() {
        let agents: &[&'static str] = if authority {
            &AUTHORITY_AGENTS
        } else {
            &PARTICIPANT_AGENTS
        };
        let deontics: &[&'static str] = if strong {
            &STRONG_DEONTICS
        } else {
            &WEAK_DEONTICS
        };
        let labeled = if rng.gen_range(0..2) == 0 {
            basic(&mut rng, agents, deontics)
        } else {
            with_context(&mut rng, agents, deontics)
        };
        let (statement, annotation) = assemble(doc_id, k, labeled);
        statements.push(statement);
        gold.push(annotation);
    }
    let corpus = Corpus::from_statements(statements, &std::collections::BTreeMap::new())
        .expect("generated ids are unique");
    (corpus, gold)
}
