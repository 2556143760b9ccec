//! Tokenization and shallow syntactic annotation.
//!
//! The annotator is deliberately lightweight: a lexicon-plus-suffix
//! part-of-speech tagger and a deterministic head-attachment heuristic.
//! It exists to feed stable categorical features to the component
//! classifier, not to be a linguistically complete parser.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Modal verbs recognized by the tagger.
pub const MODAL_LEXICON: [&str; 8] = [
    "must", "will", "shall", "may", "can", "should", "might", "would",
];

/// Punctuation detached from token edges. Internal occurrences (hyphens,
/// slashes, mid-token parentheses) are preserved.
const DETACHABLE: [char; 10] = ['.', ',', ';', ':', '!', '?', '"', '\'', '(', ')'];

/// No whitespace is emitted before these tokens when reassembling text.
const ATTACH_LEFT: [&str; 7] = [".", ",", ";", ":", "!", "?", ")"];

/// Coarse part-of-speech tags. The inventory is closed: the classifier
/// consumes tags as categorical features, so stability matters more than
/// granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosTag {
    Noun,
    Verb,
    Modal,
    Adj,
    Adv,
    Det,
    Adp,
    Pron,
    Num,
    Punct,
    Other,
}

impl PosTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Modal => "MODAL",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Pron => "PRON",
            PosTag::Num => "NUM",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        }
    }
}

impl std::fmt::Display for PosTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dependency relations assigned by the shallow annotator. Closed inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    Root,
    Aux,
    Det,
    Amod,
    Obj,
    Other,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Root => "root",
            Relation::Aux => "aux",
            Relation::Det => "det",
            Relation::Amod => "amod",
            Relation::Obj => "obj",
            Relation::Other => "other",
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One token with its shallow syntactic annotation.
///
/// `head` is `None` for the single root token of a statement; every other
/// token points at an in-range head index distinct from its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntacticToken {
    pub index: usize,
    pub form: String,
    pub lower: String,
    pub pos: PosTag,
    pub head: Option<usize>,
    pub relation: Relation,
    pub shape: String,
}

/// Named sparse feature vector. Indicator features carry unit weight;
/// names are stable strings so identical inputs always produce identical
/// vectors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector {
    pub weights: BTreeMap<String, f64>,
}

impl FeatureVector {
    fn indicator(&mut self, name: String) {
        *self.weights.entry(name).or_insert(0.0) += 1.0;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Splits text into tokens: whitespace-delimited, with leading and trailing
/// occurrences of `. , ; : ! ? " ' ( )` detached as separate tokens.
/// Internal hyphens, slashes, and punctuation are preserved, and case is
/// never altered.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let mut lo = 0;
        let mut hi = chars.len();
        while lo < hi && DETACHABLE.contains(&chars[lo]) {
            lo += 1;
        }
        while hi > lo && DETACHABLE.contains(&chars[hi - 1]) {
            hi -= 1;
        }
        for &c in &chars[..lo] {
            out.push(c.to_string());
        }
        if lo < hi {
            out.push(chars[lo..hi].iter().collect());
        }
        for &c in &chars[hi..] {
            out.push(c.to_string());
        }
    }
    out
}

/// Reassembles tokens into text under the tokenizer's whitespace rules:
/// single spaces between tokens, none before sentence punctuation or a
/// closing parenthesis, none after an opening parenthesis. Quote characters
/// attach by alternation (first occurrence opens, second closes).
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut suppress_space = true;
    let mut open_double = false;
    let mut open_single = false;
    for token in tokens {
        let t = token.as_ref();
        let mut space = !suppress_space;
        if ATTACH_LEFT.contains(&t) {
            space = false;
        }
        suppress_space = false;
        match t {
            "(" => suppress_space = true,
            "\"" => {
                if open_double {
                    space = false;
                } else {
                    suppress_space = true;
                }
                open_double = !open_double;
            }
            "'" => {
                if open_single {
                    space = false;
                } else {
                    suppress_space = true;
                }
                open_single = !open_single;
            }
            _ => {}
        }
        if space && !out.is_empty() {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

const DET_LEXICON: [&str; 14] = [
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "any", "some", "all",
    "both", "no",
];

const ADP_LEXICON: [&str; 25] = [
    "of", "in", "on", "at", "by", "for", "with", "to", "from", "as", "into", "onto", "within",
    "without", "under", "over", "about", "after", "before", "during", "between", "through",
    "against", "per", "via",
];

const PRON_LEXICON: [&str; 22] = [
    "i", "you", "he", "she", "it", "we", "they", "them", "him", "her", "us", "me", "who", "whom",
    "whose", "which", "its", "their", "our", "your", "anyone", "everyone",
];

const VERB_LEXICON: [&str; 66] = [
    "is",
    "are",
    "was",
    "were",
    "be",
    "been",
    "being",
    "am",
    "has",
    "have",
    "had",
    "do",
    "does",
    "did",
    "done",
    "notify",
    "notifies",
    "notified",
    "submit",
    "submits",
    "submitted",
    "approve",
    "approves",
    "approved",
    "reject",
    "rejects",
    "rejected",
    "review",
    "reviews",
    "reviewed",
    "publish",
    "publishes",
    "published",
    "sign",
    "signs",
    "signed",
    "archive",
    "archives",
    "archived",
    "elect",
    "elects",
    "elected",
    "nominate",
    "nominates",
    "nominated",
    "maintain",
    "maintains",
    "maintained",
    "update",
    "updates",
    "updated",
    "verify",
    "verifies",
    "verified",
    "distribute",
    "distributes",
    "distributed",
    "retire",
    "retires",
    "retired",
    "vote",
    "voted",
    "attend",
    "attends",
    "respond",
    "responds",
];

const NOUN_LEXICON: [&str; 54] = [
    "mentor",
    "mentors",
    "committer",
    "committers",
    "podling",
    "podlings",
    "contributor",
    "contributors",
    "community",
    "ipmc",
    "ppmc",
    "asf",
    "incubator",
    "board",
    "chair",
    "release",
    "releases",
    "votes",
    "record",
    "records",
    "report",
    "reports",
    "repository",
    "repositories",
    "license",
    "licenses",
    "codebase",
    "artifact",
    "artifacts",
    "distribution",
    "distributions",
    "roadmap",
    "plan",
    "guide",
    "guides",
    "policy",
    "policies",
    "project",
    "projects",
    "list",
    "lists",
    "graduation",
    "retirement",
    "incubation",
    "onboarding",
    "period",
    "quorum",
    "branch",
    "branches",
    "source",
    "sources",
    "committee",
    "members",
    "version",
];

const ADJ_LEXICON: [&str; 16] = [
    "new",
    "active",
    "stable",
    "official",
    "final",
    "public",
    "private",
    "formal",
    "annual",
    "monthly",
    "eligible",
    "responsible",
    "accountable",
    "current",
    "open",
    "binding",
];

fn in_lexicon(lexicon: &[&str], word: &str) -> bool {
    lexicon.contains(&word)
}

fn looks_numeric(lower: &str) -> bool {
    lower.chars().any(|c| c.is_ascii_digit())
        && lower
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '-' | '/' | '%'))
}

fn pos_tag(form: &str, lower: &str) -> PosTag {
    if !form.chars().any(|c| c.is_alphanumeric()) {
        return PosTag::Punct;
    }
    if looks_numeric(lower) {
        return PosTag::Num;
    }
    if in_lexicon(&MODAL_LEXICON, lower) {
        return PosTag::Modal;
    }
    if in_lexicon(&DET_LEXICON, lower) {
        return PosTag::Det;
    }
    if in_lexicon(&ADP_LEXICON, lower) {
        return PosTag::Adp;
    }
    if in_lexicon(&PRON_LEXICON, lower) {
        return PosTag::Pron;
    }
    if in_lexicon(&VERB_LEXICON, lower) {
        return PosTag::Verb;
    }
    if in_lexicon(&NOUN_LEXICON, lower) {
        return PosTag::Noun;
    }
    if in_lexicon(&ADJ_LEXICON, lower) {
        return PosTag::Adj;
    }
    if lower.len() > 3 {
        if lower.ends_with("ly") {
            return PosTag::Adv;
        }
        if ["ous", "ful", "ive", "able", "ible", "ant", "ent", "ic"]
            .iter()
            .any(|s| lower.ends_with(s))
        {
            return PosTag::Adj;
        }
        if [
            "tion", "sion", "ment", "ness", "ity", "ship", "ance", "ence", "ers", "ors",
        ]
        .iter()
        .any(|s| lower.ends_with(s))
        {
            return PosTag::Noun;
        }
        if ["ize", "ise", "ify", "ate"]
            .iter()
            .any(|s| lower.ends_with(s))
        {
            return PosTag::Verb;
        }
    }
    PosTag::Other
}

/// Capitalization/digit shape of a token: uppercase -> `X`, lowercase ->
/// `x`, digit -> `d`, anything else kept verbatim; runs longer than two are
/// collapsed to two.
fn shape(form: &str) -> String {
    let mut out = String::new();
    let mut prev = None;
    let mut run = 0usize;
    for c in form.chars() {
        let mapped = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            'd'
        } else {
            c
        };
        if Some(mapped) == prev {
            run += 1;
        } else {
            prev = Some(mapped);
            run = 1;
        }
        if run <= 2 {
            out.push(mapped);
        }
    }
    out
}

/// Annotates tokens with part of speech, head index, and relation.
///
/// The root is the first verb (falling back to the first modal, then the
/// first non-punctuation token, then token zero). Determiners and
/// adjectives attach to the nearest following noun, modals to the nearest
/// following verb, and everything else to the root, which keeps the head
/// graph acyclic by construction.
pub fn annotate_syntax(tokens: &[String]) -> Vec<SyntacticToken> {
    if tokens.is_empty() {
        return Vec::new();
    }
    let lowers: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let tags: Vec<PosTag> = tokens
        .iter()
        .zip(&lowers)
        .map(|(form, lower)| pos_tag(form, lower))
        .collect();

    let root = tags
        .iter()
        .position(|t| *t == PosTag::Verb)
        .or_else(|| tags.iter().position(|t| *t == PosTag::Modal))
        .or_else(|| tags.iter().position(|t| *t != PosTag::Punct))
        .unwrap_or(0);

    let nearest_after = |i: usize, wanted: PosTag| -> Option<usize> {
        ((i + 1)..tokens.len()).find(|&j| tags[j] == wanted)
    };

    (0..tokens.len())
        .map(|i| {
            let (head, relation) = if i == root {
                (None, Relation::Root)
            } else {
                match tags[i] {
                    PosTag::Det => match nearest_after(i, PosTag::Noun) {
                        Some(j) => (Some(j), Relation::Det),
                        None => (Some(root), Relation::Other),
                    },
                    PosTag::Adj => match nearest_after(i, PosTag::Noun) {
                        Some(j) => (Some(j), Relation::Amod),
                        None => (Some(root), Relation::Other),
                    },
                    PosTag::Modal => match nearest_after(i, PosTag::Verb) {
                        Some(j) => (Some(j), Relation::Aux),
                        None => (Some(root), Relation::Other),
                    },
                    PosTag::Noun if i > root => (Some(root), Relation::Obj),
                    _ => (Some(root), Relation::Other),
                }
            };
            SyntacticToken {
                index: i,
                form: tokens[i].clone(),
                lower: lowers[i].clone(),
                pos: tags[i],
                head,
                relation,
                shape: shape(&tokens[i]),
            }
        })
        .collect()
}

/// Extracts the classifier feature vector for the token at `index`.
///
/// Emits the token's lowercased form, tag, shape and relation, its head's
/// form and tag, a +-2 window of neighboring forms and tags with `<S>` /
/// `</S>` boundary sentinels, a modal flag, and a first/last/interior
/// position bucket. A constant `bias` feature is always present.
///
/// Pure function: equal inputs yield equal vectors across runs.
pub fn featurize(tokens: &[SyntacticToken], index: usize) -> FeatureVector {
    let token = &tokens[index];
    let mut fv = FeatureVector::default();
    fv.indicator("bias".to_string());
    fv.indicator(format!("lower={}", token.lower));
    fv.indicator(format!("pos={}", token.pos));
    fv.indicator(format!("shape={}", token.shape));
    fv.indicator(format!("rel={}", token.relation));
    match token.head {
        Some(h) => {
            fv.indicator(format!("headlower={}", tokens[h].lower));
            fv.indicator(format!("headpos={}", tokens[h].pos));
        }
        None => {
            fv.indicator("headlower=<ROOT>".to_string());
            fv.indicator("headpos=<ROOT>".to_string());
        }
    }
    for offset in 1..=2usize {
        let (prev_form, prev_pos) = match index.checked_sub(offset) {
            Some(j) => (tokens[j].lower.clone(), tokens[j].pos.to_string()),
            None => ("<S>".to_string(), "<S>".to_string()),
        };
        fv.indicator(format!("prev{offset}={prev_form}"));
        fv.indicator(format!("prevpos{offset}={prev_pos}"));
        let (next_form, next_pos) = match tokens.get(index + offset) {
            Some(t) => (t.lower.clone(), t.pos.to_string()),
            None => ("</S>".to_string(), "</S>".to_string()),
        };
        fv.indicator(format!("next{offset}={next_form}"));
        fv.indicator(format!("nextpos{offset}={next_pos}"));
    }
    let is_modal = token.pos == PosTag::Modal || in_lexicon(&MODAL_LEXICON, &token.lower);
    fv.indicator(format!("ismodal={}", if is_modal { 1 } else { 0 }));
    let bucket = if index == 0 {
        "first"
    } else if index == tokens.len() - 1 {
        "last"
    } else {
        "interior"
    };
    fv.indicator(format!("posbucket={bucket}"));
    fv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_detaches_sentence_punctuation() {
        assert_eq!(
            tokenize("The mentor must notify the community."),
            vec!["The", "mentor", "must", "notify", "the", "community", "."]
        );
    }

    #[test]
    fn tokenize_detaches_trailing_comma() {
        assert_eq!(tokenize("votes,"), vec!["votes", ","]);
    }

    // Hand-built oracle for the tokenization rule table: split on
    // whitespace, detach edge punctuation, keep internal hyphens, slashes,
    // and parentheses, never alter case.
    #[test]
    fn tokenize_rule_table_cases() {
        let cases: Vec<(&str, Vec<&str>)> = vec![
            ("", vec![]),
            ("   ", vec![]),
            ("Vote", vec!["Vote"]),
            ("vote.", vec!["vote", "."]),
            ("vote...", vec!["vote", ".", ".", "."]),
            ("(vote)", vec!["(", "vote", ")"]),
            ("(P)PMC-level", vec!["(", "P)PMC-level"]),
            ("PPMC-level", vec!["PPMC-level"]),
            ("and/or", vec!["and/or"]),
            ("\"binding\"", vec!["\"", "binding", "\""]),
            ("don't", vec!["don't"]),
            ("'quoted'", vec!["'", "quoted", "'"]),
            ("e.g.", vec!["e.g", "."]),
            ("item;", vec!["item", ";"]),
            ("first: second", vec!["first", ":", "second"]),
            ("really?!", vec!["really", "?", "!"]),
            ("a, b", vec!["a", ",", "b"]),
            (
                "(i.e. new projects)",
                vec!["(", "i.e", ".", "new", "projects", ")"],
            ),
            ("Mixed CASE stays", vec!["Mixed", "CASE", "stays"]),
            ("3.0-incubating", vec!["3.0-incubating"]),
        ];
        for (input, expected) in cases {
            assert_eq!(tokenize(input), expected, "input: {input:?}");
        }
    }

    #[test]
    fn detokenize_round_trips_ordinary_prose() {
        let cases = [
            "The mentor must notify the community.",
            "Podlings (i.e. new projects) must report.",
            "First, the vote; then, the release.",
            "\"binding\" votes only",
        ];
        for text in cases {
            assert_eq!(detokenize(&tokenize(text)), text);
        }
    }

    #[test]
    fn modal_attaches_to_following_verb_as_aux() {
        let tokens = tokenize("The mentor must notify the community.");
        let ann = annotate_syntax(&tokens);
        let must = &ann[2];
        assert_eq!(must.pos, PosTag::Modal);
        assert_eq!(must.head, Some(3));
        assert_eq!(must.relation, Relation::Aux);
        assert_eq!(ann[3].relation, Relation::Root);
    }

    #[test]
    fn single_token_statement_is_its_own_root() {
        let ann = annotate_syntax(&["Vote".to_string()]);
        assert_eq!(ann.len(), 1);
        assert_eq!(ann[0].head, None);
        assert_eq!(ann[0].relation, Relation::Root);
    }

    #[test]
    fn exactly_one_root_and_heads_in_range() {
        let tokens = tokenize("The mentor must notify the community.");
        let ann = annotate_syntax(&tokens);
        assert_eq!(ann.iter().filter(|t| t.head.is_none()).count(), 1);
        for t in &ann {
            if let Some(h) = t.head {
                assert!(h < ann.len());
                assert_ne!(h, t.index);
            }
        }
    }

    #[test]
    fn head_graph_is_acyclic() {
        let tokens =
            tokenize("Each new committer should sign the official license before onboarding.");
        let ann = annotate_syntax(&tokens);
        for start in &ann {
            let mut seen = vec![false; ann.len()];
            let mut cur = start.index;
            while let Some(h) = ann[cur].head {
                assert!(!seen[cur], "cycle through token {cur}");
                seen[cur] = true;
                cur = h;
            }
        }
    }

    #[test]
    fn featurize_first_token_has_sentinels_and_bucket() {
        let tokens = tokenize("The mentor must notify the community.");
        let ann = annotate_syntax(&tokens);
        let fv = featurize(&ann, 0);
        assert!(fv.weights.contains_key("posbucket=first"));
        assert!(fv.weights.contains_key("prev1=<S>"));
        assert!(fv.weights.contains_key("prev2=<S>"));
    }

    #[test]
    fn featurize_modal_flags() {
        let tokens = tokenize("The mentor must notify the community.");
        let ann = annotate_syntax(&tokens);
        let fv = featurize(&ann, 2);
        assert!(fv.weights.contains_key("ismodal=1"));
        assert!(fv.weights.contains_key("pos=MODAL"));
    }

    #[test]
    fn featurize_is_pure() {
        let tokens = tokenize("Committers may vote on the release.");
        let ann = annotate_syntax(&tokens);
        for i in 0..ann.len() {
            assert_eq!(featurize(&ann, i), featurize(&ann, i));
        }
    }

    #[test]
    fn shape_collapses_runs() {
        assert_eq!(shape("Committee"), "Xxx");
        assert_eq!(shape("(P)PMC-level"), "(X)XX-xx");
        assert_eq!(shape("3.0"), "d.d");
    }
}
