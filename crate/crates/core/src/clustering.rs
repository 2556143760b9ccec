//! Component-text embedding, density-style clustering with a noise bucket,
//! and class-based keyword extraction.
//!
//! The default embedding hashes character trigrams of the lowercased text
//! into a fixed-dimension vector (FNV-1a 64 modulo the dimension) and
//! L2-normalizes it; any replacement backend must keep the unit-norm
//! invariant. Clustering is average-linkage agglomeration over cosine
//! distance, stopped at a distance threshold, with groups smaller than the
//! minimum cluster size routed to the noise bucket. Both steps are
//! deterministic: ties are broken by the lowest item index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default embedding dimension.
pub const DEFAULT_EMBED_DIM: usize = 256;

/// A fixed-dimension text embedding. Unit L2 norm for any text with
/// alphanumeric content, all-zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    pub values: Vec<f64>,
    pub text: String,
}

impl EmbeddingVector {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn cosine(&self, other: &EmbeddingVector) -> f64 {
        let na = self.norm();
        let nb = other.norm();
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        let dot: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        dot / (na * nb)
    }
}

/// FNV-1a 64-bit hash; the stable hash behind the default embedding.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut h = OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Lowercases, maps non-alphanumeric runs to single spaces, and trims.
fn normalize_text(text: &str) -> String {
    let mapped: String = text
        .to_lowercase()
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    mapped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Character trigrams of each normalized word, padded with `#` so that
/// one- and two-letter words still produce a gram.
fn trigrams(normalized: &str) -> Vec<String> {
    let mut grams = Vec::new();
    for word in normalized.split_whitespace() {
        let padded: Vec<char> = std::iter::once('#')
            .chain(word.chars())
            .chain(std::iter::once('#'))
            .collect();
        if padded.len() < 3 {
            grams.push(padded.iter().collect());
            continue;
        }
        for window in padded.windows(3) {
            grams.push(window.iter().collect());
        }
    }
    grams
}

/// Embeds text at the default dimension. See [`embed_with_dim`].
pub fn embed(text: &str) -> EmbeddingVector {
    embed_with_dim(text, DEFAULT_EMBED_DIM)
}

/// Hashes character trigrams of the lowercased text into `dim` buckets
/// (FNV-1a 64 mod `dim`), counts occurrences, and L2-normalizes. Text with
/// no alphanumeric content embeds to the zero vector.
pub fn embed_with_dim(text: &str, dim: usize) -> EmbeddingVector {
    let mut values = vec![0.0; dim.max(1)];
    let normalized = normalize_text(text);
    for gram in trigrams(&normalized) {
        let bucket = (fnv1a64(gram.as_bytes()) % values.len() as u64) as usize;
        values[bucket] += 1.0;
    }
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut values {
            *v /= norm;
        }
    }
    EmbeddingVector {
        values,
        text: text.to_string(),
    }
}

/// A cluster assignment: a non-negative cluster index or the noise bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClusterId {
    Cluster(usize),
    Noise,
}

impl std::fmt::Display for ClusterId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClusterId::Cluster(i) => write!(f, "{i}"),
            ClusterId::Noise => f.write_str("NOISE"),
        }
    }
}

impl Serialize for ClusterId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClusterId::Cluster(i) => serializer.serialize_u64(*i as u64),
            ClusterId::Noise => serializer.serialize_str("NOISE"),
        }
    }
}

impl<'de> Deserialize<'de> for ClusterId {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = ClusterId;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a non-negative integer or \"NOISE\"")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<ClusterId, E> {
                Ok(ClusterId::Cluster(v as usize))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<ClusterId, E> {
                if v < 0 {
                    return Err(E::custom("cluster id must be non-negative"));
                }
                Ok(ClusterId::Cluster(v as usize))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<ClusterId, E> {
                if v == "NOISE" {
                    Ok(ClusterId::Noise)
                } else {
                    Err(E::custom(format!("expected \"NOISE\", got {v:?}")))
                }
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

/// Clustering parameters. `distance_threshold` is a cosine distance in
/// (0, 2); `min_cluster_size` must be at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterParams {
    pub min_cluster_size: usize,
    pub distance_threshold: f64,
}

impl Default for ClusterParams {
    fn default() -> Self {
        ClusterParams {
            min_cluster_size: 2,
            distance_threshold: 0.6,
        }
    }
}

impl ClusterParams {
    fn validate(&self) -> Result<()> {
        if self.min_cluster_size < 2 {
            return Err(Error::InvalidClusterParams(format!(
                "min_cluster_size must be >= 2, got {}",
                self.min_cluster_size
            )));
        }
        if !(self.distance_threshold > 0.0 && self.distance_threshold < 2.0) {
            return Err(Error::InvalidClusterParams(format!(
                "distance_threshold must be in (0, 2), got {}",
                self.distance_threshold
            )));
        }
        Ok(())
    }
}

/// Average-linkage agglomeration over cosine distance.
///
/// Merging proceeds while the smallest average inter-cluster distance is
/// at most the threshold; distance ties break toward the lowest member
/// index. Final groups smaller than `min_cluster_size` become noise, and
/// surviving clusters are numbered by their smallest member index, so the
/// labeling is canonical for a given input order.
pub fn cluster(vectors: &[EmbeddingVector], params: &ClusterParams) -> Result<Vec<ClusterId>> {
    params.validate()?;
    if vectors.is_empty() {
        return Err(Error::EmptyClusterInput);
    }
    let n = vectors.len();

    // Pairwise cosine distances, flattened row-major.
    let mut dist = vec![0.0f64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = 1.0 - vectors[i].cosine(&vectors[j]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // members[k] is Some(list of original indices) while cluster k is live;
    // dist rows/cols indexed by cluster slot.
    let mut members: Vec<Option<Vec<usize>>> = (0..n).map(|i| Some(vec![i])).collect();

    loop {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..n {
            if members[a].is_none() {
                continue;
            }
            for b in (a + 1)..n {
                if members[b].is_none() {
                    continue;
                }
                let d = dist[a * n + b];
                let (lo, hi) = ordered_min_indices(&members, a, b);
                let candidate = (d, lo, hi, a, b);
                let better = match &best {
                    None => true,
                    Some((bd, blo, bhi, _, _)) => (d, lo, hi) < (*bd, *blo, *bhi),
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        let Some((d, _, _, a, b)) = best else { break };
        if d > params.distance_threshold {
            break;
        }
        let size_a = members[a].as_ref().map(Vec::len).unwrap_or(0) as f64;
        let size_b = members[b].as_ref().map(Vec::len).unwrap_or(0) as f64;
        // Lance-Williams update for average linkage.
        for k in 0..n {
            if k == a || k == b || members[k].is_none() {
                continue;
            }
            let merged = (size_a * dist[a * n + k] + size_b * dist[b * n + k]) / (size_a + size_b);
            dist[a * n + k] = merged;
            dist[k * n + a] = merged;
        }
        let absorbed = members[b].take().expect("cluster b live");
        members[a]
            .as_mut()
            .expect("cluster a live")
            .extend(absorbed);
    }

    // Canonical ids: order surviving clusters by smallest member index.
    let mut surviving: Vec<Vec<usize>> = members
        .into_iter()
        .flatten()
        .filter(|m| m.len() >= params.min_cluster_size)
        .collect();
    surviving.sort_by_key(|m| *m.iter().min().expect("non-empty cluster"));

    let mut assignment = vec![ClusterId::Noise; n];
    for (id, cluster_members) in surviving.iter().enumerate() {
        for &item in cluster_members {
            assignment[item] = ClusterId::Cluster(id);
        }
    }
    Ok(assignment)
}

fn ordered_min_indices(members: &[Option<Vec<usize>>], a: usize, b: usize) -> (usize, usize) {
    let min_of = |k: usize| -> usize {
        *members[k]
            .as_ref()
            .expect("live cluster")
            .iter()
            .min()
            .expect("non-empty")
    };
    let (ma, mb) = (min_of(a), min_of(b));
    (ma.min(mb), ma.max(mb))
}

/// Splits text into scoring terms: lowercased, with non-alphanumeric
/// characters stripped from each whitespace token.
fn terms(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|w| {
            w.chars()
                .filter(|c| c.is_alphanumeric())
                .collect::<String>()
        })
        .filter(|w| !w.is_empty())
        .collect()
}

/// Top-k keywords for one cluster under class-based term weighting:
/// `score(t, c) = tf(t, c) * ln(1 + A / f(t))` where `tf` counts `t` in the
/// cluster's concatenated texts, `f` is the term's total count over all
/// clusters, and `A` is the average term count per cluster. Ties break
/// alphabetically.
pub fn topic_terms(
    cluster_texts: &[String],
    all_clusters: &[Vec<String>],
    k: usize,
) -> Vec<(String, f64)> {
    if cluster_texts.is_empty() || k == 0 || all_clusters.is_empty() {
        return Vec::new();
    }
    let mut tf: BTreeMap<String, u64> = BTreeMap::new();
    for text in cluster_texts {
        for term in terms(text) {
            *tf.entry(term).or_insert(0) += 1;
        }
    }
    let mut global: BTreeMap<String, u64> = BTreeMap::new();
    let mut total_terms = 0u64;
    for texts in all_clusters {
        for text in texts {
            for term in terms(text) {
                *global.entry(term).or_insert(0) += 1;
                total_terms += 1;
            }
        }
    }
    let avg_per_cluster = total_terms as f64 / all_clusters.len() as f64;
    let mut scored: Vec<(String, f64)> = tf
        .into_iter()
        .map(|(term, count)| {
            let f = *global.get(&term).expect("term counted globally") as f64;
            let score = count as f64 * (1.0 + avg_per_cluster / f).ln();
            (term, score)
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("finite scores")
            .then_with(|| a.0.cmp(&b.0))
    });
    scored.truncate(k);
    scored
}

/// A completed clustering of component texts: one assignment per input
/// item plus per-cluster keywords.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusterAssignment {
    pub items: Vec<(String, ClusterId)>,
    pub topics: BTreeMap<usize, Vec<(String, f64)>>,
    index: BTreeMap<String, ClusterId>,
}

impl ClusterAssignment {
    pub fn new(
        items: Vec<(String, ClusterId)>,
        topics: BTreeMap<usize, Vec<(String, f64)>>,
    ) -> Self {
        let index = items.iter().cloned().collect();
        ClusterAssignment {
            items,
            topics,
            index,
        }
    }

    pub fn cluster_of(&self, component_ref: &str) -> Option<ClusterId> {
        self.index.get(component_ref).copied()
    }

    pub fn cluster_count(&self) -> usize {
        self.items
            .iter()
            .filter_map(|(_, id)| match id {
                ClusterId::Cluster(i) => Some(*i + 1),
                ClusterId::Noise => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn noise_count(&self) -> usize {
        self.items
            .iter()
            .filter(|(_, id)| *id == ClusterId::Noise)
            .count()
    }
}

/// One line of the cluster-assignment JSONL artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub component_ref: String,
    pub cluster_id: ClusterId,
}

/// One line of the topics JSONL artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicRecord {
    pub cluster_id: usize,
    pub terms: Vec<(String, f64)>,
}

/// Embeds, clusters, and summarizes a batch of `(component_ref, text)`
/// items in one pass. An empty batch yields an empty assignment.
pub fn assign_components(
    items: &[(String, String)],
    params: &ClusterParams,
    embed_dim: usize,
    topic_k: usize,
) -> Result<ClusterAssignment> {
    if items.is_empty() {
        return Ok(ClusterAssignment::default());
    }
    let vectors: Vec<EmbeddingVector> = items
        .iter()
        .map(|(_, text)| embed_with_dim(text, embed_dim))
        .collect();
    let ids = cluster(&vectors, params)?;

    let mut texts_by_cluster: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for ((_, text), id) in items.iter().zip(&ids) {
        if let ClusterId::Cluster(c) = id {
            texts_by_cluster.entry(*c).or_default().push(text.clone());
        }
    }
    let all_clusters: Vec<Vec<String>> = texts_by_cluster.values().cloned().collect();
    let topics = texts_by_cluster
        .iter()
        .map(|(c, texts)| (*c, topic_terms(texts, &all_clusters, topic_k)))
        .collect();

    let assignment_items = items
        .iter()
        .zip(&ids)
        .map(|((component_ref, _), id)| (component_ref.clone(), *id))
        .collect();
    Ok(ClusterAssignment::new(assignment_items, topics))
}

#[cfg(test)]
mod tests {
    #![allow(clippy::excessive_precision)]

    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn empty_text_embeds_to_zero_vector() {
        assert_eq!(embed("").norm(), 0.0);
        assert_eq!(embed("  ,;! ").norm(), 0.0);
    }

    #[test]
    fn nonempty_text_embeds_to_unit_norm() {
        for text in ["mentor", "a", "the mentors vote", "(P)PMC-level"] {
            let norm = embed(text).norm();
            assert!((norm - 1.0).abs() < 1e-12, "{text}: norm {norm}");
        }
    }

    #[test]
    fn embedding_is_deterministic() {
        assert_eq!(embed("mentor"), embed("mentor"));
    }

    // Independent trigram reference: count trigrams sparsely (no hashing)
    // and compute cosine on the raw counts. The hashed embedding must
    // reproduce the same similarity ordering.
    fn reference_trigram_counts(text: &str) -> BTreeMap<String, f64> {
        let mut counts = BTreeMap::new();
        let lowered: String = text
            .to_lowercase()
            .chars()
            .map(|c| if c.is_alphanumeric() { c } else { ' ' })
            .collect();
        for word in lowered.split_whitespace() {
            let padded: Vec<char> = format!("#{word}#").chars().collect();
            if padded.len() < 3 {
                *counts.entry(padded.iter().collect()).or_insert(0.0) += 1.0;
            } else {
                for w in padded.windows(3) {
                    *counts.entry(w.iter().collect()).or_insert(0.0) += 1.0;
                }
            }
        }
        counts
    }

    fn reference_cosine(a: &str, b: &str) -> f64 {
        let ca = reference_trigram_counts(a);
        let cb = reference_trigram_counts(b);
        let dot: f64 = ca
            .iter()
            .filter_map(|(k, v)| cb.get(k).map(|w| v * w))
            .sum();
        let na: f64 = ca.values().map(|v| v * v).sum::<f64>().sqrt();
        let nb: f64 = cb.values().map(|v| v * v).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            dot / (na * nb)
        }
    }

    #[test]
    fn cosine_ordering_matches_reference_implementation() {
        let close = embed("mentor").cosine(&embed("mentors"));
        let far = embed("mentor").cosine(&embed("release vote"));
        assert!(close > far, "close={close}, far={far}");
        let ref_close = reference_cosine("mentor", "mentors");
        let ref_far = reference_cosine("mentor", "release vote");
        assert!(ref_close > ref_far);
        // Hash collisions can only inflate similarity slightly; the hashed
        // cosine should track the reference within a small tolerance.
        assert!((close - ref_close).abs() < 0.05);
        assert!((far - ref_far).abs() < 0.05);
    }

    #[test]
    fn identical_strings_form_one_cluster() {
        let vectors: Vec<EmbeddingVector> =
            ["vote", "vote", "vote"].iter().map(|s| embed(s)).collect();
        let ids = cluster(&vectors, &ClusterParams::default()).unwrap();
        assert_eq!(ids, vec![ClusterId::Cluster(0); 3]);
    }

    #[test]
    fn orthogonal_vectors_are_all_noise() {
        let mut vectors = Vec::new();
        for i in 0..3 {
            let mut values = vec![0.0; 8];
            values[i] = 1.0;
            vectors.push(EmbeddingVector {
                values,
                text: format!("v{i}"),
            });
        }
        let params = ClusterParams {
            min_cluster_size: 2,
            distance_threshold: 0.5,
        };
        let ids = cluster(&vectors, &params).unwrap();
        assert_eq!(ids, vec![ClusterId::Noise; 3]);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let vectors = vec![embed("x")];
        for params in [
            ClusterParams {
                min_cluster_size: 1,
                distance_threshold: 0.5,
            },
            ClusterParams {
                min_cluster_size: 2,
                distance_threshold: 0.0,
            },
            ClusterParams {
                min_cluster_size: 2,
                distance_threshold: 2.0,
            },
        ] {
            assert!(cluster(&vectors, &params).is_err(), "{params:?}");
        }
        assert!(matches!(
            cluster(&[], &ClusterParams::default()),
            Err(Error::EmptyClusterInput)
        ));
    }

    /// The 12-string agent fixture and its hand-built partition.
    fn agent_fixture() -> (Vec<&'static str>, Vec<BTreeSet<&'static str>>) {
        let strings = vec![
            "mentor",
            "mentors",
            "the mentor",
            "the mentors",
            "committer",
            "committers",
            "the committer",
            "the committers",
            "podling",
            "podlings",
            "the podling",
            "the podlings",
        ];
        let oracle = vec![
            ["mentor", "mentors", "the mentor", "the mentors"]
                .into_iter()
                .collect(),
            ["committer", "committers", "the committer", "the committers"]
                .into_iter()
                .collect(),
            ["podling", "podlings", "the podling", "the podlings"]
                .into_iter()
                .collect(),
        ];
        (strings, oracle)
    }

    fn partition_of(strings: &[&str], ids: &[ClusterId]) -> BTreeSet<BTreeSet<String>> {
        let mut by_cluster: BTreeMap<ClusterId, BTreeSet<String>> = BTreeMap::new();
        for (s, id) in strings.iter().zip(ids) {
            by_cluster.entry(*id).or_default().insert(s.to_string());
        }
        by_cluster.into_values().collect()
    }

    #[test]
    fn agent_fixture_matches_hand_partition_with_zero_noise() {
        let (strings, oracle) = agent_fixture();
        let vectors: Vec<EmbeddingVector> = strings.iter().map(|s| embed(s)).collect();
        let ids = cluster(&vectors, &ClusterParams::default()).unwrap();
        assert!(ids.iter().all(|id| *id != ClusterId::Noise));
        let got = partition_of(&strings, &ids);
        let want: BTreeSet<BTreeSet<String>> = oracle
            .into_iter()
            .map(|set| set.into_iter().map(String::from).collect())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn permuting_input_preserves_the_partition() {
        let (strings, _) = agent_fixture();
        let vectors: Vec<EmbeddingVector> = strings.iter().map(|s| embed(s)).collect();
        let base = partition_of(
            &strings,
            &cluster(&vectors, &ClusterParams::default()).unwrap(),
        );

        let perm: Vec<usize> = vec![7, 2, 9, 0, 11, 4, 6, 1, 8, 3, 10, 5];
        let permuted_strings: Vec<&str> = perm.iter().map(|&i| strings[i]).collect();
        let permuted_vectors: Vec<EmbeddingVector> =
            permuted_strings.iter().map(|s| embed(s)).collect();
        let permuted = partition_of(
            &permuted_strings,
            &cluster(&permuted_vectors, &ClusterParams::default()).unwrap(),
        );
        assert_eq!(base, permuted);
    }

    #[test]
    fn single_text_cluster_scores_terms_equally() {
        let texts = vec!["podling release".to_string()];
        let top = topic_terms(&texts, std::slice::from_ref(&texts), 2);
        assert_eq!(top.len(), 2);
        assert_eq!(top[0].0, "podling");
        assert_eq!(top[1].0, "release");
        assert!((top[0].1 - top[1].1).abs() < 1e-12);
        // tf = 1, f = 1, A = 2 => score = ln(3)
        assert!((top[0].1 - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn shared_terms_score_below_exclusive_terms() {
        // "the" appears in both clusters; "release" only in cluster 0.
        let c0 = vec!["the podling release podling report".to_string()];
        let c1 = vec!["mentor vote the mentor vote".to_string()];
        let all = vec![c0.clone(), c1.clone()];
        let top = topic_terms(&c0, &all, 10);
        let score = |term: &str| {
            top.iter()
                .find(|(t, _)| t == term)
                .map(|(_, s)| *s)
                .unwrap()
        };
        assert!(score("release") > score("the"));
    }

    // Frozen expected values for the weighting formula, computed
    // independently (spreadsheet-style) for two fixed clusters with
    // A = 5 terms per cluster.
    #[test]
    fn topic_scores_match_independent_computation() {
        let c0 = vec!["the podling release podling report".to_string()];
        let c1 = vec!["mentor vote the mentor vote".to_string()];
        let all = vec![c0.clone(), c1.clone()];

        let top0 = topic_terms(&c0, &all, 4);
        let expected0 = [
            ("podling", 2.505525936990736),
            ("release", 1.791759469228055),
            ("report", 1.791759469228055),
            ("the", 1.252762968495368),
        ];
        assert_eq!(top0.len(), expected0.len());
        for ((term, score), (want_term, want_score)) in top0.iter().zip(expected0) {
            assert_eq!(term, want_term);
            assert!((score - want_score).abs() < 1e-12, "{term}: {score}");
        }

        let top1 = topic_terms(&c1, &all, 3);
        let expected1 = [
            ("mentor", 2.505525936990736),
            ("vote", 2.505525936990736),
            ("the", 1.252762968495368),
        ];
        for ((term, score), (want_term, want_score)) in top1.iter().zip(expected1) {
            assert_eq!(term, want_term);
            assert!((score - want_score).abs() < 1e-12, "{term}: {score}");
        }
    }

    #[test]
    fn assign_components_builds_lookup_and_topics() {
        let items: Vec<(String, String)> = [
            ("s1:0-2", "the mentor"),
            ("s2:0-1", "mentors"),
            ("s3:0-2", "the podling"),
            ("s4:0-1", "podlings"),
        ]
        .iter()
        .map(|(r, t)| (r.to_string(), t.to_string()))
        .collect();
        let assignment =
            assign_components(&items, &ClusterParams::default(), DEFAULT_EMBED_DIM, 3).unwrap();
        assert_eq!(assignment.items.len(), 4);
        assert_eq!(
            assignment.cluster_of("s1:0-2"),
            assignment.cluster_of("s2:0-1")
        );
        assert_ne!(
            assignment.cluster_of("s1:0-2"),
            assignment.cluster_of("s3:0-2")
        );
        assert_eq!(assignment.cluster_count(), 2);
        assert_eq!(assignment.noise_count(), 0);
        for terms in assignment.topics.values() {
            assert!(!terms.is_empty());
        }
    }

    #[test]
    fn cluster_record_serializes_noise_as_string() {
        let noise = ClusterRecord {
            component_ref: "s1:0-2".to_string(),
            cluster_id: ClusterId::Noise,
        };
        let json = serde_json::to_string(&noise).unwrap();
        assert_eq!(
            json,
            "{\"component_ref\":\"s1:0-2\",\"cluster_id\":\"NOISE\"}"
        );
        let back: ClusterRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, noise);

        let member = ClusterRecord {
            component_ref: "s1:0-2".to_string(),
            cluster_id: ClusterId::Cluster(3),
        };
        let json = serde_json::to_string(&member).unwrap();
        assert_eq!(json, "{\"component_ref\":\"s1:0-2\",\"cluster_id\":3}");
        assert_eq!(
            serde_json::from_str::<ClusterRecord>(&json).unwrap(),
            member
        );
    }
}
