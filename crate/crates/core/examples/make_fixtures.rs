//! Regenerates the bundled fixtures under `fixtures/` at the workspace
//! root. The outputs are committed; rerun this only when the generator or
//! the fixture layout changes:
//!
//! ```bash
//! cargo run -p ig-core --example make_fixtures
//! ```

use std::path::PathBuf;

use ig_core::corpus::{save_corpus, save_gold, CorpusFormat};
use ig_core::synth::{generate_corpus, DocSpec};

const TAXONOMY: &str = "\
# Category rules for the synthetic governance corpus.
# Keys are literal head nouns (or cluster:<id>); values are category names.

[agents]
mentor = Authority
mentors = Authority
ipmc = Authority
asf = Authority
chair = Authority
board = Authority
committer = Participant
committers = Participant
podling = Participant
podlings = Participant
contributor = Participant
contributors = Participant
ppmc = Participant

[objects]
vote = ProjectManagement
votes = ProjectManagement
release = ProjectManagement
releases = ProjectManagement
record = ProjectManagement
records = ProjectManagement
repository = ProjectManagement
roadmap = ProductManagement
plan = ProductManagement
codebase = Product
license = Product
artifact = Product
branch = Product
community = Participants
podlings = Participants
board = Authority
ipmc = Authority

[options]
unmapped = other
";

fn main() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&fixtures).expect("create fixtures directory");

    // Eight synthetic policy documents with fixed statement counts.
    let specs = [
        DocSpec::new("incubator_policy", "Incubator Policy", 45),
        DocSpec::new("community_guide", "Community Guide", 28),
        DocSpec::new("ppmc_guide", "PPMC Guide", 61),
        DocSpec::new("cookbook", "Project Cookbook", 58),
        DocSpec::new("mentor_guide", "Mentor Guide", 36),
        DocSpec::new("graduation_guide", "Graduation Guide", 51),
        DocSpec::new("retirement_guide", "Retirement Guide", 22),
        DocSpec::new("release_guide", "Release Management Guide", 26),
    ];
    let (corpus, gold) = generate_corpus(&specs, 7);
    save_corpus(
        &corpus,
        fixtures.join("asf_like.jsonl"),
        CorpusFormat::Jsonl,
    )
    .expect("write corpus fixture");
    save_gold(&gold, fixtures.join("gold.jsonl"), CorpusFormat::Jsonl).expect("write gold fixture");

    // The 100-statement template corpus used by the classifier experiments.
    let (template, template_gold) = generate_corpus(
        &[DocSpec::new("template_corpus", "Template Corpus", 100)],
        11,
    );
    save_corpus(
        &template,
        fixtures.join("template_100.jsonl"),
        CorpusFormat::Jsonl,
    )
    .expect("write template corpus fixture");
    save_gold(
        &template_gold,
        fixtures.join("template_100_gold.jsonl"),
        CorpusFormat::Jsonl,
    )
    .expect("write template gold fixture");

    std::fs::write(fixtures.join("taxonomy.conf"), TAXONOMY).expect("write taxonomy fixture");

    println!(
        "wrote fixtures for {} + {} statements to {}",
        corpus.total_statements(),
        template.total_statements(),
        fixtures.display()
    );
}
