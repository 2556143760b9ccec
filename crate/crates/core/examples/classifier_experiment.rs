//! Trains the token classifier on 80 of the bundled template corpus's 100
//! statements and evaluates on the held-out 20:
//!
//! ```bash
//! cargo run -p ig-core --example classifier_experiment
//! ```

use std::path::PathBuf;

use ig_core::classifier::{evaluate, train};
use ig_core::corpus::{load_corpus, load_gold, CorpusFormat};
use ig_core::GoldAnnotation;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const SEED: u64 = 42;
const EPOCHS: u32 = 10;

fn main() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let corpus = load_corpus(fixtures.join("template_100.jsonl"), CorpusFormat::Jsonl)
        .expect("load template corpus");
    let gold = load_gold(
        fixtures.join("template_100_gold.jsonl"),
        &corpus,
        CorpusFormat::Jsonl,
    )
    .expect("load template gold");

    let mut order: Vec<usize> = (0..gold.len()).collect();
    order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(SEED));
    let train_gold: Vec<GoldAnnotation> = order[..80].iter().map(|&i| gold[i].clone()).collect();
    let held_out: Vec<GoldAnnotation> = order[80..].iter().map(|&i| gold[i].clone()).collect();

    let model = train(&corpus, &train_gold, EPOCHS, SEED).expect("train");
    let metrics = evaluate(&model, &corpus, &held_out).expect("evaluate");

    println!(
        "80/20 split, seed {SEED}, {EPOCHS} epochs -> held-out token accuracy {:.4}",
        metrics.token_accuracy
    );
    println!("label  precision  recall  f1");
    for (label, m) in &metrics.per_label {
        println!(
            "{:<5}  {:>9.4}  {:>6.4}  {:>6.4}",
            label.to_string(),
            m.precision,
            m.recall,
            m.f1
        );
    }
}
