use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

use ig_core::classifier;
use ig_core::clustering::{cluster, embed, ClusterParams};
use ig_core::stats::{chi_square, ContingencyTable};
use ig_core::syntax::{annotate_syntax, featurize, tokenize};
use ig_core::synth::{generate_corpus, DocSpec};

fn bench_syntax(c: &mut Criterion) {
    let (corpus, _) = generate_corpus(&[DocSpec::new("d", "D", 200)], 9);
    let texts: Vec<String> = corpus.statements().map(|s| s.text.clone()).collect();

    c.bench_function("tokenize_200_statements", |b| {
        b.iter(|| {
            for text in &texts {
                black_box(tokenize(text));
            }
        })
    });

    let token_lists: Vec<Vec<String>> = texts.iter().map(|t| tokenize(t)).collect();
    c.bench_function("annotate_200_statements", |b| {
        b.iter(|| {
            for tokens in &token_lists {
                black_box(annotate_syntax(tokens));
            }
        })
    });

    let annotated: Vec<_> = token_lists.iter().map(|t| annotate_syntax(t)).collect();
    c.bench_function("featurize_200_statements", |b| {
        b.iter(|| {
            for tokens in &annotated {
                for i in 0..tokens.len() {
                    black_box(featurize(tokens, i));
                }
            }
        })
    });
}

fn bench_training(c: &mut Criterion) {
    let (corpus, gold) = generate_corpus(&[DocSpec::new("d", "D", 100)], 11);
    c.bench_function("train_100_statements_5_epochs", |b| {
        b.iter(|| black_box(classifier::train(&corpus, &gold, 5, 42).unwrap()))
    });

    let model = classifier::train(&corpus, &gold, 5, 42).unwrap();
    let annotated: Vec<_> = corpus
        .statements()
        .map(|s| annotate_syntax(&s.tokens))
        .collect();
    c.bench_function("predict_100_statements", |b| {
        b.iter(|| {
            for tokens in &annotated {
                black_box(classifier::predict(&model, tokens));
            }
        })
    });
}

fn bench_clustering(c: &mut Criterion) {
    let (corpus, _) = generate_corpus(&[DocSpec::new("d", "D", 150)], 13);
    let texts: Vec<String> = corpus.statements().map(|s| s.text.clone()).collect();

    c.bench_function("embed_150_texts", |b| {
        b.iter(|| {
            for text in &texts {
                black_box(embed(text));
            }
        })
    });

    let vectors: Vec<_> = texts.iter().map(|t| embed(t)).collect();
    c.bench_function("cluster_150_vectors", |b| {
        b.iter_batched(
            || vectors.clone(),
            |v| black_box(cluster(&v, &ClusterParams::default()).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn bench_stats(c: &mut Criterion) {
    let table = ContingencyTable::from_counts(
        vec!["Authority".into(), "Participant".into()],
        vec![
            "Proscriptive".into(),
            "Stative".into(),
            "Strong".into(),
            "Weak".into(),
        ],
        vec![vec![9, 14, 64, 33], vec![11, 30, 115, 51]],
    );
    c.bench_function("chi_square_2x4", |b| {
        b.iter(|| black_box(chi_square(&table).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_syntax,
    bench_training,
    bench_clustering,
    bench_stats
);
criterion_main!(benches);
