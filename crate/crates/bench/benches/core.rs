//! Hot-path benchmarks: pair verification, exhaustive search, trial batches.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rainbow_core::{
    generate, rc_exact, run_trials, sample_uniform, verify, ExperimentConfig, FamilySpec,
    SearchBudget, Verifier,
};

/// One fast verification (no witness) of a dense n=64 instance, the inner
/// loop of every Monte Carlo trial.
fn bench_fast_verify(c: &mut Criterion) {
    let g = generate(&FamilySpec::CompleteMinusMatching { n: 64 }).unwrap();
    let colorings: Vec<Vec<usize>> = (0..64)
        .map(|seed| sample_uniform(&g, 2, seed).unwrap().colors().to_vec())
        .collect();
    let mut verifier = Verifier::new(&g, 2).unwrap();
    let mut i = 0;
    c.bench_function("fast_verify_dense_n64_k2", |b| {
        b.iter(|| {
            i += 1;
            black_box(verifier.first_failing_pair(&colorings[i % colorings.len()]))
        })
    });
}

/// Witness-producing verification on the Petersen graph.
fn bench_witness_verify(c: &mut Criterion) {
    let g = generate(&FamilySpec::Petersen).unwrap();
    let coloring = sample_uniform(&g, 4, 7).unwrap();
    c.bench_function("witness_verify_petersen_k4", |b| {
        b.iter(|| black_box(verify(&g, &coloring).unwrap()))
    });
}

/// Full rc computation on the Petersen graph: refute k=2, certify k=3.
fn bench_rc_exact(c: &mut Criterion) {
    let g = generate(&FamilySpec::Petersen).unwrap();
    let budget = SearchBudget::default();
    c.bench_function("rc_exact_petersen", |b| {
        b.iter(|| black_box(rc_exact(&g, &budget).unwrap().rc))
    });
}

/// A small trial batch, the unit of experiment and sweep work.
fn bench_trial_batch(c: &mut Criterion) {
    let g = generate(&FamilySpec::CompleteMinusMatching { n: 32 }).unwrap();
    let cfg = ExperimentConfig {
        k: 2,
        trials: 100,
        master_seed: 5,
        theorem: None,
    };
    c.bench_function("run_trials_100_dense_n32_k2", |b| {
        b.iter(|| black_box(run_trials(&g, &cfg, 1).unwrap().successes))
    });
}

criterion_group!(
    benches,
    bench_fast_verify,
    bench_witness_verify,
    bench_rc_exact,
    bench_trial_batch
);
criterion_main!(benches);
