//! Parallel pool against a single worker on a few representative batteries.
//! `cargo bench --no-default-features` measures the sequential build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nclogic::battery::provable_statements;
use nclogic::formula::parse_open;
use nclogic::hilbert::soundness_harness;
use nclogic::par;
use nclogic::semantics::DEFAULT_BUDGET;
use nclogic::tarski::{classify_validity, ModelClass};
use nclogic::universe::{verify_axiom, Axiom, Universe};

fn modes() -> Vec<(&'static str, Option<usize>)> {
    if par::is_parallel() {
        vec![("pool", None), ("jobs=1", Some(1))]
    } else {
        vec![("sequential", None)]
    }
}

fn batteries(c: &mut Criterion) {
    let mut g = c.benchmark_group("batteries");
    g.sample_size(10);
    let (phi, sig) = parse_open("forall x. forall y. (S(x, y) -> S(x, y) | R(y))").unwrap();
    for (mode, jobs) in modes() {
        g.bench_function(BenchmarkId::new("soundness_100", mode), |b| {
            b.iter(|| par::install(jobs, || soundness_harness(100, 3, 0)))
        });
        g.bench_function(BenchmarkId::new("provable_statements", mode), |b| {
            b.iter(|| par::install(jobs, || provable_statements(0)))
        });
        g.bench_function(BenchmarkId::new("classify_full_2", mode), |b| {
            b.iter(|| par::install(jobs, || classify_validity(&phi, ModelClass::Full, 2, &sig, DEFAULT_BUDGET).unwrap()))
        });
        g.bench_function(BenchmarkId::new("extensionality_w3", mode), |b| {
            b.iter(|| {
                par::install(jobs, || {
                    let u = Universe::new();
                    verify_axiom(&u, Axiom::Extensionality, None).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, batteries);
criterion_main!(benches);
