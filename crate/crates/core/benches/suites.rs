//! Sequential against parallel evaluation of the fuzz suites.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use momentroot::{run_suite, Execution, GenParams, Suite};

fn suites(c: &mut Criterion) {
    let params = GenParams::with_seed(7);
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (suite, trials) in [
        (Suite::Roundtrip, 200),
        (Suite::Theorems, 40),
        (Suite::Iota, 400),
    ] {
        for execution in [Execution::Sequential, Execution::Parallel] {
            let id = BenchmarkId::new(suite.name(), format!("{execution:?}"));
            group.bench_with_input(id, &execution, |b, &execution| {
                b.iter(|| {
                    let summary =
                        run_suite(suite, &params, trials, execution).expect("valid params");
                    black_box(summary.checks)
                })
            });
        }
    }
    group.finish();
}

fn decide(c: &mut Criterion) {
    use momentroot::{decide_root, kappa_power_measure, random_atomic_measure};
    let params = GenParams {
        max_atoms: 6,
        ..GenParams::with_seed(1)
    };
    let measures: Vec<_> = (0..32)
        .map(|i| kappa_power_measure(&random_atomic_measure(&params, i), 3).expect("small"))
        .collect();
    let mut group = c.benchmark_group("decide_root");
    group.sample_size(10);
    for execution in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{execution:?}"), |b| {
            b.iter(|| {
                let yes =
                    execution.map(&measures, |mu| decide_root(mu, 3).expect("small").is_yes());
                black_box(yes)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, suites, decide);
criterion_main!(benches);
