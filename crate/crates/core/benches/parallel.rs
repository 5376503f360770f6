use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use palwords::construct::{build_direct, ConstraintSpec};
use palwords::oracle::{brute_counts_with, OracleOptions};
use palwords::par::Execution;
use palwords::recur::{matrix_min_poly_with, transfer_matrix, MinPolyOptions};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    let spec = ConstraintSpec::max_distinct(2, 11);
    for (name, execution) in MODES {
        let options = OracleOptions {
            execution,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::new(name, "D_11 n<=24"), &spec, |b, spec| {
            b.iter(|| brute_counts_with(black_box(spec), 24, &options).unwrap())
        });
    }
    g.finish();
}

fn min_poly(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_poly");
    g.sample_size(10);
    for (label, spec) in [
        ("D_11", ConstraintSpec::max_distinct(2, 11)),
        ("E_5", ConstraintSpec::max_len(2, 5)),
    ] {
        let cs = transfer_matrix(&build_direct(&spec).unwrap().minimized);
        for (name, execution) in MODES {
            let options = MinPolyOptions {
                execution,
                ..Default::default()
            };
            g.bench_with_input(BenchmarkId::new(name, label), &cs, |b, cs| {
                b.iter(|| matrix_min_poly_with(black_box(cs), &options).unwrap())
            });
        }
    }
    g.finish();
}

/// Independent constructions fanned out over the pool.
fn builds(c: &mut Criterion) {
    let mut g = c.benchmark_group("builds");
    g.sample_size(10);
    let specs: Vec<ConstraintSpec> = (8..=12)
        .map(|l| ConstraintSpec::max_distinct(2, l))
        .chain((1..=5).map(|l| ConstraintSpec::max_len(2, l)))
        .chain([(2, 5), (6, 3), (4, 4)].map(|(e, o)| ConstraintSpec::max_len_by_parity(2, e, o)))
        .collect();
    for (name, execution) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "13 specs"), &specs, |b, specs| {
            b.iter(|| execution.map(specs, |s| build_direct(s).unwrap().minimal_states()))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle, min_poly, builds);
criterion_main!(benches);
