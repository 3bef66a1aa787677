use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linnik::par::{self, Exec};
use linnik::sampling::{sample_linnik_with, RngState};
use linnik::{eval_auto, Params};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn table(c: &mut Criterion) {
    let p = Params::new(1.3, 0.7, 2).unwrap();
    let radii: Vec<f64> = (0..64).map(|k| 1e-2 * 1.2f64.powi(k)).collect();
    let mut group = c.benchmark_group("table_64_radii");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                par::map(exec, black_box(&radii), |&r| {
                    eval_auto(&p, r, 1e-10).unwrap().value
                })
            })
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let p = Params::new(1.5, 2.0, 3).unwrap();
    let mut group = c.benchmark_group("sample_200k");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sample_linnik_with(exec, &p, &mut RngState::new(1), black_box(200_000)))
        });
    }
    group.finish();
}

criterion_group!(benches, table, sampling);
criterion_main!(benches);
