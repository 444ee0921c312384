//! Sequential vs parallel finiteness decisions over a grid of parameters.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use srs_core::dynamics::{decide_finiteness, is_interior, ParameterVector};
use srs_core::par::{self, Exec};

/// Interior grid points of the unit square `[0, 1)²` with step `1/den`.
fn grid(den: i64) -> Vec<ParameterVector> {
    let mut out = Vec::new();
    for i in 0..den {
        for j in 0..den {
            let r = ParameterVector::from_ratios(&[(i, den), (j, den)]).unwrap();
            if is_interior(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn decide_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_finiteness");
    group.sample_size(10);
    for den in [16, 32] {
        let params = grid(den);
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), params.len()), &params, |b, ps| {
                b.iter(|| {
                    let verdicts = par::map(exec, ps, |r| decide_finiteness(r).map(|d| d.is_finite()).ok());
                    black_box(verdicts)
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, decide_batch);
criterion_main!(benches);
