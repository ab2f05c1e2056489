use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadpair::counting::{count_s, reduce_to_pair, CountOptions, LinearSystem, WeightSpec};
use quadpair::expsums::{s_dq_brute, EvalCtx};
use quadpair::forms::{MVec, QuadPair};
use quadpair::par::Workers;
use std::hint::black_box;

fn modes() -> [(&'static str, Workers); 2] {
    [("sequential", Workers::SINGLE), ("parallel", Workers(None))]
}

fn lattice_count(c: &mut Criterion) {
    let pair = reduce_to_pair(&LinearSystem::new([1, 0, 0, 1, 1, 1, 1, 4]).unwrap()).unwrap();
    let w = WeightSpec::default();
    let mut g = c.benchmark_group("count_s");
    g.sample_size(10);
    for (name, workers) in modes() {
        let opts = CountOptions { workers, ..Default::default() };
        g.bench_with_input(BenchmarkId::new(name, 64), &opts, |b, opts| {
            b.iter(|| count_s(black_box(&pair), &w, 64.0, opts).unwrap())
        });
    }
    g.finish();
}

fn brute_sum(c: &mut Criterion) {
    let pair = QuadPair::new([1, 1, 1, -1, 1]).unwrap();
    let m = MVec([1, 2, 0, 3, 1, 1]);
    let mut g = c.benchmark_group("s_dq_brute");
    g.sample_size(10);
    for (name, workers) in modes() {
        let ctx = EvalCtx { workers, ..EvalCtx::with_budget(10_000_000_000) };
        g.bench_with_input(BenchmarkId::new(name, "d=5,q=5"), &ctx, |b, ctx| {
            b.iter(|| s_dq_brute(black_box(&pair), 5, 5, &m, ctx).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, lattice_count, brute_sum);
criterion_main!(benches);
