use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use suppcone::binom_ideal::{
    buchberger_bm_with, dickson_decompose_with, dickson_oracle_with, Binomial, MonomialIdeal,
    TermOrder,
};
use suppcone::geom::hilbert_basis_with;
use suppcone::registry::run_all;
use suppcone::support::normalize_with;
use suppcone::{fixtures, Cone, Exec, RatVec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn dickson_input() -> Vec<(RatVec, Cone)> {
    let sigma = fixtures::ex_c_sigma();
    fixtures::ex_c_vertices()
        .into_iter()
        .map(|v| (v, sigma.clone()))
        .collect()
}

fn wide_cone() -> Cone {
    let gens = [[1, 0, 0], [0, 1, 0], [1, 2, 7], [3, 1, 5]];
    let gens: Vec<RatVec> = gens.iter().map(|g| RatVec::from_ints(g)).collect();
    Cone::from_generators(3, &gens).unwrap()
}

fn binomial_input() -> (Vec<Binomial>, MonomialIdeal) {
    let bins = [
        (vec![2, 0, 1, 0], vec![0, 1, 0, 1]),
        (vec![0, 3, 0, 0], vec![1, 0, 0, 2]),
        (vec![1, 1, 1, 0], vec![0, 0, 2, 1]),
        (vec![0, 0, 0, 3], vec![2, 1, 0, 0]),
    ];
    let bins = bins
        .into_iter()
        .map(|(a, b)| Binomial::new(a, b).unwrap())
        .collect();
    (bins, MonomialIdeal::new(vec![vec![0, 0, 4, 0]]))
}

fn bench(c: &mut Criterion) {
    let shifts = dickson_input();
    let cone = wide_cone();
    let (bins, monos) = binomial_input();
    let spec = fixtures::ex_c();

    let mut g = c.benchmark_group("parallel_vs_sequential");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("hilbert_basis", name), &exec, |b, &e| {
            b.iter(|| hilbert_basis_with(black_box(&cone), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("buchberger_bm", name), &exec, |b, &e| {
            b.iter(|| buchberger_bm_with(black_box(&bins), &monos, &TermOrder::DegRevLex, e))
        });
        g.bench_with_input(BenchmarkId::new("dickson_oracle", name), &exec, |b, &e| {
            b.iter(|| dickson_oracle_with(black_box(&shifts), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("dickson_decompose", name), &exec, |b, &e| {
            b.iter(|| dickson_decompose_with(black_box(&shifts), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("normalize", name), &exec, |b, &e| {
            b.iter(|| normalize_with(black_box(&spec), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("all_fixtures", name), &exec, |b, &e| {
            b.iter(|| run_all(e))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
