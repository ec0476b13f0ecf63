use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use twobridge::alexander::wada_twisted_alexander;
use twobridge::character::{evaluate_f, metabelian_pairing, LimitConfig};
use twobridge::numeric::DoubleDouble;
use twobridge::pipeline::{compute_invariants, Config, Precision};
use twobridge::representation::metabelian_rep;
use twobridge_bench::bench_knots;

fn twisted_alexander(c: &mut Criterion) {
    let mut g = c.benchmark_group("wada");
    for k in bench_knots() {
        let rep = metabelian_rep::<f64>(k.p(), 1).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(k.id()), &k, |b, k| {
            b.iter(|| wada_twisted_alexander(black_box(k), &rep).unwrap())
        });
    }
    g.finish();
}

fn limit_f(c: &mut Criterion) {
    let cfg = LimitConfig::default();
    let mut g = c.benchmark_group("evaluate_f");
    for k in bench_knots() {
        let kp = metabelian_pairing(k.p(), 1);
        g.bench_with_input(BenchmarkId::new("double", k.id()), &k, |b, k| {
            b.iter(|| evaluate_f::<f64>(black_box(k), kp, &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("extended", k.id()), &k, |b, k| {
            b.iter(|| evaluate_f::<DoubleDouble>(black_box(k), kp, &cfg).unwrap())
        });
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_invariants");
    g.sample_size(20);
    for precision in [Precision::Double, Precision::Extended] {
        let cfg = Config { precision, ..Config::default() };
        for k in bench_knots() {
            g.bench_with_input(BenchmarkId::new(precision.to_string(), k.id()), &k, |b, k| {
                b.iter(|| compute_invariants(black_box(k), &cfg).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, twisted_alexander, limit_f, invariants);
criterion_main!(benches);
