use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sturm_bench::SLOPES;
use sturm_core::repetitions::power_scan;
use sturm_core::verify::{run_suite, Suite, VerifyConfig};
use sturm_core::{classify_length, critical_exponent, factors_of_length, three_distance, Slope};

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("arithmetic");
    for text in SLOPES {
        let s = Slope::parse(text).unwrap();
        g.bench_with_input(BenchmarkId::new("distance", text), &s, |b, s| {
            b.iter(|| {
                for n in 1..500 {
                    black_box(s.distance(black_box(n)).unwrap());
                }
            })
        });
        g.bench_with_input(BenchmarkId::new("three_distance", text), &s, |b, s| {
            b.iter(|| three_distance(s, black_box(10_000)).unwrap())
        });
    }
    g.finish();
}

fn factors(c: &mut Criterion) {
    let mut g = c.benchmark_group("factors");
    let s = Slope::parse(SLOPES[1]).unwrap();
    for n in [20usize, 150, 1000] {
        g.bench_with_input(BenchmarkId::new("partition", n), &n, |b, &n| {
            b.iter(|| factors_of_length(&s, n).unwrap())
        });
    }
    for n in [20u64, 150] {
        g.bench_with_input(BenchmarkId::new("classify", n), &n, |b, &n| {
            b.iter(|| classify_length(&s, n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("oracle_scan", n), &n, |b, &n| {
            b.iter(|| power_scan(&s, n as usize).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    let s = Slope::parse(SLOPES[0]).unwrap();
    g.bench_function("critical_exponent", |b| b.iter(|| critical_exponent(&s, 30).unwrap()));
    let cfg = VerifyConfig::default_family(60);
    g.bench_function("thm5_family_n60", |b| b.iter(|| run_suite(Suite::Thm5, &cfg)));
    g.finish();
}

criterion_group!(benches, arithmetic, factors, sweeps);
criterion_main!(benches);
