use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spinlens_core::lens_invariants::{find_generator_pair, independent_bruteforce};
use spinlens_core::num_theory::{primes_in_range, sum_three_unit_squares};
use spinlens_core::periodic_groups::enumerate_periodic_odd;
use spinlens_core::{PontrjaginPair, PrimeModulus};

fn generator_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_generator_pair");
    for p in [5u64, 1_009, 9_973, 99_991] {
        let p = PrimeModulus::new(p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| find_generator_pair(black_box(p)).unwrap())
        });
    }
    group.finish();

    c.bench_function("generator_pairs_5_to_2000", |b| {
        let primes = primes_in_range(5, 2_000).unwrap();
        b.iter(|| {
            for &p in &primes {
                black_box(find_generator_pair(p).unwrap());
            }
        })
    });
}

fn oracles(c: &mut Criterion) {
    let p = PrimeModulus::new(31).unwrap();
    let a = PontrjaginPair::from_values(1, 3, p);
    let b = PontrjaginPair::from_values(1, 6, p);
    c.bench_function("independent_bruteforce_p31", |bench| {
        bench.iter(|| independent_bruteforce(black_box(&a), black_box(&b)).unwrap())
    });
    let p = PrimeModulus::new(10_007).unwrap();
    c.bench_function("sum_three_unit_squares_p10007", |bench| {
        bench.iter(|| sum_three_unit_squares(black_box(p.residue(0)), p).unwrap())
    });
}

fn groups(c: &mut Criterion) {
    c.bench_function("enumerate_periodic_odd_1000", |b| {
        b.iter(|| enumerate_periodic_odd(black_box(1_000)))
    });
}

criterion_group!(benches, generator_pairs, oracles, groups);
criterion_main!(benches);
