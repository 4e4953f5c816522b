use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use friable::primes::{psi_smooth_exact_with, s2_direct, CountBudget, PrimeTable};
use friable::zeros::{bundled_zeros, s2_via_zeros};
use friable::Execution;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn bench_counting(c: &mut Criterion) {
    let table = PrimeTable::new(100_000).unwrap();
    let mut group = c.benchmark_group("psi_exact");
    group.sample_size(10);
    for &(x, y) in &[(1e8, 100.0), (1e9, 1000.0)] {
        for (name, exec) in modes() {
            group.bench_with_input(
                BenchmarkId::new(name, format!("{x:e}/{y}")),
                &exec,
                |b, &e| {
                    b.iter(|| {
                        psi_smooth_exact_with(black_box(x), y, &table, CountBudget::default(), e)
                    })
                },
            );
        }
    }
    group.finish();
}

fn bench_prime_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("prime_table");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| PrimeTable::with_options(black_box(20_000_000), 20_000_000, exec))
        });
    }
    group.finish();
}

fn bench_explicit_formula(c: &mut Criterion) {
    let zeros = bundled_zeros();
    let table = PrimeTable::new(1_000_000).unwrap();
    let mut group = c.benchmark_group("explicit_formula");
    group.bench_function("zeros_sum", |b| {
        b.iter(|| s2_via_zeros(black_box(1e5), 0.4, 100.0, &zeros))
    });
    group.bench_function("direct_sum", |b| {
        b.iter(|| s2_direct(black_box(1e6), 0.4, &table))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_counting,
    bench_prime_table,
    bench_explicit_formula
);
criterion_main!(benches);
