use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use mathieu_core::kernels::{self, KernelSpec};
use mathieu_core::polynomials;
use mathieu_core::refutation::{self, RefutationParams};
use mathieu_core::series::{self, InequalityParams};

fn bench_polynomials(c: &mut Criterion) {
    c.bench_function("euler_poly_40", |b| {
        b.iter(|| polynomials::euler_poly(black_box(40)).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    let p = InequalityParams::new(2.0, 9.0, 6.0).unwrap();
    for r in [5.0, 50.0] {
        c.bench_function(&format!("lhs_series_beta9_r{r}"), |b| {
            b.iter(|| series::lhs_series(&p, black_box(r), 1e-25).ok())
        });
    }
}

fn bench_kernels(c: &mut Criterion) {
    let k = KernelSpec::normalized_bessel(1.5).unwrap();
    c.bench_function("integral_fermi_bessel", |b| {
        b.iter(|| kernels::integral_fermi(4.0, 2.0, &k, black_box(2.0), 1e-8).unwrap())
    });
}

fn bench_scan(c: &mut Criterion) {
    let p = RefutationParams::new(1, 2, 6.0).unwrap();
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("beta9_16pts", |b| {
        b.iter(|| refutation::scan_family(&p, 5.0, 50.0, 16, 1e-6).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_polynomials,
    bench_series,
    bench_kernels,
    bench_scan
);
criterion_main!(benches);
