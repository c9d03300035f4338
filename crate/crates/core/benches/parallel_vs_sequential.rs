//! One-thread pool against the full rayon pool on the hot paths. Build with
//! `--no-default-features` to time the plain sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gradalg::abelian::AbelianGroup;
use gradalg::cohomology::{all_bicharacters, cocycle_from_bicharacter, Bicharacter};
use gradalg::graded_algebra::{center_basis, twisted_group_algebra};
use gradalg::groups::{AbelianSubgroup, Extension, FiniteGroup, Subgroup};
use gradalg::par::with_threads;
use gradalg::realization::{build_presentation, verify_presentation};
use gradalg::structure::{case_report, validate_triple};

fn modes() -> [(&'static str, Option<usize>); 2] {
    [("sequential", Some(1)), ("parallel", None)]
}

fn bench_case_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("case_report_D4xZ2");
    let g = FiniteGroup::from_name("D4xZ2").unwrap();
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || case_report(&g, 1).unwrap()))
        });
    }
    group.finish();
}

fn bench_bicharacters(c: &mut Criterion) {
    let mut group = c.benchmark_group("bicharacters_Z4xZ4xZ4");
    let h = AbelianGroup::from_cyclic_factors(&[4, 4, 4]).unwrap();
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || all_bicharacters(&h)))
        });
    }
    group.finish();
}

fn bench_twisted_center(c: &mut Criterion) {
    let mut group = c.benchmark_group("twisted_center_Z4xZ4");
    group.sample_size(10);
    let h = AbelianGroup::from_cyclic_factors(&[4, 4]).unwrap();
    let phi = Bicharacter::new(h, vec![vec![0, 1], vec![3, 0]]).unwrap();
    let alpha = cocycle_from_bicharacter(&phi);
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                with_threads(threads, || {
                    let a = twisted_group_algebra(&alpha).unwrap();
                    center_basis(&a).len()
                })
            })
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_D4_d2");
    group.sample_size(10);
    let g = FiniteGroup::dihedral4();
    let sub = Subgroup::new(&g, vec![0, 2, 4, 6]).unwrap();
    let hs = AbelianSubgroup::new(&g, sub).unwrap();
    let (ext, _) = Extension::from_normal_subgroup(&g, &hs).unwrap();
    let phi = Bicharacter::new(ext.h().clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
    let triple = validate_triple(ext, phi, 2).unwrap();
    let p = build_presentation(&triple).unwrap();
    for (name, threads) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_threads(threads, || verify_presentation(&p).unwrap().passed))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_case_report, bench_bicharacters, bench_twisted_center, bench_verify);
criterion_main!(benches);
