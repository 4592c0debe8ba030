//! Solver benchmarks: spectra of the three applications, the polynomial
//! route, and the special-function kernels they lean on.

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use std::hint::black_box;
use wince_core::dipole::DipoleProblem;
use wince_core::inverted::{InfiniteFamily, InvPotProblem, Parity};
use wince_core::mathieu::{MathieuKind, MathieuProblem};
use wince_core::specfun::{bessel, sph_jn_all, BesselKind};

fn bench_qes(c: &mut Criterion) {
    c.bench_function("qes spectrum l=8 b=2", |b| {
        let prob = InvPotProblem::new(2.0, 8).unwrap();
        b.iter(|| black_box(prob.qes_spectrum().unwrap().energies[0]));
    });

    c.bench_function("bender-dunne roots l=8", |b| {
        let prob = InvPotProblem::new(2.0, 8).unwrap();
        b.iter(|| {
            let seq = prob.bender_dunne_even(8);
            black_box(seq.real_roots(8))
        });
    });

    c.bench_function("infinite spectrum l=1 b=1", |b| {
        let prob = InvPotProblem::new(1.0, 1).unwrap();
        let w = prob.default_window().unwrap();
        b.iter(|| {
            black_box(
                prob.infinite_spectrum(w, InfiniteFamily::Psi2)
                    .unwrap()
                    .len(),
            )
        });
    });

    c.bench_function("finite eigenfunction eval", |b| {
        let prob = InvPotProblem::new(2.0, 4).unwrap();
        let e = prob.qes_spectrum().unwrap().energies[1];
        b.iter(|| black_box(prob.finite_eigenfunction(e, Parity::Even, 1.7).unwrap()));
    });
}

fn bench_dipole(c: &mut Criterion) {
    c.bench_function("dipole eigenvalues m=0 beta=1 count=3", |b| {
        let prob = DipoleProblem::new(0, 1.0).unwrap();
        b.iter(|| black_box(prob.angular_eigenvalues(3).unwrap()[0].c));
    });
}

fn bench_mathieu(c: &mut Criterion) {
    c.bench_function("mathieu characteristic values q=1 count=4", |b| {
        let prob = MathieuProblem::new(1.0, MathieuKind::Standard).unwrap();
        b.iter(|| black_box(prob.characteristic_values(4).unwrap()[0].a));
    });
}

fn bench_specfun(c: &mut Criterion) {
    c.bench_function("bessel J series |z|=10", |b| {
        let z = Complex64::new(7.0, 7.0);
        b.iter(|| black_box(bessel(BesselKind::J, 2.5, z).unwrap()));
    });
    c.bench_function("bessel J steed x=120", |b| {
        let z = Complex64::new(120.0, 0.0);
        b.iter(|| black_box(bessel(BesselKind::J, 10.5, z).unwrap()));
    });
    c.bench_function("spherical j batch n=60 x=40", |b| {
        b.iter(|| black_box(sph_jn_all(60, 40.0)));
    });
}

criterion_group!(
    benches,
    bench_qes,
    bench_dipole,
    bench_mathieu,
    bench_specfun
);
criterion_main!(benches);
