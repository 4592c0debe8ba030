//! Point checks pinned to independently computed values: exact-rational
//! series oracles, closed-form substitutions, and the edge-case behaviour
//! of the set machinery at special parameters.

mod common;

use common::{bessel_j_rational_series, hyp2f1_rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use wince_core::che::{coefficients, evaluate_solution, CheParams, SolutionSet};
use wince_core::convergence::tail_ratio_prediction;
use wince_core::dipole::DipoleProblem;
use wince_core::inverted::InvPotProblem;
use wince_core::specfun::{
    bessel, bessel_half_integer, hypergeom_terminating, jacobi_poly, BesselKind,
};
use wince_core::spectral::{degeneracy_check, minimal_ratios, solve_minimal};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn bessel_j3_against_exact_rational_series() {
    // 200-term exact-rational evaluation of the ascending series at x = 3/2
    let oracle =
        bessel_j_rational_series(6, BigRational::new(BigInt::from(3), BigInt::from(2)), 200);
    // frozen from the oracle
    let frozen = 0.060_963_951_141_139_63_f64;
    assert!(
        (oracle - frozen).abs() < 1e-16 * frozen.abs().max(1.0),
        "oracle moved: {oracle}"
    );
    let got = bessel(BesselKind::J, 3.0, c(1.5, 0.0)).unwrap().re;
    assert!(
        (got - oracle).abs() < 1e-14 * oracle.abs(),
        "{got} vs {oracle}"
    );
}

#[test]
fn j_half_closed_form_at_two() {
    let expect = (2.0 / (std::f64::consts::PI * 2.0)).sqrt() * 2.0_f64.sin();
    let got = bessel(BesselKind::J, 0.5, c(2.0, 0.0)).unwrap().re;
    assert!((got - expect).abs() < 1e-14);
}

#[test]
fn hypergeometric_exact_rational_point() {
    // 2F1(-3, 5/2; 3/2; 7/10) summed in exact arithmetic
    let oracle = hyp2f1_rational(
        3,
        BigRational::new(BigInt::from(5), BigInt::from(2)),
        BigRational::new(BigInt::from(3), BigInt::from(2)),
        BigRational::new(BigInt::from(7), BigInt::from(10)),
    );
    let got = hypergeom_terminating(3, 2.5, 1.5, 0.7).unwrap();
    assert!(
        (got - oracle).abs() < 1e-14 * (1.0 + oracle.abs()),
        "{got} vs {oracle}"
    );
}

#[test]
fn jacobi_reflection_at_spec_point() {
    let lhs = jacobi_poly(3, 0.5, 1.5, 0.3);
    let rhs = -jacobi_poly(3, 1.5, 0.5, -0.3); // (-1)^3
    assert!((lhs - rhs).abs() < 1e-14 * lhs.abs().max(1.0));
}

#[test]
fn tail_ratio_measured_at_z0_zero() {
    // the z0 = 0 limit keeps sets 1 and 3; the minimal tail then decays
    // like -q B1/(4 n^3)
    let p = CheParams::new_real(0.0, -2.0, 1.3, 0.4, 3.0).unwrap();
    let cc = coefficients(SolutionSet::new(1, BesselKind::J).unwrap(), &p).unwrap();
    let ratios = minimal_ratios(&cc, 140);
    let measured = ratios[100]; // b_101/b_100
    let predicted = tail_ratio_prediction(&p, 100);
    assert!(
        (measured - predicted).norm() < 0.03 * predicted.norm(),
        "measured {measured}, predicted {predicted}"
    );
}

#[test]
fn evaluate_solution_half_integer_order_path_equivalence() {
    // inverted-potential parameters make every Bessel order half-odd; the
    // generic evaluation must agree with a manual assembly from the
    // half-integer closed forms
    let prob = InvPotProblem::new(2.0, 1).unwrap();
    let energy = (4.0 - 1.0) / 4.0;
    let p = prob.map_params(energy);
    let set = SolutionSet::new(1, BesselKind::J).unwrap();
    let cc = coefficients(set, &p).unwrap();
    let b = wince_core::spectral::solve_finite(&cc, 0).unwrap(); // terminates at n = 0
    let z = c(-(0.9_f64.sinh().powi(2)), 0.0);
    let got = evaluate_solution(set, &p, &b, z, Some(wince_core::che::Branch::Principal))
        .unwrap()
        .value;
    // manual: prefactor z^{(1-B2)/2} times J_{B2-1}(2 sqrt(qz))
    let pre = z.powc((Complex64::new(1.0, 0.0) - p.b2) * 0.5);
    let arg = 2.0 * (p.q * z).sqrt();
    let manual = pre * bessel_half_integer(p.b2.re - 1.0, arg).unwrap();
    assert!(
        (got - manual).norm() < 1e-13 * manual.norm(),
        "{got} vs {manual}"
    );
}

#[test]
fn degeneracy_l7_b33() {
    let prob = InvPotProblem::new(3.3, 7).unwrap();
    let rep = degeneracy_check(&prob.even_matrix(0.4), &prob.odd_matrix(0.4)).unwrap();
    assert!(rep.identity_ok);
    assert!(rep.rel_error < 1e-10, "rel error {}", rep.rel_error);
}

#[test]
fn inverted_parameter_map_values() {
    assert!(InvPotProblem::new(0.0, 1).is_err());
    let p = InvPotProblem::new(4.0, 2).unwrap().map_params(0.0);
    // B3 = 0/4 - 16/16 + (3/4)^2 = -1 + 9/16
    assert!((p.b3.re - (-0.4375)).abs() < 1e-15);
    assert!((p.b2.re - (-0.5)).abs() < 1e-15);
    assert!((p.q.re - (-1.0)).abs() < 1e-15);
}

#[test]
fn dipole_truncation_structure() {
    // at the dipole parameters only sets 1 and 5 carry clean infinite
    // expansions from n = 0; set 2 truncates on the left and relabels onto
    // the set-1 order law (the two afford the same solution), set 6 hits a
    // gamma zero, and sets 4/8 truncate right/left - which is why two
    // Bessel representations remain, not eight
    for m in 1..=3u32 {
        let prob = DipoleProblem::new(m, 1.0).unwrap();
        let p = prob.map_params(0.7).unwrap();
        let term = |idx: u8| {
            let set = SolutionSet::new(idx, BesselKind::J).unwrap();
            assert!(set.validity(&p).is_ok(), "set {idx} formal restriction");
            coefficients(set, &p).unwrap().termination(1000)
        };
        for idx in [1u8, 5] {
            let t = term(idx);
            assert_eq!((t.right_stop, t.left_start), (None, None), "set {idx}");
        }
        assert_eq!(term(2).left_start, Some(m as usize), "set 2, m={m}");
        assert_eq!(term(6).right_stop, Some(m as usize - 1), "set 6, m={m}");
        assert_eq!(term(4).right_stop, Some(m as usize - 1), "set 4, m={m}");
        assert_eq!(term(8).left_start, Some(m as usize), "set 8, m={m}");

        // the relabelled set-2 series reproduces the set-1 order law
        let set2 = SolutionSet::new(2, BesselKind::J).unwrap();
        let set1 = SolutionSet::new(1, BesselKind::J).unwrap();
        let off2 = set2.order_offset(&p).unwrap().re + 2.0 * m as f64; // shift n -> n + m
        assert!((off2 - set1.order_offset(&p).unwrap().re).abs() < 1e-12);
    }
}

#[test]
fn dipole_subgroup_coefficients_alternate() {
    // b_n^(5) = (-1)^n b_n^(1): the two Bessel representations share one
    // coefficient sequence
    let prob = DipoleProblem::new(1, 1.3).unwrap();
    let cval = prob.angular_eigenvalues(1).unwrap()[0].c;
    let p = prob.map_params(cval).unwrap();
    let c1 = coefficients(SolutionSet::new(1, BesselKind::J).unwrap(), &p).unwrap();
    let c5 = coefficients(SolutionSet::new(5, BesselKind::J).unwrap(), &p).unwrap();
    let b1 = solve_minimal(&c1, 40).unwrap();
    let b5 = solve_minimal(&c5, 40).unwrap();
    for n in 0..=40usize {
        let want = if n % 2 == 0 { b1[n].re } else { -b1[n].re };
        assert!(
            (b5[n].re - want).abs() <= 1e-10 * b1[n].norm().max(1e-300),
            "n={n}"
        );
    }
}

#[test]
fn concurrent_spectra_are_deterministic() {
    // everything is immutable after construction; spectra computed on
    // worker threads match the single-threaded values bit for bit
    let single: Vec<Vec<f64>> = (1..=4u32)
        .map(|l| {
            InvPotProblem::new(1.7, l)
                .unwrap()
                .qes_spectrum()
                .unwrap()
                .energies
        })
        .collect();
    let handles: Vec<_> = (1..=4u32)
        .map(|l| {
            std::thread::spawn(move || {
                InvPotProblem::new(1.7, l)
                    .unwrap()
                    .qes_spectrum()
                    .unwrap()
                    .energies
            })
        })
        .collect();
    for (h, expect) in handles.into_iter().zip(single.iter()) {
        let got = h.join().unwrap();
        assert_eq!(&got, expect);
    }
}

#[test]
fn adaptive_depth_continued_fraction() {
    // the depth-growing evaluation settles and reports the depth it used
    let prob =
        wince_core::mathieu::MathieuProblem::new(1.0, wince_core::mathieu::MathieuKind::Standard)
            .unwrap();
    let cc = prob.recurrence(0.3).unwrap();
    let (value, depth) = wince_core::spectral::cf_residual_adaptive(&cc, 30).unwrap();
    assert!(depth >= 30);
    let direct = wince_core::spectral::cf_residual(&cc, depth + 200);
    assert!((value - direct).norm() < 1e-11 * (1.0 + direct.norm()));
}

#[test]
fn precision_loss_flag_raised_out_of_region() {
    use wince_core::specfun::bessel_checked;
    // a comfortably in-region evaluation carries no flag
    let ok = bessel_checked(BesselKind::J, 1.5, c(8.0, 2.0)).unwrap();
    assert!(!ok.precision_loss);
    // a genuinely complex argument far outside both the series radius and
    // the asymptotic region (large order) falls back to the flagged series
    let risky = bessel_checked(BesselKind::J, 41.0, c(30.0, 29.0)).unwrap();
    assert!(risky.precision_loss);
}

#[test]
fn large_order_ratio_law() {
    // for fixed x and large order, J_{a+2}/J_a ~ x^2/(4(a+1)(a+2))
    let alpha = 100.0_f64;
    for &x in &[1.0_f64, 2.0, 5.0] {
        let ja = bessel(BesselKind::J, alpha, c(x, 0.0)).unwrap().re;
        let ja2 = bessel(BesselKind::J, alpha + 2.0, c(x, 0.0)).unwrap().re;
        let measured = ja2 / ja;
        let law = x * x / (4.0 * (alpha + 1.0) * (alpha + 2.0));
        assert!(
            (measured - law).abs() < 0.01 * law,
            "x={x}: {measured} vs {law}"
        );
    }
    // the Y/H mirror decays the other way: Z_{a+2}/Z_a ~ 4a(a+1)/x^2
    let x = 2.0;
    let ya = bessel(BesselKind::Y, alpha, c(x, 0.0)).unwrap().re;
    let ya2 = bessel(BesselKind::Y, alpha + 2.0, c(x, 0.0)).unwrap().re;
    let law = 4.0 * alpha * (alpha + 1.0) / (x * x);
    assert!((ya2 / ya - law).abs() < 0.01 * law);
}
