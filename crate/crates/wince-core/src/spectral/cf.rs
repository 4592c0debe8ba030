//! Characteristic equations as continued-fraction residuals,
//!
//! ```text
//! R1:  f = beta_0           - a0 g1 / (b1 - a1 g2 / (b2 - ...))
//! R2:  f = beta_0           - a0 (a_{-1} + g1) / (b1 - a1 g2 / (b2 - ...))
//! R3:  f = beta_0 + a_{-1}  - a0 g1 / (b1 - ...)
//! ```
//!
//! evaluated bottom-up from a finite depth, with zero denominators nudged to
//! a tiny value (the bottom-up analogue of the modified-Lentz safeguard).

use crate::che::RecurrenceCoeffs;
use crate::error::{Error, Result};
use num_complex::Complex64;

const TINY: f64 = 1e-290;

/// LHS - RHS of the characteristic equation at the given truncation depth.
pub fn cf_residual(c: &RecurrenceCoeffs, depth: usize) -> Complex64 {
    debug_assert!(depth >= 1);
    let mut t = c.beta(depth);
    for n in (1..depth).rev() {
        if t.norm() < TINY {
            t = Complex64::new(TINY, 0.0);
        }
        t = c.beta(n) - c.alpha(n) * c.gamma(n + 1) / t;
    }
    if t.norm() < TINY {
        t = Complex64::new(TINY, 0.0);
    }
    c.effective_beta0() - c.alpha(0) * c.effective_gamma1() / t
}

/// Residual normalised by the magnitude of its two sides; small at a root.
pub fn cf_residual_relative(c: &RecurrenceCoeffs, depth: usize) -> f64 {
    let mut t = c.beta(depth);
    for n in (1..depth).rev() {
        if t.norm() < TINY {
            t = Complex64::new(TINY, 0.0);
        }
        t = c.beta(n) - c.alpha(n) * c.gamma(n + 1) / t;
    }
    if t.norm() < TINY {
        t = Complex64::new(TINY, 0.0);
    }
    let lhs = c.effective_beta0();
    let rhs = c.alpha(0) * c.effective_gamma1() / t;
    (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0)
}

/// Characteristic residual with the fraction inverted at row `pivot`:
///
/// ```text
/// f = beta_p - g_p a_{p-1}/(b_{p-1} - g_{p-1} a_{p-2}/(b_{p-2} - ...))
///            - a_p g_{p+1}/(b_{p+1} - a_{p+1} g_{p+2}/(b_{p+2} - ...))
/// ```
///
/// The k-th eigenvalue of the underlying tridiagonal problem is a
/// well-conditioned root of the k-th inversion (at pivot 0 the function has
/// a pole glued to every higher root once the off-diagonal couplings are
/// weak). `pivot = 0` reproduces [`cf_residual`].
pub fn cf_residual_at_pivot(c: &RecurrenceCoeffs, pivot: usize, depth: usize) -> Complex64 {
    let gamma_eff = |k: usize| {
        if k == 1 {
            c.effective_gamma1()
        } else {
            c.gamma(k)
        }
    };
    let beta_eff = |k: usize| {
        if k == 0 {
            c.effective_beta0()
        } else {
            c.beta(k)
        }
    };
    let depth = depth.max(pivot + 2);
    // upward tail
    let mut t = c.beta(depth);
    for n in (pivot + 1..depth).rev() {
        if t.norm() < TINY {
            t = Complex64::new(TINY, 0.0);
        }
        t = beta_eff(n) - c.alpha(n) * gamma_eff(n + 1) / t;
    }
    if t.norm() < TINY {
        t = Complex64::new(TINY, 0.0);
    }
    let up = c.alpha(pivot) * gamma_eff(pivot + 1) / t;
    // downward part through the leading principal minors
    let down = if pivot == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        let mut d = beta_eff(0);
        for k in 1..pivot {
            if d.norm() < TINY {
                d = Complex64::new(TINY, 0.0);
            }
            d = beta_eff(k) - gamma_eff(k) * c.alpha(k - 1) / d;
        }
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        gamma_eff(pivot) * c.alpha(pivot - 1) / d
    };
    beta_eff(pivot) - down - up
}

/// Row at which the eigenvector for the given eigenvalue estimate
/// localizes: the index whose diagonal entry beta_n (at the estimate's
/// recurrence) is closest to zero. Used to pick the inversion point.
pub fn localization_pivot(c_at_estimate: &RecurrenceCoeffs, max_n: usize) -> usize {
    let mut best = 0usize;
    let mut best_val = c_at_estimate.effective_beta0().norm();
    for n in 1..=max_n {
        let v = c_at_estimate.beta(n).norm();
        if v < best_val {
            best_val = v;
            best = n;
        }
    }
    best
}

/// Relative version of [`cf_residual_at_pivot`].
pub fn cf_residual_relative_at_pivot(c: &RecurrenceCoeffs, pivot: usize, depth: usize) -> f64 {
    let f = cf_residual_at_pivot(c, pivot, depth);
    let scale = c.beta(pivot).norm()
        + c.alpha(pivot).norm()
        + if pivot >= 1 {
            c.gamma(pivot).norm()
        } else {
            0.0
        }
        + 1.0;
    f.norm() / scale
}

/// Residual with the depth grown until two evaluations 20 apart agree to
/// 1e-12 relative; errors out past a hard cap.
pub fn cf_residual_adaptive(
    c: &RecurrenceCoeffs,
    start_depth: usize,
) -> Result<(Complex64, usize)> {
    let mut depth = start_depth.max(8);
    let cap = 40_000;
    loop {
        let f0 = cf_residual(c, depth);
        let f1 = cf_residual(c, depth + 20);
        let scale = f0.norm().max(f1.norm()).max(c.beta(0).norm()).max(1e-300);
        if (f0 - f1).norm() <= 1e-12 * scale {
            return Ok((f1, depth + 20));
        }
        depth *= 2;
        if depth > cap {
            return Err(Error::NonConvergence(format!(
                "continued fraction still moving at depth {cap}"
            )));
        }
    }
}

/// Locates a sign change of f around `guess` within `spacing` and polishes
/// it by bisection + secant steps. Returns None when no bracket is found or
/// the bracket straddles a pole rather than a root.
pub fn refine_root<F: Fn(f64) -> f64>(f: &F, guess: f64, spacing: f64) -> Option<f64> {
    let mut h = spacing.abs().max(1e-12 * (1.0 + guess.abs()));
    let mut a = guess - h;
    let mut b = guess + h;
    let mut fa = f(a);
    let mut fb = f(b);
    let mut tries = 0;
    while fa * fb > 0.0 {
        h *= 1.6;
        a = guess - h;
        b = guess + h;
        fa = f(a);
        fb = f(b);
        tries += 1;
        if tries > 40 || !fa.is_finite() || !fb.is_finite() {
            return None;
        }
    }
    // bisection with secant acceleration
    let mut mid = 0.5 * (a + b);
    for _ in 0..200 {
        let sec = b - fb * (b - a) / (fb - fa);
        mid = if sec > a && sec < b {
            sec
        } else {
            0.5 * (a + b)
        };
        let fm = f(mid);
        if fm == 0.0 || (b - a).abs() < 1e-15 * (1.0 + mid.abs()) {
            break;
        }
        if fa * fm < 0.0 {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    // a bracketed sign change across a pole has |f| growing, not shrinking
    let f_mid = f(mid).abs();
    if f_mid.is_finite() && f_mid <= f(guess - h).abs().max(f(guess + h).abs()) {
        Some(mid)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::che::{coefficients, CheParams, SolutionSet};
    use crate::specfun::BesselKind;

    #[test]
    fn terminating_fraction_vanishes_at_finite_series_eigenvalue() {
        // inverted-potential parameters at l = 1, b = 2: the series
        // terminates at n = 0 and the eigenvalue has E = (b^2 - 1)/4 = 0.75,
        // i.e. beta_0 = 0: the characteristic residual is beta_0 itself
        // since gamma_1 = 0 truncates the fraction.
        let b = 2.0_f64;
        let l = 1.0;
        let energy = (b * b - 1.0) / 4.0;
        let b3 = energy / 4.0 - b * b / 16.0 + (l / 2.0 - 0.25) * (l / 2.0 - 0.25);
        let p = CheParams::new_real(1.0, -0.5, 1.5 - l, b3, -b * b / 16.0).unwrap();
        let c = coefficients(SolutionSet::new(1, BesselKind::J).unwrap(), &p).unwrap();
        // gamma_1 = 0 for l = 1
        assert!(c.gamma(1).norm() < 1e-14);
        let res = cf_residual(&c, 60);
        assert!(res.norm() < 1e-12, "residual {res}");
    }

    #[test]
    fn refine_root_finds_cosine_zero() {
        let f = |x: f64| x.cos();
        let root = refine_root(&f, 1.5, 0.2).unwrap();
        assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn refine_root_rejects_pole() {
        let f = |x: f64| 1.0 / (x - 1.0);
        assert!(refine_root(&f, 1.0001, 0.01).is_none());
    }
}
