//! Driver for the angular equation of an electron in a point-dipole field,
//!
//! ```text
//! [ (1/sin t) d/dt (sin t d/dt) + C - beta cos t - m^2/sin^2 t ] Theta = 0,
//! ```
//!
//! mapped by Theta = (sin t)^m U(z), z = sin^2(t/2) onto the equation with
//!
//! ```text
//! z0 = 1, B1 = -m-1, B2 = 2m+2, B3 = m(m+1) - beta - C, q = -2 beta.
//! ```
//!
//! The separation constant C is the eigenvalue of the single three-term
//! recurrence shared by the two regular Bessel-series representations; the
//! same coefficients feed an expansion in Jacobi (or associated Legendre)
//! polynomials, which reduces to the Legendre series at m = 0 and to
//! C = l(l+1) as beta -> 0.

use crate::che::{coefficients, CheParams, RecurrenceCoeffs, SolutionSet};
use crate::error::{Error, Result};
use crate::specfun::{assoc_legendre, bessel, jacobi_poly, BesselKind};
use crate::spectral::{
    cf_residual_at_pivot, cf_residual_relative_at_pivot, char_matrix, localization_pivot,
    refine_root, solve_minimal, tridiag_eigenvalues,
};
use num_complex::Complex64;

/// Azimuthal index and dipole-moment parameter.
#[derive(Clone, Copy, Debug)]
pub struct DipoleProblem {
    pub m: u32,
    pub beta: f64,
}

/// The two Bessel-series representations of the angular function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaVariant {
    /// argument i sqrt(8 beta) sin(t/2): complex J of odd integer order
    Theta1,
    /// argument sqrt(8 beta) cos(t/2): real J of odd integer order
    Theta2,
}

/// One angular eigenvalue with diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct AngularLevel {
    pub c: f64,
    /// relative continued-fraction residual at the root
    pub residual: f64,
    /// matrix truncation that stabilised the estimate
    pub truncation: usize,
}

/// Exact beta = 0 limit: C = l(l+1) for l >= m.
pub fn legendre_limit(m: u32, ell: u32) -> Result<f64> {
    if ell < m {
        return Err(Error::InvalidParameter(format!(
            "need ell >= m, got ell = {ell}, m = {m}"
        )));
    }
    Ok((ell * (ell + 1)) as f64)
}

impl DipoleProblem {
    pub fn new(m: u32, beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dipole parameter beta must be >= 0, got {beta}"
            )));
        }
        Ok(DipoleProblem { m, beta })
    }

    /// Equation parameters at a trial separation constant; beta = 0 is the
    /// hypergeometric degeneration and is rejected here (use
    /// [`legendre_limit`]).
    pub fn map_params(&self, c_val: f64) -> Result<CheParams> {
        let mf = self.m as f64;
        CheParams::new_real(
            1.0,
            -mf - 1.0,
            2.0 * mf + 2.0,
            mf * (mf + 1.0) - self.beta - c_val,
            -2.0 * self.beta,
        )
    }

    /// Set-1 recurrence at the trial C, rows scaled so that
    /// beta_n = -C + (C-independent part).
    pub fn recurrence(&self, c_val: f64) -> Result<RecurrenceCoeffs> {
        let p = self.map_params(c_val)?;
        let c = coefficients(SolutionSet::new(1, BesselKind::J)?, &p)?;
        // beta_n = 4 B3 + ... carries C with coefficient -4
        Ok(c.row_scaled(Complex64::new(0.25, 0.0)))
    }

    /// Lowest `count` separation constants, ascending. Truncation starts at
    /// N = 40 and doubles until the requested eigenvalues move by less than
    /// 1e-10; each estimate is then polished on the continued fraction.
    pub fn angular_eigenvalues(&self, count: usize) -> Result<Vec<AngularLevel>> {
        if count == 0 {
            return Err(Error::InvalidParameter("count must be >= 1".into()));
        }
        if self.beta == 0.0 {
            return Err(Error::InvalidParameter(
                "beta = 0 degenerates the equation; the spectrum is C = l(l+1)".into(),
            ));
        }
        let c0 = self.recurrence(0.0)?;
        let mut n_trunc = 40usize.max(2 * count);
        let mut estimates: Vec<f64>;
        loop {
            let sol = |n: usize| -> Result<Vec<f64>> {
                let t = char_matrix(&c0, n)?;
                let mut v: Vec<f64> = tridiag_eigenvalues(&t)
                    .values()
                    .iter()
                    .map(|z| z.re)
                    .collect();
                v.sort_by(|a, b| a.partial_cmp(b).unwrap());
                v.truncate(count);
                Ok(v)
            };
            let a = sol(n_trunc)?;
            let b = sol(2 * n_trunc)?;
            if a.iter()
                .zip(b.iter())
                .all(|(x, y)| (x - y).abs() < 1e-10 * (1.0 + x.abs()))
            {
                estimates = b;
                break;
            }
            n_trunc *= 2;
            if n_trunc > 10_000 {
                return Err(Error::NonConvergence(
                    "angular eigenvalues keep moving under truncation doubling".into(),
                ));
            }
        }

        let depth = 2 * n_trunc + 40;
        let mut out = Vec::with_capacity(count);
        for est in estimates.drain(..) {
            // invert the fraction where the eigenvector localizes: that is
            // where the root is well conditioned
            let pivot = localization_pivot(&self.recurrence(est)?, depth - 2);
            let f = |c_try: f64| -> f64 {
                match self.recurrence(c_try) {
                    Ok(c) => cf_residual_at_pivot(&c, pivot, depth).re,
                    Err(_) => f64::NAN,
                }
            };
            let root = refine_root(&f, est, 1e-6 * (1.0 + est.abs())).unwrap_or(est);
            let c = self.recurrence(root)?;
            out.push(AngularLevel {
                c: root,
                residual: cf_residual_relative_at_pivot(&c, pivot, depth),
                truncation: 2 * n_trunc,
            });
        }
        out.sort_by(|a, b| a.c.partial_cmp(&b.c).unwrap());
        Ok(out)
    }

    /// Series coefficients b_n at the eigenvalue C (minimal solution,
    /// b_0 = 1), shared by both Bessel representations and the polynomial
    /// expansions.
    pub fn series_coefficients(&self, c_val: f64, len: usize) -> Result<Vec<f64>> {
        let c = self.recurrence(c_val)?;
        let b = solve_minimal(&c, len)?;
        Ok(b.iter().map(|z| z.re).collect())
    }

    fn coefficient_len(&self) -> usize {
        // b_{n+1}/b_n ~ beta/(2n^2): 60 terms put the tail far below 1e-16
        // for every beta this driver touches
        60 + (self.beta.abs() as usize)
    }

    /// Bessel-series angular function at the eigenvalue C. Both variants
    /// are normalised to be real (the raw first variant carries a constant
    /// phase i (-1)^m which is divided out; the leftover imaginary part is
    /// asserted below 1e-10 relative).
    pub fn theta_bessel(&self, c_val: f64, variant: ThetaVariant, theta: f64) -> Result<f64> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        let b = self.series_coefficients(c_val, self.coefficient_len())?;
        let m = self.m as f64;
        let half = 0.5 * theta;
        let s8b = (8.0 * self.beta).sqrt();

        match variant {
            ThetaVariant::Theta2 => {
                // (cos t/2)^(-1) (tan t/2)^m sum_n b_n J_{2n+2m+1}(sqrt(8b) cos(t/2))
                let x = s8b * half.cos();
                if theta >= std::f64::consts::PI - 1e-9 {
                    // endpoint limit: J_k(x)/x^k -> (1/2)^k/k! kills all but
                    // the lowest order at m = 0; zero for m >= 1
                    return Ok(if self.m == 0 { b[0] * s8b / 2.0 } else { 0.0 });
                }
                let mut sum = 0.0;
                for (n, bn) in b.iter().enumerate() {
                    let ord = 2.0 * n as f64 + 2.0 * m + 1.0;
                    let term = bn * bessel(BesselKind::J, ord, Complex64::new(x, 0.0))?.re;
                    sum += term;
                    if n > 4 && term.abs() < 1e-16 * sum.abs().max(1e-300) {
                        break;
                    }
                }
                Ok(half.tan().powi(self.m as i32) / half.cos() * sum)
            }
            ThetaVariant::Theta1 => {
                // (sin t/2)^(-1) (cot t/2)^m sum_n (-1)^n b_n J_{2n+2m+1}(i sqrt(8b) sin(t/2))
                let x = Complex64::new(0.0, s8b * half.sin());
                if theta <= 1e-9 {
                    return Ok(if self.m == 0 { b[0] * s8b / 2.0 } else { 0.0 });
                }
                let mut sum = Complex64::new(0.0, 0.0);
                for (n, bn) in b.iter().enumerate() {
                    let ord = 2.0 * n as f64 + 2.0 * m + 1.0;
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let term = sign * bn * bessel(BesselKind::J, ord, x)?;
                    sum += term;
                    if n > 4 && term.norm() < 1e-16 * sum.norm().max(1e-300) {
                        break;
                    }
                }
                let pre = half.sin().powi(-1) * (half.cos() / half.sin()).powi(self.m as i32);
                // divide out the constant phase i (-1)^m
                let phase =
                    Complex64::new(0.0, 1.0) * if self.m.is_multiple_of(2) { 1.0 } else { -1.0 };
                let v = pre * sum / phase;
                if v.im.abs() > 1e-10 * v.norm().max(1e-300) {
                    return Err(Error::Tolerance(format!(
                        "first Bessel representation failed the reality check: {v}"
                    )));
                }
                Ok(v.re)
            }
        }
    }

    /// Jacobi-polynomial representation,
    /// (sin t)^m sum_n (-1)^n n!/(n+m)! b_n P_n^{(m,m)}(cos t);
    /// the m = 0 case is the plain Legendre series.
    pub fn theta_jacobi(&self, c_val: f64, theta: f64) -> Result<f64> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        let b = self.series_coefficients(c_val, self.coefficient_len())?;
        let m = self.m as f64;
        let x = theta.cos();
        let mut ratio = 1.0; // n!/(n+m)!
        for k in 1..=self.m as usize {
            ratio /= k as f64;
        }
        let mut sum = 0.0;
        for (n, bn) in b.iter().enumerate() {
            if n > 0 {
                ratio *= n as f64 / (n as f64 + m);
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * ratio * bn * jacobi_poly(n, m, m, x);
            sum += term;
            if n > 8 && term.abs() < 1e-16 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(theta.sin().powi(self.m as i32) * sum)
    }

    /// Associated-Legendre writing of the same series,
    /// proportional to sum_n (-1)^n n!/(n+2m)! b_n P_{n+m}^m(cos t).
    pub fn theta_assoc_legendre(&self, c_val: f64, theta: f64) -> Result<f64> {
        let b = self.series_coefficients(c_val, self.coefficient_len())?;
        let x = theta.cos();
        let m = self.m as usize;
        let mut ratio = 1.0; // n!/(n+2m)!
        for k in 1..=2 * m {
            ratio /= k as f64;
        }
        let mut sum = 0.0;
        for (n, bn) in b.iter().enumerate() {
            if n > 0 {
                ratio *= n as f64 / (n as f64 + 2.0 * m as f64);
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * ratio * bn * assoc_legendre(n + m, m, x)?;
            sum += term;
            if n > 8 && term.abs() < 1e-16 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(sum)
    }
}
