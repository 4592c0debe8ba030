//! Driver for the Mathieu equation
//!
//! ```text
//! w'' + sigma^2 [ a - 2 k^2 cos(2 sigma u) ] w = 0,    q = k^2,
//! ```
//!
//! (sigma = 1 standard, sigma = i modified) as the z0 = 1, B2 = 1
//! specialisation: w(u) = U(z), z = cos^2(sigma u), with
//!
//! ```text
//! z0 = 1, B1 = -1/2, B2 = 1, B3 = k^2/2 - a/4, q = k^2.
//! ```
//!
//! B2 = 1 forces the R2 recurrence form; the rows collapse to
//! q b_1 - a b_0 = 0, q b_2 + (4 - a) b_1 + 2 q b_0 = 0,
//! q b_{n+1} + (4 n^2 - a) b_n + q b_{n-1} = 0, whose roots a are the
//! characteristic values of the pi-periodic even class reachable from this
//! coefficient family.

use crate::che::{coefficients, evaluate_solution, CheParams, RecurrenceCoeffs, SolutionSet};
use crate::convergence;
use crate::error::{Error, Result};
use crate::specfun::BesselKind;
use crate::spectral::{
    cf_residual_at_pivot, cf_residual_relative_at_pivot, char_matrix, localization_pivot,
    refine_root, solve_minimal, tridiag_eigenvalues,
};
use num_complex::Complex64;

/// sigma selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MathieuKind {
    /// sigma = 1: z = cos^2 u
    Standard,
    /// sigma = i: z = cosh^2 u
    Modified,
}

/// Which series family evaluates the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MathieuFamily {
    /// arguments 2k cos(sigma u), first-subgroup set
    W1,
    /// arguments through z - z0 = -sin^2(sigma u), second-subgroup set
    W5,
}

#[derive(Clone, Copy, Debug)]
pub struct MathieuProblem {
    pub k: f64,
    pub kind: MathieuKind,
}

/// A characteristic value with diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct CharValue {
    pub a: f64,
    pub residual: f64,
    pub truncation: usize,
}

/// Result of a solution evaluation: the value plus a convergence-domain
/// annotation for the Y/H kinds.
#[derive(Clone, Copy, Debug)]
pub struct MathieuValue {
    pub value: Complex64,
    pub outside_domain: bool,
}

impl MathieuProblem {
    pub fn new(k: f64, kind: MathieuKind) -> Result<Self> {
        if k == 0.0 || !k.is_finite() {
            return Err(Error::InvalidParameter(
                "k = 0 degenerates the equation (q = k^2 = 0)".into(),
            ));
        }
        Ok(MathieuProblem { k, kind })
    }

    pub fn map_params(&self, a: f64) -> CheParams {
        let q = self.k * self.k;
        CheParams::new_real(1.0, -0.5, 1.0, q / 2.0 - a / 4.0, q).expect("q != 0")
    }

    /// Set-1 recurrence at trial a; beta_n = 4n^2 - a already carries the
    /// eigenparameter with coefficient -1.
    pub fn recurrence(&self, a: f64) -> Result<RecurrenceCoeffs> {
        let p = self.map_params(a);
        coefficients(SolutionSet::new(1, BesselKind::J)?, &p)
    }

    /// Second-subgroup recurrence (same characteristic equation).
    pub fn recurrence_w5(&self, a: f64) -> Result<RecurrenceCoeffs> {
        let p = self.map_params(a);
        coefficients(SolutionSet::new(5, BesselKind::J)?, &p)
    }

    /// Lowest `count` characteristic values a, ascending; truncated-matrix
    /// estimates polished on the R2 continued fraction.
    pub fn characteristic_values(&self, count: usize) -> Result<Vec<CharValue>> {
        if count == 0 {
            return Err(Error::InvalidParameter("count must be >= 1".into()));
        }
        let c0 = self.recurrence(0.0)?;
        let mut n_trunc = 60usize.max(2 * count);
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
                    "characteristic values keep moving under truncation doubling".into(),
                ));
            }
        }
        let depth = 2 * n_trunc + 40;
        let mut out = Vec::with_capacity(count);
        for est in estimates.drain(..) {
            let pivot = localization_pivot(&self.recurrence(est)?, depth - 2);
            let f = |a_try: f64| -> f64 {
                match self.recurrence(a_try) {
                    Ok(c) => cf_residual_at_pivot(&c, pivot, depth).re,
                    Err(_) => f64::NAN,
                }
            };
            let root = refine_root(&f, est, 1e-6 * (1.0 + est.abs())).unwrap_or(est);
            let c = self.recurrence(root)?;
            out.push(CharValue {
                a: root,
                residual: cf_residual_relative_at_pivot(&c, pivot, depth),
                truncation: 2 * n_trunc,
            });
        }
        out.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap());
        Ok(out)
    }

    /// Coefficients b_n^(1) of the w1 series at the characteristic value.
    pub fn series_coefficients(&self, a: f64, len: usize) -> Result<Vec<f64>> {
        let c = self.recurrence(a)?;
        Ok(solve_minimal(&c, len)?.iter().map(|z| z.re).collect())
    }

    fn z_of_u(&self, u: f64) -> f64 {
        match self.kind {
            MathieuKind::Standard => u.cos().powi(2),
            MathieuKind::Modified => u.cosh().powi(2),
        }
    }

    /// Series solution w(u) in the chosen family and Bessel kind, built on
    /// the generic set evaluation at z = cos^2(sigma u). For W5 the
    /// coefficients are b_n^(5) = (-1)^n b_n^(1), computed from the
    /// second-subgroup recurrence.
    pub fn solution(
        &self,
        a: f64,
        family: MathieuFamily,
        j: BesselKind,
        u: f64,
    ) -> Result<MathieuValue> {
        let p = self.map_params(a);
        let len = 48 + (2.0 * self.k * self.k) as usize;
        let (set, coeffs) = match family {
            MathieuFamily::W1 => (
                SolutionSet::new(1, j)?,
                solve_minimal(&self.recurrence(a)?, len)?,
            ),
            MathieuFamily::W5 => (
                SolutionSet::new(5, j)?,
                solve_minimal(&self.recurrence_w5(a)?, len)?,
            ),
        };
        let z = Complex64::new(self.z_of_u(u), 0.0);
        let v = evaluate_solution(set, &p, &coeffs, z, None)?;
        Ok(MathieuValue {
            value: v.value,
            outside_domain: v.outside_domain,
        })
    }

    /// Human-readable annotation of the convergence domain of the family
    /// for j in {Y, H1, H2}, in terms of the variable u.
    pub fn domain_note(&self, family: MathieuFamily, j: BesselKind) -> Result<String> {
        let p = self.map_params(0.0);
        let set_index = match family {
            MathieuFamily::W1 => 1,
            MathieuFamily::W5 => 5,
        };
        let d = convergence::domain(SolutionSet::new(set_index, j)?, &p)?;
        Ok(match (d, family, self.kind) {
            (convergence::Domain::AllFiniteZ, _, _) => "all u (J-kind series)".to_string(),
            (
                convergence::Domain::Annulus { boundary, .. },
                MathieuFamily::W1,
                MathieuKind::Modified,
            ) => {
                let b = if boundary == convergence::BoundaryRule::Included {
                    ">="
                } else {
                    ">"
                };
                format!("|cosh u| {b} 1: all u")
            }
            (
                convergence::Domain::Annulus { boundary, .. },
                MathieuFamily::W1,
                MathieuKind::Standard,
            ) => {
                let b = if boundary == convergence::BoundaryRule::Included {
                    ">="
                } else {
                    ">"
                };
                format!("|cos u| {b} 1")
            }
            (convergence::Domain::Annulus { boundary, .. }, MathieuFamily::W5, kind) => {
                let b = if boundary == convergence::BoundaryRule::Included {
                    ">="
                } else {
                    ">"
                };
                match kind {
                    MathieuKind::Modified => format!("|sinh u| {b} 1"),
                    MathieuKind::Standard => format!("|sin u| {b} 1"),
                }
            }
        })
    }
}
