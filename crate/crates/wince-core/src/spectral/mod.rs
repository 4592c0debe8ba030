//! Characteristic-equation machinery: continued fractions, truncated
//! tridiagonal matrices, finite-series eigensolving, coefficient solving
//! and the polynomial route to quasi-exactly-solvable spectra.

mod bender_dunne;
mod cf;
mod coefficients;
mod degeneracy;
mod eigen;
mod hqr;
mod tridiag;

pub use bender_dunne::{bender_dunne, durand_kerner, rational_from_f64, BenderDunneSeq};
pub use cf::{
    cf_residual, cf_residual_adaptive, cf_residual_at_pivot, cf_residual_relative,
    cf_residual_relative_at_pivot, localization_pivot, refine_root,
};
pub use coefficients::{minimal_ratios, solve_finite, solve_minimal};
pub use degeneracy::{degeneracy_check, DegeneracyReport};
pub use eigen::{symm_tridiag_eigenvalues, tridiag_eigenvalues, EigenOutcome};
pub use hqr::hessenberg_qr;
pub use tridiag::{char_matrix, Tridiag};

use crate::che::RecurrenceCoeffs;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Result of a finite-series eigensolve.
#[derive(Clone, Debug)]
pub struct FiniteEigenvalues {
    /// all N+1 roots; real parts carry the spectrum when `real_distinct`
    pub values: Vec<Complex64>,
    /// every super/sub product was positive, so the matrix was symmetrized
    pub symmetrizable: bool,
    /// roots verified real and pairwise distinct
    pub real_distinct: bool,
}

impl FiniteEigenvalues {
    /// Real eigenvalues sorted ascending; errors when any root kept a
    /// genuine imaginary part.
    pub fn real_sorted(&self) -> Result<Vec<f64>> {
        let scale = self.values.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
        let mut out = Vec::with_capacity(self.values.len());
        for z in &self.values {
            if z.im.abs() > 1e-8 * scale {
                return Err(Error::Tolerance(format!(
                    "complex eigenvalue {z} in a finite-series spectrum"
                )));
            }
            out.push(z.re);
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }
}

/// Eigenvalues E of a terminating series whose recurrence has
/// beta_n(E) = beta_n(0) - E (unit negative eigenparameter coefficient)
/// and gamma_{N+1} = 0. `coeffs_at` supplies the recurrence at a given E.
///
/// The matrix eigenproblem is det(T(0) - E) = 0; when all super/sub
/// products are positive the spectrum is obtained from the symmetrized
/// matrix and asserted real and distinct, otherwise the general Hessenberg
/// QR fallback runs with no realness claim.
pub fn finite_eigenvalues<F>(coeffs_at: F, n: usize) -> Result<FiniteEigenvalues>
where
    F: Fn(f64) -> Result<RecurrenceCoeffs>,
{
    let c0 = coeffs_at(0.0)?;
    let c1 = coeffs_at(1.0)?;
    // affinity check: beta must move by exactly -E, alpha/gamma must not
    for probe in [0usize, 1, n.max(1)] {
        let shift = c1.beta(probe) - c0.beta(probe);
        if (shift + Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "beta_n(E) is not beta_n(0) - E (shift at n = {probe} was {shift})"
            )));
        }
        if (c1.alpha(probe) - c0.alpha(probe)).norm() > 1e-12
            || (c1.gamma(probe + 1) - c0.gamma(probe + 1)).norm() > 1e-12
        {
            return Err(Error::InvalidParameter(
                "alpha/gamma depend on the eigenparameter".into(),
            ));
        }
    }
    // termination prerequisite
    let g_next = c0.gamma(n + 1);
    let g_scale = (0..=n).map(|k| c0.alpha(k).norm()).fold(1.0, f64::max);
    if g_next.norm() > 1e-9 * g_scale {
        return Err(Error::InvalidParameter(format!(
            "gamma_{} = {g_next} does not terminate the series",
            n + 1
        )));
    }

    let t0 = char_matrix(&c0, n)?;
    let outcome = tridiag_eigenvalues(&t0);
    let symmetrizable = outcome.is_symmetric();
    let values = outcome.values();

    let scale = values.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let mut real_distinct = values.iter().all(|z| z.im.abs() <= 1e-8 * scale);
    if real_distinct {
        let mut re: Vec<f64> = values.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        real_distinct = re.windows(2).all(|w| (w[1] - w[0]).abs() > 1e-10 * scale);
    }
    if symmetrizable && !real_distinct {
        return Err(Error::Tolerance(
            "symmetrized matrix produced non-distinct spectrum".into(),
        ));
    }
    Ok(FiniteEigenvalues {
        values,
        symmetrizable,
        real_distinct,
    })
}
