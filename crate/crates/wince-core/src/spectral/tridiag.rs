//! Real tridiagonal characteristic matrices built from a three-term
//! recurrence, mirroring the homogeneous system rows
//!
//! ```text
//! beta_0 b_0 + alpha_0 b_1                      = 0
//! gamma_n b_{n-1} + beta_n b_n + alpha_n b_{n+1} = 0
//! ```
//!
//! with the first rows adjusted for the R2/R3 forms (alpha_{-1} folded into
//! gamma_1 or beta_0).

use crate::che::{RecurrenceCoeffs, RecurrenceForm};
use crate::error::{Error, Result};

/// Tridiagonal matrix: `diag` of length n, `sup`/`sub` of length n-1
/// (`sup[i]` at (i, i+1), `sub[i]` at (i+1, i)).
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiag {
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub sub: Vec<f64>,
}

impl Tridiag {
    pub fn new(diag: Vec<f64>, sup: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        if sup.len() + 1 != diag.len() || sub.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len().saturating_sub(1),
                found: sup.len().max(sub.len()),
            });
        }
        Ok(Tridiag { diag, sup, sub })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Determinant by the stable three-term recursion
    /// D_k = d_k D_{k-1} - sup_{k-1} sub_{k-1} D_{k-2}, carried as
    /// mantissa * 2^exp to dodge overflow.
    pub fn det_scaled(&self) -> (f64, i64) {
        let n = self.dim();
        let mut d_prev = 1.0_f64; // D_{-1}
        let mut d_curr = self.diag[0];
        let mut exp: i64 = 0;
        for k in 1..n {
            let d_next = self.diag[k] * d_curr - self.sup[k - 1] * self.sub[k - 1] * d_prev;
            d_prev = d_curr;
            d_curr = d_next;
            let m = d_curr.abs().max(d_prev.abs());
            if m > 1e200 {
                d_curr *= 1e-200;
                d_prev *= 1e-200;
                exp += 665; // ~ log2(1e200)
            } else if m != 0.0 && m < 1e-200 {
                d_curr *= 1e200;
                d_prev *= 1e200;
                exp -= 665;
            }
        }
        (d_curr, exp)
    }

    /// Plain determinant; may overflow for large dimensions.
    pub fn det(&self) -> f64 {
        let (m, e) = self.det_scaled();
        m * 2.0_f64.powi(e.clamp(-1000, 1000) as i32)
    }
}

/// Builds the (n+1) x (n+1) characteristic matrix of the recurrence,
/// with the R2/R3 first-row modifications.
pub fn char_matrix(c: &RecurrenceCoeffs, n: usize) -> Result<Tridiag> {
    let dim = n + 1;
    let mut diag = Vec::with_capacity(dim);
    let mut sup = Vec::with_capacity(dim.saturating_sub(1));
    let mut sub = Vec::with_capacity(dim.saturating_sub(1));

    for k in 0..dim {
        let beta = if k == 0 {
            to_real(c.effective_beta0())?
        } else {
            to_real(c.beta(k))?
        };
        diag.push(beta);
        if k + 1 < dim {
            sup.push(to_real(c.alpha(k))?);
        }
        if k >= 1 {
            let gamma = if k == 1 {
                to_real(c.effective_gamma1())?
            } else {
                to_real(c.gamma(k))?
            };
            sub.push(gamma);
        }
    }
    debug_assert!(matches!(
        c.form,
        RecurrenceForm::R1 | RecurrenceForm::R2 | RecurrenceForm::R3
    ));
    Tridiag::new(diag, sup, sub)
}

fn to_real(v: num_complex::Complex64) -> Result<f64> {
    if v.im.abs() > 1e-10 * (1.0 + v.norm()) {
        return Err(Error::Domain(format!(
            "expected a real coefficient, got {v}"
        )));
    }
    Ok(v.re)
}
