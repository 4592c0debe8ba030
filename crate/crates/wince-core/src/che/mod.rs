//! Equation layer: parameter space of
//!
//! ```text
//! z (z - z0) U'' + (B1 + B2 z) U' + [B3 + q (z - z0)] U = 0,   q != 0,
//! ```
//!
//! the transformation group generated by T1, T2, T3, the eight Bessel-series
//! solution sets with their three-term recurrences, termination detection
//! and series evaluation.

mod evaluate;
mod recurrence;
mod sets;

pub use evaluate::{evaluate_solution, pow_branch, Branch, SeriesValue};
pub use recurrence::{coefficients, RecurrenceCoeffs, RecurrenceForm, Termination};
pub use sets::{SolutionSet, Violation};

use crate::error::{Error, Result};
use num_complex::Complex64;

/// The five-tuple (z0, B1, B2, B3, q) of equation parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheParams {
    pub z0: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
    pub q: Complex64,
}

impl CheParams {
    /// Builds a parameter set; q = 0 degenerates the equation into a
    /// hypergeometric one and is rejected.
    pub fn new(
        z0: Complex64,
        b1: Complex64,
        b2: Complex64,
        b3: Complex64,
        q: Complex64,
    ) -> Result<Self> {
        if q.norm_sqr() == 0.0 {
            return Err(Error::InvalidParameter(
                "q = 0 degenerates the equation (hypergeometric case)".into(),
            ));
        }
        Ok(CheParams { z0, b1, b2, b3, q })
    }

    /// Real-parameter convenience constructor.
    pub fn new_real(z0: f64, b1: f64, b2: f64, b3: f64, q: f64) -> Result<Self> {
        Self::new(
            Complex64::new(z0, 0.0),
            Complex64::new(b1, 0.0),
            Complex64::new(b2, 0.0),
            Complex64::new(b3, 0.0),
            Complex64::new(q, 0.0),
        )
    }

    /// B1/z0; fails at z0 = 0 (the double-confluent degeneration keeps only
    /// the sets whose formulas never divide by z0).
    pub fn b1_over_z0(&self) -> Result<Complex64> {
        if self.z0.norm_sqr() == 0.0 {
            return Err(Error::InvalidParameter("B1/z0 undefined at z0 = 0".into()));
        }
        Ok(self.b1 / self.z0)
    }

    /// B2 + B1/z0, the combination governing most validity restrictions.
    pub fn b2_plus_b1_over_z0(&self) -> Result<Complex64> {
        Ok(self.b2 + self.b1_over_z0()?)
    }
}

/// The three transformations that generate the eight solution sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformRule {
    T1,
    T2,
    T3,
}

/// Result of applying a transformation: new parameters plus a symbolic
/// description of the multiplicative prefactor and variable change.
#[derive(Clone, Copy, Debug)]
pub struct Transformed {
    pub params: CheParams,
    /// exponent of z in the prefactor
    pub z_exponent: Complex64,
    /// exponent of (z - z0) in the prefactor
    pub z_minus_z0_exponent: Complex64,
    /// true when the variable changes as z -> z0 - z (and q -> -q)
    pub reflects_variable: bool,
}

/// Applies T1, T2 or T3:
///
/// ```text
/// T1 U(z) = z^(1 + B1/z0)            U(C1, C2, C3; z0,  q; z)
/// T2 U(z) = (z - z0)^(1 - B2 - B1/z0) U(B1, D2, D3; z0,  q; z)
/// T3 U(z) =                           U(-B1 - B2 z0, B2, B3 - q z0; z0, -q; z0 - z)
/// ```
///
/// with C1 = -B1 - 2 z0, C2 = 2 + B2 + 2 B1/z0,
/// C3 = B3 + (1 + B1/z0)(B2 + B1/z0), D2 = 2 - B2 - 2 B1/z0,
/// D3 = B3 + (B1/z0)(B1/z0 + B2 - 1).
pub fn transform(p: &CheParams, rule: TransformRule) -> Result<Transformed> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match rule {
        TransformRule::T1 => {
            let r = p.b1_over_z0()?;
            let c1 = -p.b1 - 2.0 * p.z0;
            let c2 = 2.0 * one + p.b2 + 2.0 * r;
            let c3 = p.b3 + (one + r) * (p.b2 + r);
            Ok(Transformed {
                params: CheParams::new(p.z0, c1, c2, c3, p.q)?,
                z_exponent: one + r,
                z_minus_z0_exponent: zero,
                reflects_variable: false,
            })
        }
        TransformRule::T2 => {
            let r = p.b1_over_z0()?;
            let d2 = 2.0 * one - p.b2 - 2.0 * r;
            let d3 = p.b3 + r * (r + p.b2 - one);
            Ok(Transformed {
                params: CheParams::new(p.z0, p.b1, d2, d3, p.q)?,
                z_exponent: zero,
                z_minus_z0_exponent: one - p.b2 - r,
                reflects_variable: false,
            })
        }
        TransformRule::T3 => Ok(Transformed {
            params: CheParams::new(p.z0, -p.b1 - p.b2 * p.z0, p.b2, p.b3 - p.q * p.z0, -p.q)?,
            z_exponent: zero,
            z_minus_z0_exponent: zero,
            reflects_variable: true,
        }),
    }
}
