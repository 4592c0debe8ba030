//! Spectral solver for the Whittaker-Ince limit of the confluent Heun
//! equation,
//!
//! ```text
//! z (z - z0) U'' + (B1 + B2 z) U' + [B3 + q (z - z0)] U = 0,   q != 0,
//! ```
//!
//! built on one-sided expansions in series of Bessel functions. The crate
//! provides the eight solution sets generated by the equation's
//! transformation group, their three-term recurrences and characteristic
//! equations (continued fractions and tridiagonal determinants), and three
//! complete applications: a quasi-exactly-solvable inverted potential, the
//! angular equation of a point electric dipole, and the Mathieu equation.
//!
//! ```
//! use wince_core::inverted::InvPotProblem;
//!
//! // the l = 2 sector of the inverted potential has the closed-form
//! // energies (b^2 - 5)/4 +- sqrt(1 + b^2)
//! let spectrum = InvPotProblem::new(2.0, 2)?.qes_spectrum()?;
//! assert!((spectrum.energies[1] - (-0.25 + 5.0_f64.sqrt())).abs() < 1e-10);
//! # Ok::<(), wince_core::Error>(())
//! ```

#![allow(clippy::needless_range_loop)] // indexed loops mirror the matrix algebra
#![allow(clippy::excessive_precision)] // published constants kept verbatim

pub mod che;
pub mod convergence;
pub mod dipole;
pub mod error;
pub mod inverted;
pub mod mathieu;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
