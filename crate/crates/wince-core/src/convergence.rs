//! Convergence diagnostics: minimal-solution tail ratios, per-set
//! convergence domains for the Y/H expansions, and the Raabe boundary rule.
//!
//! For the J-kind expansions the series converge for every finite z. For
//! j in {2, 3, 4} the first subgroup converges on |z| > |z0| and the second
//! on |z - z0| > |z0|; the 1/n term of the coefficient ratio decides the
//! boundary:
//!
//! ```text
//! |z| = |z0| included:       Re(B2 + B1/z0) < 1 for sets 1, 2,
//!                            Re(B2 + B1/z0) > 1 for sets 3, 4;
//! |z - z0| = |z0| included:  Re(B1/z0) > 1 for sets 5, 6,
//!                            Re(B1/z0) < 1 for sets 7, 8.
//! ```
//!
//! Equality cases are classified as undetermined (the Raabe criterion is
//! silent there).

use crate::che::{CheParams, SolutionSet};
use crate::error::Result;
use crate::specfun::BesselKind;
use num_complex::Complex64;

/// Which singular point the annulus is centred on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    Zero,
    Z0,
}

/// Whether the circle |z - c| = |z0| belongs to the convergence region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryRule {
    Included,
    Excluded,
    Undetermined,
}

/// Convergence region of one solution set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// J-kind series: every finite z (boundedness at z = infinity is a
    /// separate, conditional property).
    AllFiniteZ,
    /// Y/H-kind series: outside the circle of radius |z0| around `center`.
    Annulus {
        center: Center,
        boundary: BoundaryRule,
    },
}

impl Domain {
    /// Membership test with an exact-boundary convention matching the rule.
    pub fn contains(&self, z: Complex64, p: &CheParams) -> bool {
        match self {
            Domain::AllFiniteZ => z.re.is_finite() && z.im.is_finite(),
            Domain::Annulus { center, boundary } => {
                let d = match center {
                    Center::Zero => z.norm(),
                    Center::Z0 => (z - p.z0).norm(),
                };
                let r = p.z0.norm();
                let tol = 1e-12 * (1.0 + r);
                match boundary {
                    BoundaryRule::Included => d >= r - tol,
                    _ => d > r + tol,
                }
            }
        }
    }
}

/// Classifies the convergence domain of an infinite series starting at
/// n = 0. Terminating or reindexed series are the caller's business: their
/// domains are global or need the shifted parameters.
pub fn domain(set: SolutionSet, p: &CheParams) -> Result<Domain> {
    if set.kind() == BesselKind::J {
        return Ok(Domain::AllFiniteZ);
    }
    let (criterion, included_below) = if set.second_subgroup() {
        // sets 5,6: boundary needs Re(B1/z0) > 1; sets 7,8: < 1
        (p.b1_over_z0()?.re, matches!(set.index(), 7 | 8))
    } else {
        // sets 1,2: boundary needs Re(B2 + B1/z0) < 1; sets 3,4: > 1
        (p.b2_plus_b1_over_z0()?.re, matches!(set.index(), 1 | 2))
    };
    let boundary = if (criterion - 1.0).abs() < 1e-12 {
        BoundaryRule::Undetermined
    } else if (criterion < 1.0) == included_below {
        BoundaryRule::Included
    } else {
        BoundaryRule::Excluded
    };
    Ok(Domain::Annulus {
        center: if set.second_subgroup() {
            Center::Z0
        } else {
            Center::Zero
        },
        boundary,
    })
}

/// Minimal-solution tail ratio b_{n+1}/b_n predicted for large n:
/// -q z0/(4n^2) [1 + (B1/z0 - 3/2)/n] for z0 != 0, and -q B1/(4n^3) in the
/// z0 = 0 limit.
pub fn tail_ratio_prediction(p: &CheParams, n: usize) -> Complex64 {
    let nf = n as f64;
    if p.z0.norm_sqr() == 0.0 {
        return -p.q * p.b1 / (4.0 * nf * nf * nf);
    }
    let r = p.b1 / p.z0;
    -p.q * p.z0 / (4.0 * nf * nf) * (Complex64::new(1.0, 0.0) + (r - Complex64::new(1.5, 0.0)) / nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(i: u8, j: BesselKind) -> SolutionSet {
        SolutionSet::new(i, j).unwrap()
    }

    #[test]
    fn inverted_potential_domains() {
        // z0 = 1, B1 = -1/2, B2 = 3/2 - l with l = 1:
        // set 7 (Y kind): Re(B1/z0) = -1/2 < 1, boundary included, so the
        // domain cosh^2 u >= 1 covers every u; set 3: Re(B2 + B1/z0) = 1 - l < 1,
        // boundary excluded, domain sinh^2 u > 1 misses small |u|
        let p = CheParams::new_real(1.0, -0.5, 0.5, 0.3, -0.25).unwrap();
        let d7 = domain(set(7, BesselKind::Y), &p).unwrap();
        assert_eq!(
            d7,
            Domain::Annulus {
                center: Center::Z0,
                boundary: BoundaryRule::Included
            }
        );
        // z - z0 = -cosh^2 u: |z - z0| = 1 at u = 0 is inside for set 7
        assert!(d7.contains(Complex64::new(0.0, 0.0), &p));

        let d3 = domain(set(3, BesselKind::Y), &p).unwrap();
        assert_eq!(
            d3,
            Domain::Annulus {
                center: Center::Zero,
                boundary: BoundaryRule::Excluded
            }
        );
        // z = -sinh^2 u with sinh^2 u = 0.5 lies outside the region
        assert!(!d3.contains(Complex64::new(-0.5, 0.0), &p));
        assert!(d3.contains(Complex64::new(-1.5, 0.0), &p));
    }

    #[test]
    fn mathieu_w1_domain() {
        // z0 = 1, B1 = -1/2, B2 = 1: Re(B2 + B1/z0) = 1/2 < 1, so w1 with
        // j in {2,3,4} converges for |cos| >= 1 (boundary included)
        let p = CheParams::new_real(1.0, -0.5, 1.0, 0.3, 1.0).unwrap();
        let d = domain(set(1, BesselKind::H1), &p).unwrap();
        assert_eq!(
            d,
            Domain::Annulus {
                center: Center::Zero,
                boundary: BoundaryRule::Included
            }
        );
        assert!(d.contains(Complex64::new(1.0, 0.0), &p));
        assert!(!d.contains(Complex64::new(0.81, 0.0), &p));
    }

    #[test]
    fn j_kind_has_global_domain() {
        let p = CheParams::new_real(1.0, -0.5, 1.0, 0.3, 1.0).unwrap();
        let d = domain(set(1, BesselKind::J), &p).unwrap();
        assert_eq!(d, Domain::AllFiniteZ);
        assert!(d.contains(Complex64::new(1e3, -4.0), &p));
    }

    #[test]
    fn tail_ratio_formulas() {
        // z0 = 0 case: -q B1 / (4 n^3) at q = 3, B1 = -2, n = 100
        let p = CheParams::new_real(0.0, -2.0, 1.3, 0.4, 3.0).unwrap();
        let r = tail_ratio_prediction(&p, 100);
        assert!((r - Complex64::new(1.5e-6, 0.0)).norm() < 1e-18);
        // sign: ratio is negative real when q z0 > 0
        let p = CheParams::new_real(1.0, -0.5, 1.0, 0.4, 2.0).unwrap();
        let r = tail_ratio_prediction(&p, 50);
        assert!(r.re < 0.0 && r.im.abs() < 1e-15);
    }
}
