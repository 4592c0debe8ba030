//! The eight solution sets U_i^(j): prefactor, Bessel order and argument
//! laws, and the per-set validity restrictions that keep all Bessel orders
//! independent and all recurrence denominators nonzero.

use super::CheParams;
use crate::error::{Error, Result};
use crate::specfun::BesselKind;
use num_complex::Complex64;
use std::fmt;

/// Selector (i, j) with i in 1..=8 (set index) and j the Bessel kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    index: u8,
    kind: BesselKind,
}

/// A failed validity restriction, with the offending value.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub set: u8,
    pub constraint: &'static str,
    pub value: Complex64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "set {} requires {}, got {}",
            self.set, self.constraint, self.value
        )
    }
}

/// True when x sits on the arithmetic ladder start, start+step, ... within
/// tolerance (Im must vanish as well).
fn on_ladder(x: Complex64, start: f64, step: f64) -> bool {
    if x.im.abs() > 1e-10 {
        return false;
    }
    let t = (x.re - start) / step;
    t >= -1e-9 && (t - t.round()).abs() < 1e-9 * (1.0 + t.abs())
}

impl SolutionSet {
    pub fn new(index: u8, kind: BesselKind) -> Result<Self> {
        if !(1..=8).contains(&index) {
            return Err(Error::InvalidParameter(format!(
                "solution set index must be 1..8, got {index}"
            )));
        }
        Ok(SolutionSet { index, kind })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn kind(&self) -> BesselKind {
        self.kind
    }

    /// First subgroup uses the variable z, second subgroup z - z0.
    pub fn second_subgroup(&self) -> bool {
        self.index >= 5
    }

    /// Constant part of the order law: ord(n) = 2n + order_offset.
    pub fn order_offset(&self, p: &CheParams) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.index {
            1 | 5 => p.b2 - one,
            2 | 6 => one + p.b2 + 2.0 * p.b1_over_z0()?,
            3 | 7 => 3.0 * one - p.b2,
            4 | 8 => one - p.b2 - 2.0 * p.b1_over_z0()?,
            _ => unreachable!(),
        })
    }

    /// Prefactor exponents (on z, on z - z0).
    pub fn prefactor_exponents(&self, p: &CheParams) -> Result<(Complex64, Complex64)> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        Ok(match self.index {
            1 | 2 => ((one - p.b2) * half, zero),
            3 | 4 => {
                let r = p.b1_over_z0()?;
                (r + p.b2 * half - half, one - p.b2 - r)
            }
            5 => (zero, (one - p.b2) * half),
            6 | 7 => {
                let r = p.b1_over_z0()?;
                (one + r, -half - r - p.b2 * half)
            }
            8 => ((one - p.b2) * half, zero),
            _ => unreachable!(),
        })
    }

    /// Bessel argument at the point z: 2 sqrt(q z) for the first subgroup,
    /// 2 sqrt(q (z - z0)) for the second; principal square root.
    pub fn argument(&self, p: &CheParams, z: Complex64) -> Complex64 {
        let w = if self.second_subgroup() { z - p.z0 } else { z };
        2.0 * (p.q * w).sqrt()
    }

    /// Per-set restriction keeping the expansion functions independent:
    ///
    /// ```text
    /// sets 1/5:  B2 not in {0, -1, -2, ...}
    /// sets 2/6:  B2/2 + B1/z0 not in {-1, -3/2, -2, ...}
    /// sets 3/7:  B2 not in {4, 5, 6, ...}
    /// sets 4/8:  B2/2 + B1/z0 not in {1, 3/2, 2, ...}
    /// ```
    pub fn validity(&self, p: &CheParams) -> std::result::Result<(), Violation> {
        match self.index {
            1 | 5 => {
                if on_ladder(p.b2, 0.0, -1.0) {
                    return Err(Violation {
                        set: self.index,
                        constraint: "B2 not in {0, -1, -2, ...}",
                        value: p.b2,
                    });
                }
            }
            2 | 6 => {
                let s = match p.b1_over_z0() {
                    Ok(r) => p.b2 * 0.5 + r,
                    Err(_) => {
                        return Err(Violation {
                            set: self.index,
                            constraint: "z0 != 0 (order law divides by z0)",
                            value: p.z0,
                        })
                    }
                };
                if on_ladder(s, -1.0, -0.5) {
                    return Err(Violation {
                        set: self.index,
                        constraint: "B2/2 + B1/z0 not in {-1, -3/2, -2, ...}",
                        value: s,
                    });
                }
            }
            3 | 7 => {
                if on_ladder(p.b2, 4.0, 1.0) {
                    return Err(Violation {
                        set: self.index,
                        constraint: "B2 not in {4, 5, 6, ...}",
                        value: p.b2,
                    });
                }
            }
            4 | 8 => {
                let s = match p.b1_over_z0() {
                    Ok(r) => p.b2 * 0.5 + r,
                    Err(_) => {
                        return Err(Violation {
                            set: self.index,
                            constraint: "z0 != 0 (order law divides by z0)",
                            value: p.z0,
                        })
                    }
                };
                if on_ladder(s, 1.0, 0.5) {
                    return Err(Violation {
                        set: self.index,
                        constraint: "B2/2 + B1/z0 not in {1, 3/2, 2, ...}",
                        value: s,
                    });
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_restrictions() {
        let set1 = SolutionSet::new(1, BesselKind::J).unwrap();
        let set3 = SolutionSet::new(3, BesselKind::J).unwrap();

        let bad = CheParams::new_real(1.0, -0.5, -1.0, 0.3, 1.0).unwrap();
        assert!(set1.validity(&bad).is_err());

        // inverted potential at l = 1: B2 = 1/2 passes
        let ok = CheParams::new_real(1.0, -0.5, 0.5, 0.3, -0.25).unwrap();
        assert!(set1.validity(&ok).is_ok());

        let bad3 = CheParams::new_real(1.0, -0.5, 5.0, 0.3, 1.0).unwrap();
        assert!(set3.validity(&bad3).is_err());
        assert!(set1.validity(&bad3).is_ok());
    }

    #[test]
    fn order_laws_match_pairs() {
        // order offsets agree between i and i+4
        let p = CheParams::new_real(1.3, -0.4, 0.8, 2.1, -1.7).unwrap();
        for i in 1..=4u8 {
            let a = SolutionSet::new(i, BesselKind::J).unwrap();
            let b = SolutionSet::new(i + 4, BesselKind::J).unwrap();
            assert!(
                (a.order_offset(&p).unwrap() - b.order_offset(&p).unwrap()).norm() < 1e-14,
                "pair ({i}, {})",
                i + 4
            );
        }
    }

    #[test]
    fn dipole_validity_pattern() {
        // m = 1 dipole parameters: sets 3/7 violate B2 != 4,5,6,...
        let p = CheParams::new_real(1.0, -2.0, 4.0, -0.5, -2.0).unwrap();
        for i in [1u8, 2, 5, 6] {
            assert!(
                SolutionSet::new(i, BesselKind::J)
                    .unwrap()
                    .validity(&p)
                    .is_ok(),
                "set {i} should pass"
            );
        }
        for i in [3u8, 7] {
            assert!(
                SolutionSet::new(i, BesselKind::J)
                    .unwrap()
                    .validity(&p)
                    .is_err(),
                "set {i} should fail"
            );
        }
    }
}
