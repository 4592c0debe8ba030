//! Three-term recurrence coefficients (alpha_n, beta_n, gamma_n) for the
//! eight solution sets, kept in factored form
//!
//! ```text
//! alpha_n, gamma_n = scale * prod_i (s_i n + t_i) / prod_j (u_j n + v_j),
//! beta_n = c + 4 (n + g1)(n + g2) + c' / ((n + h1)(n + h2)),
//! ```
//!
//! so that coincident numerator/denominator factors cancel algebraically.
//! Those cancellations are what make the degenerate recurrence forms finite:
//! when the Bessel order of the n = 0 term collides with a reflected order,
//! the n = 1 (or n = 0) row picks up an extra alpha_{-1} contribution, and
//! alpha_{-1} is exactly the cancelled formula evaluated at n = -1.
//!
//! The recurrence and its characteristic equation take one of three shapes:
//!
//! ```text
//! R1:  alpha_0 b_1 + beta_0 b_0 = 0, ...           beta_0 = a0 g1/(b1-) a1 g2/(b2-) ...
//! R2:  rows as R1 but the n = 1 row carries [alpha_{-1} + gamma_1] b_0
//! R3:  the n = 0 row carries [beta_0 + alpha_{-1}] b_0
//! ```

use super::sets::SolutionSet;
use super::CheParams;
use crate::error::{Error, Result};
use num_complex::Complex64;

const TOL: f64 = 1e-12;

fn ceq(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL * (1.0 + a.norm() + b.norm())
}

/// Linear form s n + t.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LinFactor {
    pub slope: Complex64,
    pub offset: Complex64,
}

impl LinFactor {
    fn new(slope: Complex64, offset: Complex64) -> Self {
        LinFactor { slope, offset }
    }

    fn eval(&self, n: f64) -> Complex64 {
        self.slope * n + self.offset
    }

    /// Proportionality check: s1 t2 == s2 t1 with neither factor constant.
    fn proportional_to(&self, other: &LinFactor) -> Option<Complex64> {
        if self.slope.norm() == 0.0 || other.slope.norm() == 0.0 {
            return None;
        }
        let cross = self.slope * other.offset - other.slope * self.offset;
        let scale = self.slope.norm() * (1.0 + other.offset.norm())
            + other.slope.norm() * (1.0 + self.offset.norm());
        if cross.norm() <= TOL * scale {
            Some(self.slope / other.slope)
        } else {
            None
        }
    }

    /// Smallest integer root n >= lo, if the factor vanishes there.
    fn integer_root_at_least(&self, lo: i64, hi: i64) -> Option<i64> {
        if self.slope.norm() == 0.0 {
            return None;
        }
        let root = -self.offset / self.slope;
        if root.im.abs() > 1e-9 {
            return None;
        }
        let r = root.re.round();
        if (root.re - r).abs() > 1e-9 * (1.0 + r.abs()) {
            return None;
        }
        let r = r as i64;
        if r >= lo && r <= hi {
            Some(r)
        } else {
            None
        }
    }
}

/// scale * prod(num) / prod(den)
#[derive(Clone, Debug)]
pub(crate) struct FactoredCoeff {
    pub scale: Complex64,
    pub num: Vec<LinFactor>,
    pub den: Vec<LinFactor>,
}

impl FactoredCoeff {
    fn new(scale: Complex64, num: Vec<LinFactor>, den: Vec<LinFactor>) -> Self {
        let mut f = FactoredCoeff { scale, num, den };
        f.cancel();
        f
    }

    /// Removes numerator/denominator pairs that are the same linear form.
    fn cancel(&mut self) {
        let mut i = 0;
        while i < self.num.len() {
            let mut cancelled = false;
            for j in 0..self.den.len() {
                if let Some(ratio) = self.num[i].proportional_to(&self.den[j]) {
                    self.scale *= ratio;
                    self.num.remove(i);
                    self.den.remove(j);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled {
                i += 1;
            }
        }
    }

    fn eval(&self, n: f64) -> Complex64 {
        let mut v = self.scale;
        for f in &self.num {
            v *= f.eval(n);
        }
        for f in &self.den {
            v /= f.eval(n);
        }
        v
    }

    /// First integer n in [lo, hi] at which the (cancelled) numerator
    /// vanishes.
    fn first_zero(&self, lo: i64, hi: i64) -> Option<i64> {
        if self.scale.norm() == 0.0 {
            return Some(lo);
        }
        self.num
            .iter()
            .filter_map(|f| f.integer_root_at_least(lo, hi))
            .min()
    }

    /// Integer n in [lo, hi] hitting a denominator root, i.e. a pole.
    fn first_pole(&self, lo: i64, hi: i64) -> Option<i64> {
        self.den
            .iter()
            .filter_map(|f| f.integer_root_at_least(lo, hi))
            .min()
    }

    /// Shift n -> n + offset.
    fn shifted(&self, offset: f64) -> FactoredCoeff {
        let shift = |f: &LinFactor| LinFactor::new(f.slope, f.offset + f.slope * offset);
        FactoredCoeff {
            scale: self.scale,
            num: self.num.iter().map(shift).collect(),
            den: self.den.iter().map(shift).collect(),
        }
    }
}

/// c + 4 (n + g1)(n + g2) + c' / ((n + h1)(n + h2))
#[derive(Clone, Debug)]
pub(crate) struct BetaCoeff {
    pub constant: Complex64,
    pub quad: [LinFactor; 2],
    pub corr_num: Complex64,
    pub corr_den: [LinFactor; 2],
}

impl BetaCoeff {
    fn eval(&self, n: f64) -> Complex64 {
        let mut v = self.constant + 4.0 * self.quad[0].eval(n) * self.quad[1].eval(n);
        if self.corr_num.norm() != 0.0 {
            v += self.corr_num / (self.corr_den[0].eval(n) * self.corr_den[1].eval(n));
        }
        v
    }

    fn first_pole(&self, lo: i64, hi: i64) -> Option<i64> {
        if self.corr_num.norm() == 0.0 {
            return None;
        }
        self.corr_den
            .iter()
            .filter_map(|f| f.integer_root_at_least(lo, hi))
            .min()
    }

    fn shifted(&self, offset: f64) -> BetaCoeff {
        let shift = |f: &LinFactor| LinFactor::new(f.slope, f.offset + f.slope * offset);
        BetaCoeff {
            constant: self.constant,
            quad: [shift(&self.quad[0]), shift(&self.quad[1])],
            corr_num: self.corr_num,
            corr_den: [shift(&self.corr_den[0]), shift(&self.corr_den[1])],
        }
    }
}

/// Which of the three recurrence/characteristic shapes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceForm {
    R1,
    R2,
    R3,
}

/// Coefficient evaluators for one solution set at fixed equation parameters.
#[derive(Clone, Debug)]
pub struct RecurrenceCoeffs {
    pub form: RecurrenceForm,
    pub(crate) alpha: FactoredCoeff,
    pub(crate) beta: BetaCoeff,
    pub(crate) gamma: FactoredCoeff,
    /// present only for the R2/R3 forms
    pub alpha_minus1: Option<Complex64>,
}

impl RecurrenceCoeffs {
    pub fn alpha(&self, n: usize) -> Complex64 {
        self.alpha.eval(n as f64)
    }

    pub fn beta(&self, n: usize) -> Complex64 {
        self.beta.eval(n as f64)
    }

    pub fn gamma(&self, n: usize) -> Complex64 {
        self.gamma.eval(n as f64)
    }

    /// gamma_1 replacement in the n = 1 row: alpha_{-1} + gamma_1 for R2,
    /// plain gamma_1 otherwise.
    pub fn effective_gamma1(&self) -> Complex64 {
        match self.form {
            RecurrenceForm::R2 => self.alpha_minus1.unwrap() + self.gamma(1),
            _ => self.gamma(1),
        }
    }

    /// beta_0 replacement in the n = 0 row: beta_0 + alpha_{-1} for R3.
    pub fn effective_beta0(&self) -> Complex64 {
        match self.form {
            RecurrenceForm::R3 => self.beta(0) + self.alpha_minus1.unwrap(),
            _ => self.beta(0),
        }
    }

    /// All-real view of (alpha_n, beta_n, gamma_n); errors when any
    /// coefficient carries a genuine imaginary part.
    pub fn real_parts(&self, n: usize) -> Result<(f64, f64, f64)> {
        let (a, b, g) = (self.alpha(n), self.beta(n), self.gamma(n));
        let scale = a.norm() + b.norm() + g.norm() + 1.0;
        if a.im.abs() + b.im.abs() + g.im.abs() > 1e-10 * scale {
            return Err(Error::Domain("recurrence coefficients are not real".into()));
        }
        Ok((a.re, b.re, g.re))
    }

    /// Scans n in [0, nmax] for termination on the right (gamma_{N+1} = 0,
    /// series n = 0..N) and truncation on the left (alpha_{N0} = 0, series
    /// begins at N0 + 1).
    pub fn termination(&self, nmax: usize) -> Termination {
        let hi = nmax as i64;
        let mut right_stop = self.gamma.first_zero(1, hi).map(|n| (n - 1) as usize);
        // under R2 a single-term series additionally needs alpha_{-1} + gamma_1 = 0
        if right_stop == Some(0) && self.form == RecurrenceForm::R2 {
            let eff = self.effective_gamma1();
            let scale = self.alpha_minus1.unwrap().norm() + self.gamma(1).norm();
            if eff.norm() > TOL * (1.0 + scale) {
                // gamma_1 vanishes but the folded term does not: no
                // single-term solution; look for a later termination
                right_stop = self.gamma.first_zero(2, hi).map(|n| (n - 1) as usize);
            }
        }
        let left_start = self.alpha.first_zero(0, hi).map(|n| (n + 1) as usize);
        Termination {
            right_stop,
            left_start,
        }
    }

    /// Multiplies every recurrence row by a constant. Solutions and
    /// characteristic roots are unchanged; drivers use this to normalise
    /// the eigenparameter coefficient inside beta_n to -1.
    pub fn row_scaled(&self, s: Complex64) -> RecurrenceCoeffs {
        let mut out = self.clone();
        out.alpha.scale *= s;
        out.gamma.scale *= s;
        out.beta.constant *= s;
        out.beta.quad[0].slope *= s;
        out.beta.quad[0].offset *= s;
        out.beta.corr_num *= s;
        out.alpha_minus1 = out.alpha_minus1.map(|a| a * s);
        out
    }

    /// Relabels the series to start at zero after a left truncation at
    /// `offset` (the recurrence rows shift by the same amount). The result
    /// is a plain R1 recurrence.
    pub fn reindexed(&self, offset: usize) -> RecurrenceCoeffs {
        let s = offset as f64;
        RecurrenceCoeffs {
            form: RecurrenceForm::R1,
            alpha: self.alpha.shifted(s),
            beta: self.beta.shifted(s),
            gamma: self.gamma.shifted(s),
            alpha_minus1: None,
        }
    }
}

/// Termination report: `right_stop = N` means a finite series n = 0..N;
/// `left_start = N0 + 1` means the series only begins there and must be
/// relabelled via [`RecurrenceCoeffs::reindexed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Termination {
    pub right_stop: Option<usize>,
    pub left_start: Option<usize>,
}

fn lf(slope: f64, offset: Complex64) -> LinFactor {
    LinFactor::new(Complex64::new(slope, 0.0), offset)
}

fn lfz(slope: Complex64, offset: Complex64) -> LinFactor {
    LinFactor::new(slope, offset)
}

/// Builds the (alpha, beta, gamma) evaluators for `set` at parameters `p`.
///
/// The closed forms for sets 1 and 5 (and, with z0 merged into the factors,
/// their z0 = 0 limits) are:
///
/// ```text
/// alpha_n^(1) = q (n+1)(z0 n - B1) / [(n + B2/2)(n + B2/2 + 1/2)]
/// beta_n^(1)  = 4B3 - 2q z0 + 4n(n + B2 - 1)
///               - 2q (B2/2 - 1)(z0 B2/2 + B1) / [(n + B2/2 - 1)(n + B2/2)]
/// gamma_n^(1) = q (n + B2 - 2)(z0(n + B2 - 1) + B1)
///               / [(n + B2/2 - 3/2)(n + B2/2 - 1)]
/// ```
///
/// and the remaining sets follow the same template with shifted factors.
pub fn coefficients(set: SolutionSet, p: &CheParams) -> Result<RecurrenceCoeffs> {
    if let Err(v) = set.validity(p) {
        return Err(Error::Validity(v.to_string()));
    }
    let one = Complex64::new(1.0, 0.0);
    let z0 = p.z0;
    let b1 = p.b1;
    let b2 = p.b2;
    let q = p.q;
    let h = b2 * 0.5;
    let base = 4.0 * p.b3 - 2.0 * q * z0;
    // the beta correction constant -2 q (B2/2 - 1)(z0 B2/2 + B1) is shared
    // by sets 1/5 and 3/7; sets 2/6 and 4/8 carry the same product written
    // through s = B2/2 + B1/z0
    let corr_merged = -2.0 * q * (h - one) * (z0 * h + b1);

    let needs_ratio = matches!(set.index(), 2 | 4 | 6 | 8);
    let r = if needs_ratio {
        p.b1_over_z0()?
    } else {
        Complex64::new(0.0, 0.0)
    };
    let s = h + r;

    let (alpha, beta, gamma, form) = match set.index() {
        1 | 5 => {
            let first = set.index() == 1;
            let alpha = if first {
                FactoredCoeff::new(
                    q,
                    vec![lf(1.0, one), lfz(z0, -b1)],
                    vec![lf(1.0, h), lf(1.0, h + 0.5)],
                )
            } else {
                FactoredCoeff::new(
                    -q,
                    vec![lf(1.0, one), lfz(z0, z0 * b2 + b1)],
                    vec![lf(1.0, h), lf(1.0, h + 0.5)],
                )
            };
            let gamma = if first {
                FactoredCoeff::new(
                    q,
                    vec![lf(1.0, b2 - 2.0 * one), lfz(z0, z0 * (b2 - one) + b1)],
                    vec![lf(1.0, h - 1.5 * one), lf(1.0, h - one)],
                )
            } else {
                FactoredCoeff::new(
                    -q,
                    vec![lf(1.0, b2 - 2.0 * one), lfz(z0, -z0 - b1)],
                    vec![lf(1.0, h - 1.5 * one), lf(1.0, h - one)],
                )
            };
            let beta = BetaCoeff {
                constant: base,
                quad: [lf(1.0, Complex64::new(0.0, 0.0)), lf(1.0, b2 - one)],
                corr_num: corr_merged,
                corr_den: [lf(1.0, h - one), lf(1.0, h)],
            };
            let form = if ceq(b2, one) {
                RecurrenceForm::R2
            } else if ceq(b2, 2.0 * one) {
                RecurrenceForm::R3
            } else {
                RecurrenceForm::R1
            };
            (alpha, beta, gamma, form)
        }
        2 | 6 => {
            let first = set.index() == 2;
            let alpha = if first {
                FactoredCoeff::new(
                    q * z0,
                    vec![lf(1.0, one), lf(1.0, 2.0 * one + r)],
                    vec![lf(1.0, one + s), lf(1.0, 1.5 * one + s)],
                )
            } else {
                // derived as set 5 under T1: the denominators follow the
                // order law (n + (c+1)/2)(n + (c+2)/2) with c = 1 + B2 + 2 B1/z0
                FactoredCoeff::new(
                    -q * z0,
                    vec![lf(1.0, one), lf(1.0, b2 + r)],
                    vec![lf(1.0, one + s), lf(1.0, 1.5 * one + s)],
                )
            };
            let gamma = if first {
                FactoredCoeff::new(
                    q * z0,
                    vec![lf(1.0, b2 + r - one), lf(1.0, b2 + 2.0 * r)],
                    vec![lf(1.0, s - 0.5 * one), lf(1.0, s)],
                )
            } else {
                FactoredCoeff::new(
                    -q * z0,
                    vec![lf(1.0, b2 + 2.0 * r), lf(1.0, one + r)],
                    vec![lf(1.0, s - 0.5 * one), lf(1.0, s)],
                )
            };
            let beta = BetaCoeff {
                constant: base,
                quad: [lf(1.0, one + r), lf(1.0, b2 + r)],
                corr_num: corr_merged,
                corr_den: [lf(1.0, s), lf(1.0, s + one)],
            };
            let form = if ceq(s, -0.5 * one) {
                RecurrenceForm::R2
            } else if s.norm() <= TOL {
                RecurrenceForm::R3
            } else {
                RecurrenceForm::R1
            };
            (alpha, beta, gamma, form)
        }
        3 | 7 => {
            let first = set.index() == 3;
            let alpha = if first {
                FactoredCoeff::new(
                    q,
                    vec![lf(1.0, one), lfz(z0, 2.0 * z0 + b1)],
                    vec![lf(1.0, 2.0 * one - h), lf(1.0, 2.5 * one - h)],
                )
            } else {
                FactoredCoeff::new(
                    -q,
                    vec![lf(1.0, one), lfz(z0, z0 * (2.0 * one - b2) - b1)],
                    vec![lf(1.0, 2.0 * one - h), lf(1.0, 2.5 * one - h)],
                )
            };
            let gamma = if first {
                FactoredCoeff::new(
                    q,
                    vec![lf(1.0, 2.0 * one - b2), lfz(z0, z0 * (one - b2) - b1)],
                    vec![lf(1.0, 0.5 * one - h), lf(1.0, one - h)],
                )
            } else {
                FactoredCoeff::new(
                    -q,
                    vec![lf(1.0, 2.0 * one - b2), lfz(z0, z0 + b1)],
                    vec![lf(1.0, 0.5 * one - h), lf(1.0, one - h)],
                )
            };
            let beta = BetaCoeff {
                constant: base,
                quad: [lf(1.0, one), lf(1.0, 2.0 * one - b2)],
                corr_num: corr_merged,
                corr_den: [lf(1.0, one - h), lf(1.0, 2.0 * one - h)],
            };
            let form = if ceq(b2, 3.0 * one) {
                RecurrenceForm::R2
            } else if ceq(b2, 2.0 * one) {
                RecurrenceForm::R3
            } else {
                RecurrenceForm::R1
            };
            (alpha, beta, gamma, form)
        }
        4 | 8 => {
            let first = set.index() == 4;
            let alpha = if first {
                FactoredCoeff::new(
                    q * z0,
                    vec![lf(1.0, one), lf(1.0, -r)],
                    vec![lf(1.0, one - s), lf(1.0, 1.5 * one - s)],
                )
            } else {
                FactoredCoeff::new(
                    -q * z0,
                    vec![lf(1.0, one), lf(1.0, 2.0 * one - b2 - r)],
                    vec![lf(1.0, one - s), lf(1.0, 1.5 * one - s)],
                )
            };
            let gamma = if first {
                FactoredCoeff::new(
                    q * z0,
                    vec![lf(1.0, one - b2 - r), lf(1.0, -b2 - 2.0 * r)],
                    vec![lf(1.0, -0.5 * one - s), lf(1.0, -s)],
                )
            } else {
                FactoredCoeff::new(
                    -q * z0,
                    vec![lf(1.0, -one - r), lf(1.0, -b2 - 2.0 * r)],
                    vec![lf(1.0, -0.5 * one - s), lf(1.0, -s)],
                )
            };
            let beta = BetaCoeff {
                constant: base,
                quad: [lf(1.0, -r), lf(1.0, one - b2 - r)],
                corr_num: corr_merged,
                corr_den: [lf(1.0, -s), lf(1.0, one - s)],
            };
            let form = if ceq(s, 0.5 * one) {
                RecurrenceForm::R2
            } else if s.norm() <= TOL {
                RecurrenceForm::R3
            } else {
                RecurrenceForm::R1
            };
            (alpha, beta, gamma, form)
        }
        _ => unreachable!(),
    };

    // validity guarantees pole-free coefficients on the indices the
    // recurrence actually uses; assert it
    let lo_alpha = if form == RecurrenceForm::R1 { 0 } else { -1 };
    if let Some(n) = alpha.first_pole(lo_alpha, 100_000) {
        return Err(Error::Validity(format!(
            "alpha has a pole at n = {n} for set {}",
            set.index()
        )));
    }
    if let Some(n) = gamma.first_pole(1, 100_000) {
        return Err(Error::Validity(format!(
            "gamma has a pole at n = {n} for set {}",
            set.index()
        )));
    }
    if let Some(n) = beta.first_pole(0, 100_000) {
        return Err(Error::Validity(format!(
            "beta has a pole at n = {n} for set {}",
            set.index()
        )));
    }

    let alpha_minus1 = if form == RecurrenceForm::R1 {
        None
    } else {
        Some(alpha.eval(-1.0))
    };

    Ok(RecurrenceCoeffs {
        form,
        alpha,
        beta,
        gamma,
        alpha_minus1,
    })
}
