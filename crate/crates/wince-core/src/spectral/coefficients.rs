//! Series coefficient solving at a fixed eigenvalue: forward recursion for
//! terminating series, backward ratio recursion (minimal solution) for
//! truncated infinite series. Normalisation is b_0 = 1 throughout; the
//! recurrences are homogeneous.

use crate::che::{RecurrenceCoeffs, RecurrenceForm};
use crate::error::{Error, Result};
use num_complex::Complex64;

const TINY: f64 = 1e-280;

/// Coefficients b_0..b_N of a terminating series by forward recursion,
/// together with the relative closure mismatch of the last row (which must
/// vanish when the eigenvalue is exact).
pub fn solve_finite(c: &RecurrenceCoeffs, n_stop: usize) -> Result<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let mut b = vec![one];
    if n_stop == 0 {
        let mut res = c.effective_beta0().norm();
        if c.form == RecurrenceForm::R2 {
            // the n = 1 row leaves (alpha_{-1} + gamma_1) b_0, which must
            // also vanish for a single-term series
            res = res.max(c.effective_gamma1().norm());
        }
        let scale = c.alpha(0).norm() + c.effective_beta0().norm() + 1.0;
        if res > 1e-8 * scale {
            return Err(Error::Tolerance(format!(
                "single-term series: closure residual {res:.3e}"
            )));
        }
        return Ok(b);
    }
    // row 0
    b.push(-c.effective_beta0() / c.alpha(0));
    // rows 1..N-1 produce b_2..b_N
    for n in 1..n_stop {
        let g = if n == 1 {
            c.effective_gamma1()
        } else {
            c.gamma(n)
        };
        let next = -(c.beta(n) * b[n] + g * b[n - 1]) / c.alpha(n);
        b.push(next);
    }
    // closure: row N with b_{N+1} = 0
    let g = if n_stop == 1 {
        c.effective_gamma1()
    } else {
        c.gamma(n_stop)
    };
    let res = c.beta(n_stop) * b[n_stop] + g * b[n_stop - 1];
    let scale = (c.beta(n_stop) * b[n_stop]).norm() + (g * b[n_stop - 1]).norm() + 1e-300;
    if res.norm() > 1e-8 * scale.max(1.0) {
        return Err(Error::Tolerance(format!(
            "finite series does not close: relative mismatch {:.3e}",
            res.norm() / scale
        )));
    }
    Ok(b)
}

/// Ratios s_n = b_n / b_{n-1} of the minimal solution, n = 1..=n_trunc,
/// from the backward recursion s_n = -g_n / (beta_n + alpha_n s_{n+1}).
pub fn minimal_ratios(c: &RecurrenceCoeffs, n_trunc: usize) -> Vec<Complex64> {
    debug_assert!(n_trunc >= 1, "a minimal solution needs at least one ratio");
    let mut s = vec![Complex64::new(0.0, 0.0); n_trunc + 1];
    // s[n_trunc+1] = 0 implicitly
    for n in (1..=n_trunc).rev() {
        let g = if n == 1 {
            c.effective_gamma1()
        } else {
            c.gamma(n)
        };
        let mut den = c.beta(n)
            + if n < n_trunc {
                c.alpha(n) * s[n + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
        if den.norm() < TINY {
            den = Complex64::new(TINY, 0.0);
        }
        s[n] = -g / den;
    }
    s.remove(0);
    s
}

/// Minimal-solution coefficients b_0..b_N (b_0 = 1) by backward recursion,
/// checking the n = 0 recurrence row as the closure condition. Entries too
/// small for f64 flush to zero.
pub fn solve_minimal(c: &RecurrenceCoeffs, n_trunc: usize) -> Result<Vec<Complex64>> {
    if n_trunc < 1 {
        return Err(Error::InvalidParameter(
            "minimal-solution truncation must be >= 1 (terminating series go through solve_finite)"
                .into(),
        ));
    }
    let ratios = minimal_ratios(c, n_trunc);
    let mut b = Vec::with_capacity(n_trunc + 1);
    let mut cur = Complex64::new(1.0, 0.0);
    b.push(cur);
    for s in &ratios {
        cur *= s;
        b.push(cur);
    }
    // closure at row 0: alpha_0 b_1 + beta_0^eff b_0 = 0
    let res = c.alpha(0) * b[1] + c.effective_beta0();
    let scale = (c.alpha(0) * b[1]).norm() + c.effective_beta0().norm();
    if res.norm() > 1e-8 * scale.max(1.0) {
        return Err(Error::Tolerance(format!(
            "minimal solution does not close at n = 0: relative mismatch {:.3e}",
            res.norm() / scale.max(1e-300)
        )));
    }
    Ok(b)
}
