//! Series evaluation: prefactor(z) * sum_n (-1)^n b_n Z_ord(n)(argument(z)).

use super::sets::SolutionSet;
use super::CheParams;
use crate::convergence;
use crate::error::{Error, Result};
use crate::specfun::bessel;
use num_complex::Complex64;

/// Branch choice for fractional powers of negative reals. Off the negative
/// real axis both choices coincide with the principal power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// arg = +pi on the negative real axis
    Principal,
    /// arg = -pi on the negative real axis
    Second,
}

/// Result of a series evaluation; `outside_domain` is set for j in
/// {Y, H1, H2} when z falls outside the classified convergence region.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub outside_domain: bool,
}

/// base^exp with an explicit branch decision on the negative real axis.
/// With `branch = None`, a fractional power of a negative real is an error.
pub fn pow_branch(base: Complex64, exp: Complex64, branch: Option<Branch>) -> Result<Complex64> {
    if base.norm_sqr() == 0.0 {
        if exp.norm_sqr() == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    let integer_exp = exp.im.abs() < 1e-14 && (exp.re - exp.re.round()).abs() < 1e-12;
    if base.im == 0.0 && base.re < 0.0 && !integer_exp {
        let theta = match branch {
            Some(Branch::Principal) => std::f64::consts::PI,
            Some(Branch::Second) => -std::f64::consts::PI,
            None => {
                return Err(Error::Branch(format!(
                    "({base})^({exp}) needs a branch choice on the negative real axis"
                )))
            }
        };
        let ln = Complex64::new((-base.re).ln(), theta);
        return Ok((ln * exp).exp());
    }
    if integer_exp && base.im == 0.0 {
        // keep real bases exactly real
        return Ok(Complex64::new(base.re.powi(exp.re.round() as i32), 0.0));
    }
    Ok(base.powc(exp))
}

/// Evaluates the solution set at z with coefficient sequence `b`
/// (terminating or truncated): prefactor(z) * sum (-1)^n b_n Z_ord(n)(x(z)).
pub fn evaluate_solution(
    set: SolutionSet,
    p: &CheParams,
    b: &[Complex64],
    z: Complex64,
    branch: Option<Branch>,
) -> Result<SeriesValue> {
    let (ez, ezz0) = set.prefactor_exponents(p)?;
    let pre = pow_branch(z, ez, branch)? * pow_branch(z - p.z0, ezz0, branch)?;

    let offset = set.order_offset(p)?;
    if offset.im.abs() > 1e-10 {
        return Err(Error::Domain(format!(
            "complex Bessel order {offset} not supported"
        )));
    }
    let x = set.argument(p, z);

    let mut sum = Complex64::new(0.0, 0.0);
    for (n, bn) in b.iter().enumerate() {
        let ord = 2.0 * n as f64 + offset.re;
        let zval = bessel(set.kind(), ord, x)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * bn * zval;
    }

    let outside_domain = convergence::domain(set, p)
        .map(|d| !d.contains(z, p))
        .unwrap_or(false);

    Ok(SeriesValue {
        value: pre * sum,
        outside_domain,
    })
}
