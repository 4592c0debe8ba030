//! Bessel functions of the four kinds for real order and complex argument.
//!
//! Z^(1) = J, Z^(2) = Y, Z^(3) = H^(1), Z^(4) = H^(2), tied together by
//!
//! ```text
//! J  = (H1 + H2)/2,      Y = (H1 - H2)/(2i),
//! H1 = J + iY,           H2 = J - iY.
//! ```
//!
//! Evaluation strategy by region:
//! - |z| <= 35: ascending power series accumulated in double-double, which
//!   absorbs the e^|z| cancellation of the alternating terms;
//! - real z beyond the series radius (and Y for real z >= 2): Steed's
//!   method, CF1 for J'/J plus the complex continued fraction CF2 for
//!   (J' - iY')/(J - iY), then recurrence back to the requested order;
//! - large |z| with small order: Hankel asymptotic sums, used only when the
//!   truncation error estimate clears 1e-12;
//! - integer order at small argument: the log + digamma series for Y.
//!
//! Every path reports a precision-loss flag once the cancellation it had to
//! absorb may have eaten into the requested accuracy.

use super::dd::{Cdd, Dd};
use super::gamma::{digamma_int, gamma, ln_gamma};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// The four Bessel kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
    H1,
    H2,
}

/// Value plus a flag set when internal cancellation may have cost more
/// digits than the accumulator could spare.
#[derive(Clone, Copy, Debug)]
pub struct BesselValue {
    pub value: Complex64,
    pub precision_loss: bool,
}

/// Cancellation ratio beyond which results are flagged. The double-double
/// accumulator carries ~32 digits, so a ratio of 1e18 still leaves ~14.
const LOSS_RATIO: f64 = 1e18;

/// Radius inside which the power series is the preferred path.
const SERIES_RADIUS: f64 = 35.0;

const FPMIN: f64 = 1e-300;

/// cos(pi x), exact at half-integers.
pub fn cospi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    sign * if r <= 0.25 {
        (std::f64::consts::PI * r).cos()
    } else if r < 0.75 {
        (std::f64::consts::PI * (0.5 - r)).sin()
    } else {
        -(std::f64::consts::PI * (1.0 - r)).cos()
    }
}

/// sin(pi x), exact at integers.
pub fn sinpi(x: f64) -> f64 {
    cospi(x - 0.5)
}

fn is_integer(x: f64) -> bool {
    x == x.floor()
}

fn factorial(n: usize) -> f64 {
    let mut f = 1.0;
    for k in 2..=n {
        f *= k as f64;
    }
    f
}

/// Ascending series for J_nu(z), nu not a negative integer.
/// Returns (value, max-term/|sum| cancellation ratio).
fn j_series(nu: f64, z: Complex64) -> (Complex64, f64) {
    if z.norm_sqr() == 0.0 {
        return if nu == 0.0 {
            (Complex64::new(1.0, 0.0), 1.0)
        } else if nu > 0.0 {
            (Complex64::new(0.0, 0.0), 1.0)
        } else {
            (Complex64::new(f64::INFINITY, 0.0), 1.0)
        };
    }
    let half = z * 0.5;
    let w = -(half * half);
    let w_dd = Cdd::new(w.re, w.im);

    let mut term = Cdd::new(1.0, 0.0);
    let mut sum = term;
    let mut max_mag = 1.0_f64;
    let mut below = 0;
    for k in 1..600 {
        let kf = k as f64;
        term = term.mul(w_dd).div_f64(kf).div_dd(Dd::from_sum(kf, nu));
        sum = sum.add(term);
        max_mag = max_mag.max(term.mag());
        // stop after three consecutive sub-threshold terms
        if term.mag() < 1e-17 * sum.mag().max(1e-300) {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
    }
    let s = Complex64::new(sum.re.to_f64(), sum.im.to_f64());

    // prefactor (z/2)^nu / Gamma(nu+1), in log form against over/underflow
    let g_sign = gamma(nu + 1.0).signum();
    let pref = if z.im == 0.0 && z.re > 0.0 {
        let ln = nu * (z.re * 0.5).ln() - ln_gamma(nu + 1.0);
        Complex64::new(g_sign * ln.exp(), 0.0)
    } else {
        let ln = half.ln() * nu - ln_gamma(nu + 1.0);
        g_sign * ln.exp()
    };
    let ratio = max_mag / s.norm().max(1e-300);
    (pref * s, ratio)
}

/// Y_m(z) for integer m >= 0 by the logarithmic series; meant for small |z|.
fn y_integer_series(m: u32, z: Complex64) -> (Complex64, f64) {
    let m_us = m as usize;
    let half = z * 0.5;
    let w = -(half * half);
    let w_dd = Cdd::new(w.re, w.im);
    let inv_pi = 1.0 / std::f64::consts::PI;

    // -(1/pi) sum_{k<m} (m-k-1)!/k! (z/2)^{2k-m}
    let mut finite = Complex64::new(0.0, 0.0);
    if m > 0 {
        let mut pow = half.powi(-(m as i32));
        for k in 0..m_us {
            finite += (factorial(m_us - k - 1) / factorial(k)) * pow;
            pow *= half * half;
        }
        finite *= -inv_pi;
    }

    // (2/pi) ln(z/2) J_m(z)
    let (jm, j_ratio) = j_series(m as f64, z);
    let logpart = 2.0 * inv_pi * half.ln() * jm;

    // -(1/pi) (z/2)^m sum_k [psi(k+1)+psi(m+k+1)] w^k / (k! (m+k)!)
    let mut term = Cdd::new(1.0, 0.0);
    let mut psi1 = digamma_int(1);
    let mut psi2 = digamma_int(m_us + 1);
    let mut sum = Cdd {
        re: Dd::from_f64(psi1 + psi2),
        im: Dd::from_f64(0.0),
    };
    let mut max_mag = sum.mag();
    let mut below = 0;
    for k in 1..500 {
        let kf = k as f64;
        psi1 += 1.0 / kf;
        psi2 += 1.0 / (m as f64 + kf);
        term = term
            .mul(w_dd)
            .div_f64(kf)
            .div_dd(Dd::from_sum(kf, m as f64));
        let contrib = Cdd {
            re: term.re.mul(Dd::from_f64(psi1 + psi2)),
            im: term.im.mul(Dd::from_f64(psi1 + psi2)),
        };
        sum = sum.add(contrib);
        max_mag = max_mag.max(contrib.mag());
        if contrib.mag() < 1e-17 * sum.mag().max(1e-300) {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
    }
    let s = Complex64::new(sum.re.to_f64(), sum.im.to_f64());
    let series = -inv_pi * half.powi(m as i32) / factorial(m_us) * s;

    let ratio = (max_mag / s.norm().max(1e-300)).max(j_ratio);
    (logpart + finite + series, ratio)
}

/// Hankel asymptotic sums P, Q at order nu. Returns (P, Q, est_rel_error).
fn hankel_pq(nu: f64, z: Complex64) -> (Complex64, Complex64, f64) {
    let mu = 4.0 * nu * nu;
    let z8 = 8.0 * z;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut best = f64::INFINITY;
    for k in 0..60 {
        let odd = (2 * k + 1) as f64;
        term = term * Complex64::new(mu - odd * odd, 0.0) / (z8 * (k + 1) as f64);
        let mag = term.norm();
        if mag > best {
            break; // asymptotic series exhausted
        }
        best = mag;
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            q += sign * term;
        } else {
            let sign = if ((k + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            p += sign * term;
        }
        if mag < 1e-17 {
            break;
        }
    }
    (p, q, best)
}

/// J and Y by the Hankel asymptotics when the truncation error clears 1e-12.
fn jy_asymptotic(nu: f64, z: Complex64) -> Option<(Complex64, Complex64)> {
    let (p, q, err) = hankel_pq(nu, z);
    if !err.is_finite() || err >= 1e-12 {
        return None;
    }
    let chi = z - (0.5 * nu + 0.25) * std::f64::consts::PI;
    let amp = (2.0 / (std::f64::consts::PI * z)).sqrt();
    let j = amp * (p * chi.cos() - q * chi.sin());
    let y = amp * (p * chi.sin() + q * chi.cos());
    Some((j, y))
}

/// Steed's method: (J_nu, Y_nu, J'_nu, Y'_nu) for real x >= 2, nu >= 0.
fn jy_steed(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    debug_assert!(x >= 2.0 && nu >= 0.0);
    let max_iter = 20_000;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1: J'/J at order nu, with the sign of J tracked through the fraction
    let mut isign = 1.0_f64;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..max_iter {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "CF1 for J'/J at nu = {nu}, x = {x}"
        )));
    }

    // recur the scaled J down to mu = nu - nl where CF2 converges
    let nl = (nu - x + 1.5).max(0.0) as usize;
    let xmu = nu - nl as f64;

    let j_anchor = isign * FPMIN;
    let jp_anchor = h * j_anchor;
    let mut jl = j_anchor;
    let mut jpl = jp_anchor;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let jtemp = fact * jl + jpl;
        fact -= xi;
        jpl = fact * jtemp - jl;
        jl = jtemp;
    }
    if jl == 0.0 {
        jl = FPMIN;
    }
    let f_mu = jpl / jl;

    // CF2: p + iq = (J' - iY')/(J - iY) at order xmu (complex Lentz)
    let a0 = 0.25 - xmu * xmu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a0 * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr = cr * dr - ci * di;
    let dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut a = a0;
    let mut ok = false;
    for i in 2..max_iter {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < 1e-16 {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::NonConvergence(format!(
            "CF2 for Hankel ratio at nu = {nu}, x = {x}"
        )));
    }

    let gam = (p - f_mu) / q;
    let w = 2.0 / (std::f64::consts::PI * x);
    let mut j_mu = (w / ((p - f_mu) * gam + q)).sqrt();
    if jl < 0.0 {
        j_mu = -j_mu;
    }
    let y_mu = j_mu * gam;
    let yp_mu = y_mu * (p + q / gam);

    let scale = j_mu / jl;
    let j_nu = j_anchor * scale;
    let jp_nu = jp_anchor * scale;

    if nl == 0 {
        return Ok((j_nu, y_mu, jp_nu, yp_mu));
    }
    // Y climbs with order: forward recurrence is the stable direction
    let mut y_prev = y_mu;
    let mut y_curr = xmu * xi * y_mu - yp_mu; // Y_{mu+1}
    let mut ord = xmu + 1.0;
    for _ in 1..nl {
        let y_next = 2.0 * ord * xi * y_curr - y_prev;
        y_prev = y_curr;
        y_curr = y_next;
        ord += 1.0;
    }
    let yp_nu = y_prev - nu * xi * y_curr;
    Ok((j_nu, y_curr, jp_nu, yp_nu))
}

/// J_nu(x) for real x > 0, any real nu.
fn j_real_positive(nu: f64, x: f64) -> Result<(f64, bool)> {
    if nu < 0.0 {
        if is_integer(nu) {
            let (j, loss) = j_real_positive(-nu, x)?;
            let sign = if (-nu) as i64 % 2 == 0 { 1.0 } else { -1.0 };
            return Ok((sign * j, loss));
        }
        // J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu
        let pnu = -nu;
        let (j, lj) = j_real_positive(pnu, x)?;
        let (y, ly) = y_real_positive(pnu, x)?;
        return Ok((cospi(pnu) * j - sinpi(pnu) * y, lj || ly));
    }
    if x <= SERIES_RADIUS {
        let (v, ratio) = j_series(nu, Complex64::new(x, 0.0));
        return Ok((v.re, ratio > LOSS_RATIO));
    }
    if let Some((j, _)) = jy_asymptotic(nu, Complex64::new(x, 0.0)) {
        return Ok((j.re, false));
    }
    let (j, _, _, _) = jy_steed(nu, x)?;
    Ok((j, false))
}

/// Y_nu(x) for real x > 0, nu >= 0.
fn y_real_positive(nu: f64, x: f64) -> Result<(f64, bool)> {
    debug_assert!(nu >= 0.0);
    if x >= 2.0 {
        if x > SERIES_RADIUS {
            if let Some((_, y)) = jy_asymptotic(nu, Complex64::new(x, 0.0)) {
                return Ok((y.re, false));
            }
        }
        let (_, y, _, _) = jy_steed(nu, x)?;
        return Ok((y, false));
    }
    let dist = (nu - nu.round()).abs();
    if dist == 0.0 {
        let (v, ratio) = y_integer_series(nu as u32, Complex64::new(x, 0.0));
        return Ok((v.re, ratio > LOSS_RATIO));
    }
    if dist < 1e-6 {
        // reflection would divide by a vanishing sin(nu pi); use the nearest
        // integer order and flag the result
        let (v, _) = y_integer_series(nu.round() as u32, Complex64::new(x, 0.0));
        return Ok((v.re, true));
    }
    let (jp, r1) = j_series(nu, Complex64::new(x, 0.0));
    let (jm, r2) = j_series(-nu, Complex64::new(x, 0.0));
    let y = (jp.re * cospi(nu) - jm.re) / sinpi(nu);
    Ok((y, r1 > LOSS_RATIO || r2 > LOSS_RATIO || dist < 1e-3))
}

fn y_real(nu: f64, x: f64) -> Result<(f64, bool)> {
    if nu < 0.0 {
        // Y_{-nu} = cos(nu pi) Y_nu + sin(nu pi) J_nu
        let pnu = -nu;
        let (y, ly) = y_real_positive(pnu, x)?;
        let (j, lj) = j_real_positive(pnu, x)?;
        return Ok((cospi(pnu) * y + sinpi(pnu) * j, ly || lj));
    }
    y_real_positive(nu, x)
}

/// J_nu(z) off the positive real axis.
fn j_complex(nu: f64, z: Complex64) -> Result<(Complex64, bool)> {
    if nu < 0.0 && is_integer(nu) {
        let (v, loss) = j_complex(-nu, z)?;
        let sign = if (-nu) as i64 % 2 == 0 { 1.0 } else { -1.0 };
        return Ok((sign * v, loss));
    }
    if z.im == 0.0 && z.re < 0.0 {
        // principal branch: J_nu(x e^{i pi}) = e^{i nu pi} J_nu(x)
        let (j, loss) = j_real_positive(nu, -z.re)?;
        let phase = Complex64::new(cospi(nu), sinpi(nu));
        return Ok((phase * j, loss));
    }
    if z.norm() <= SERIES_RADIUS {
        let (v, ratio) = j_series(nu, z);
        return Ok((v, ratio > LOSS_RATIO));
    }
    if let Some((j, _)) = jy_asymptotic(nu, z) {
        return Ok((j, false));
    }
    // out-of-region fallback: series result, flagged
    let (v, _) = j_series(nu, z);
    Ok((v, true))
}

fn y_complex(nu: f64, z: Complex64) -> Result<(Complex64, bool)> {
    if nu < 0.0 {
        let pnu = -nu;
        let (y, ly) = y_complex(pnu, z)?;
        let (j, lj) = j_complex(pnu, z)?;
        return Ok((cospi(pnu) * y + sinpi(pnu) * j, ly || lj));
    }
    if z.norm() > SERIES_RADIUS {
        if let Some((_, y)) = jy_asymptotic(nu, z) {
            return Ok((y, false));
        }
    }
    let dist = (nu - nu.round()).abs();
    if dist == 0.0 {
        let (v, ratio) = y_integer_series(nu as u32, z);
        return Ok((v, ratio > LOSS_RATIO));
    }
    if dist < 1e-6 {
        let (v, _) = y_integer_series(nu.round() as u32, z);
        return Ok((v, true));
    }
    let (jp, r1) = j_series(nu, z);
    let (jm, r2) = j_series(-nu, z);
    let y = (jp * cospi(nu) - jm) / sinpi(nu);
    Ok((y, r1 > LOSS_RATIO || r2 > LOSS_RATIO || dist < 1e-3))
}

/// Bessel function of the requested kind with a cancellation diagnostic.
pub fn bessel_checked(kind: BesselKind, order: f64, arg: Complex64) -> Result<BesselValue> {
    if !order.is_finite() {
        return Err(Error::Domain("Bessel order must be finite".into()));
    }
    if !arg.re.is_finite() || !arg.im.is_finite() {
        return Err(Error::Domain("Bessel argument must be finite".into()));
    }
    if arg.norm_sqr() == 0.0 {
        return match kind {
            BesselKind::J => {
                if order == 0.0 {
                    Ok(BesselValue {
                        value: Complex64::new(1.0, 0.0),
                        precision_loss: false,
                    })
                } else if order > 0.0 {
                    Ok(BesselValue {
                        value: Complex64::new(0.0, 0.0),
                        precision_loss: false,
                    })
                } else {
                    Err(Error::Domain("J of negative order diverges at 0".into()))
                }
            }
            _ => Err(Error::Domain(
                "Y, H1, H2 are singular at zero argument".into(),
            )),
        };
    }

    let real_positive = arg.im == 0.0 && arg.re > 0.0;
    let (value, loss) = match kind {
        BesselKind::J => {
            if real_positive {
                let (j, l) = j_real_positive(order, arg.re)?;
                (Complex64::new(j, 0.0), l)
            } else {
                j_complex(order, arg)?
            }
        }
        BesselKind::Y => {
            if real_positive {
                let (y, l) = y_real(order, arg.re)?;
                (Complex64::new(y, 0.0), l)
            } else if arg.im == 0.0 {
                return Err(Error::Domain(
                    "Y on the negative real axis is branch-ambiguous; pass a complex argument"
                        .into(),
                ));
            } else {
                y_complex(order, arg)?
            }
        }
        BesselKind::H1 | BesselKind::H2 => {
            let j = bessel_checked(BesselKind::J, order, arg)?;
            let y = bessel_checked(BesselKind::Y, order, arg)?;
            let i = Complex64::new(0.0, 1.0);
            let v = if kind == BesselKind::H1 {
                j.value + i * y.value
            } else {
                j.value - i * y.value
            };
            (v, j.precision_loss || y.precision_loss)
        }
    };
    Ok(BesselValue {
        value,
        precision_loss: loss,
    })
}

/// Bessel function of the requested kind (value only).
pub fn bessel(kind: BesselKind, order: f64, arg: Complex64) -> Result<Complex64> {
    bessel_checked(kind, order, arg).map(|v| v.value)
}

/// Spherical Bessel j_n(x) for n = 0..=nmax by downward (Miller) recurrence
/// normalised on j_0 = sin x / x. x may be any nonzero real; j_n is even or
/// odd, so only |x| enters up to a sign.
pub fn sph_jn_all(nmax: usize, x: f64) -> Vec<f64> {
    let ax = x.abs();
    if ax < 1e-8 {
        // j_n ~ x^n/(2n+1)!! (1 - x^2/(2(2n+3)) + ...)
        let mut out = Vec::with_capacity(nmax + 1);
        let mut dfact = 1.0;
        let mut pow = 1.0;
        for n in 0..=nmax {
            if n > 0 {
                dfact *= (2 * n + 1) as f64;
                pow *= x;
            }
            out.push(pow / dfact * (1.0 - x * x / (2.0 * (2 * n + 3) as f64)));
        }
        return out;
    }
    // Miller's recursion must start above the turning point (order ~ x);
    // below it both solutions oscillate and the seed error never decays.
    let top = nmax.max(ax.ceil() as usize);
    let start = top + 16 + 2 * (top as f64).sqrt().ceil() as usize;
    let mut jp = 0.0_f64;
    let mut j = 1e-300_f64;
    let mut out = vec![0.0; nmax + 1];
    for k in (0..start).rev() {
        let jm = (2 * k + 3) as f64 / x * j - jp;
        jp = j;
        j = jm;
        if k <= nmax {
            out[k] = j;
        }
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    let j0 = x.sin() / x;
    let scale = j0 / out[0];
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Spherical Bessel y_n(x) for n = 0..=nmax by upward recurrence.
pub fn sph_yn_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(-x.cos() / x);
    if nmax == 0 {
        return out;
    }
    out.push(-x.cos() / (x * x) - x.sin() / x);
    for n in 1..nmax {
        let y = (2 * n + 1) as f64 / x * out[n] - out[n - 1];
        out.push(y);
    }
    out
}

/// J at half-odd-integer order for real x > 0, assembled from the spherical
/// functions (finite combinations of sin, cos and powers).
pub fn j_half_real(order: f64, x: f64) -> Result<f64> {
    let two = 2.0 * order;
    if (two - two.round()).abs() > 1e-12 || (two.round() as i64).rem_euclid(2) == 0 {
        return Err(Error::InvalidParameter(format!(
            "order {order} is not half an odd integer"
        )));
    }
    if x <= 0.0 {
        return Err(Error::Domain("half-integer J path needs x > 0".into()));
    }
    let amp = (2.0 * x / std::f64::consts::PI).sqrt();
    if order > 0.0 {
        let n = (order - 0.5).round() as usize;
        Ok(amp * sph_jn_all(n, x)[n])
    } else {
        // J_{-n-1/2}(x) = (-1)^{n+1} sqrt(2x/pi) y_n(x)
        let n = (-order - 0.5).round() as usize;
        let sign = if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * amp * sph_yn_all(n, x)[n])
    }
}

/// Closed-form half-odd-integer Bessel J for complex argument: order
/// recurrence seeded with J_{+-1/2} = sqrt(2/(pi z)) (sin z, cos z).
pub fn bessel_half_integer(order: f64, arg: Complex64) -> Result<Complex64> {
    let two = 2.0 * order;
    if (two - two.round()).abs() > 1e-12 || (two.round() as i64).rem_euclid(2) == 0 {
        return Err(Error::InvalidParameter(format!(
            "order {order} is not half an odd integer"
        )));
    }
    if arg.norm_sqr() == 0.0 {
        return if order > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain(
                "negative half-integer J diverges at zero argument".into(),
            ))
        };
    }
    if arg.im == 0.0 {
        if arg.re > 0.0 {
            return Ok(Complex64::new(j_half_real(order, arg.re)?, 0.0));
        }
        // principal branch on the negative real axis
        let j = j_half_real(order, -arg.re)?;
        return Ok(Complex64::new(cospi(order), sinpi(order)) * j);
    }
    let m = (order.abs() - 0.5).round() as usize;
    let amp = (2.0 / (std::f64::consts::PI * arg)).sqrt();
    let seed_plus = amp * arg.sin(); // J_{1/2}
    let seed_minus = amp * arg.cos(); // J_{-1/2}
    if order < 0.0 {
        // magnitudes grow toward negative order: stable recurrence
        let mut prev = seed_plus;
        let mut curr = seed_minus;
        let mut nu = -0.5;
        for _ in 0..m {
            let next = 2.0 * nu / arg * curr - prev;
            prev = curr;
            curr = next;
            nu -= 1.0;
        }
        Ok(curr)
    } else if (m as f64) <= arg.norm() + 2.0 {
        let mut prev = seed_minus;
        let mut curr = seed_plus;
        let mut nu = 0.5;
        for _ in 0..m {
            let next = 2.0 * nu / arg * curr - prev;
            prev = curr;
            curr = next;
            nu += 1.0;
        }
        Ok(curr)
    } else {
        // ascending recurrence past the turning point loses digits: series
        let (v, _) = j_series(order, arg);
        Ok(v)
    }
}
