//! Jacobi polynomials, associated Legendre functions and the terminating
//! Gauss hypergeometric sum, linked by
//!
//! ```text
//! F(-n, n+1+a+b; 1+a; y) = n! Gamma(a+1)/Gamma(n+a+1) P_n^{(a,b)}(1-2y),
//! P_n^{(k,k)}(x) = (-2)^k (n+k)!/(n+2k)! (1-x^2)^{-k/2} P_{n+k}^k(x).
//! ```

use crate::error::{Error, Result};

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence in degree.
pub fn jacobi_poly(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = 0.5 * (a - b + (a + b + 2.0) * x);
    for k in 1..n {
        let kf = k as f64;
        let c1 = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * (2.0 * kf + a + b);
        let c2 = (2.0 * kf + a + b + 1.0) * (a * a - b * b);
        let c3 = (2.0 * kf + a + b) * (2.0 * kf + a + b + 1.0) * (2.0 * kf + a + b + 2.0);
        let c4 = 2.0 * (kf + a) * (kf + b) * (2.0 * kf + a + b + 2.0);
        let p_next = ((c2 + c3 * x) * p - c4 * p_prev) / c1;
        p_prev = p;
        p = p_next;
    }
    p
}

/// Associated Legendre function P_n^k(x) on |x| <= 1, Condon-Shortley phase.
pub fn assoc_legendre(n: usize, k: usize, x: f64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "assoc_legendre needs k <= n, got n = {n}, k = {k}"
        )));
    }
    if x.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "assoc_legendre defined for |x| <= 1, got x = {x}"
        )));
    }
    // P_k^k = (-1)^k (2k-1)!! (1-x^2)^{k/2}, then climb in degree:
    // (m-k+1) P_{m+1}^k = (2m+1) x P_m^k - (m+k) P_{m-1}^k
    let mut pkk = 1.0;
    let sx = ((1.0 - x) * (1.0 + x)).sqrt();
    for i in 0..k {
        pkk *= -((2 * i + 1) as f64) * sx;
    }
    if n == k {
        return Ok(pkk);
    }
    let mut p_prev = pkk;
    let mut p = (2 * k + 1) as f64 * x * pkk;
    for m in (k + 1)..n {
        let mf = m as f64;
        let kf = k as f64;
        let p_next = ((2.0 * mf + 1.0) * x * p - (mf + kf) * p_prev) / (mf - kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    Ok(p)
}

/// Terminating Gauss sum 2F1(-n, b; c; x), summed as the exact degree-n
/// polynomial. Rejects c at a non-positive integer the sum would step on.
pub fn hypergeom_terminating(n: usize, b: f64, c: f64, x: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        let j = (-c) as usize;
        if j < n {
            return Err(Error::InvalidParameter(format!(
                "2F1 undefined: c = {c} is a non-positive integer reached by the sum (n = {n})"
            )));
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}
