//! Shared oracles for the integration and acceptance suites. Everything
//! here is deliberately independent of the solver's own machinery: direct
//! Runge-Kutta integration, Fourier and Legendre spectral discretisations,
//! exact rational series, and local finite-difference residuals.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// xorshift64* generator: deterministic pseudo-random parameter sampling.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// uniform in [lo, hi)
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

/// Max relative residual of psi'' + p(u) psi' + w(u) psi = 0 over the grid,
/// with derivatives from local 5-point stencils whose width adapts to the
/// local frequency sqrt|w| (so the check stays meaningful for rapidly
/// oscillating solutions).
pub fn ode_residual_rel(
    psi: &dyn Fn(f64) -> f64,
    p: &dyn Fn(f64) -> f64,
    w: &dyn Fn(f64) -> f64,
    grid: &[f64],
) -> f64 {
    let mut worst_res = 0.0_f64;
    let mut scale = 0.0_f64;
    for &u in grid {
        let freq = w(u).abs().sqrt().max(p(u).abs()).max(1.0);
        let h = 2.2e-3 / freq;
        let fm2 = psi(u - 2.0 * h);
        let fm1 = psi(u - h);
        let f0 = psi(u);
        let fp1 = psi(u + h);
        let fp2 = psi(u + 2.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let res = d2 + p(u) * d1 + w(u) * f0;
        worst_res = worst_res.max(res.abs());
        scale = scale.max(d2.abs() + (p(u) * d1).abs() + (w(u) * f0).abs());
    }
    worst_res / scale.max(1e-300)
}

/// Fixed-step RK4 for the second-order system U'' = rhs(z, U, U') along a
/// real path from z0 to z1; returns samples of U at `samples` points.
pub fn rk4_second_order(
    rhs: &dyn Fn(f64, Complex64, Complex64) -> Complex64,
    z0: f64,
    u0: Complex64,
    up0: Complex64,
    z1: f64,
    steps: usize,
    samples: usize,
) -> Vec<(f64, Complex64)> {
    let h = (z1 - z0) / steps as f64;
    let mut z = z0;
    let mut u = u0;
    let mut v = up0;
    let mut out = Vec::with_capacity(samples + 1);
    let every = (steps / samples).max(1);
    out.push((z, u));
    for step in 0..steps {
        let f = |z: f64, u: Complex64, v: Complex64| (v, rhs(z, u, v));
        let (k1u, k1v) = f(z, u, v);
        let (k2u, k2v) = f(z + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        let (k3u, k3v) = f(z + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        let (k4u, k4v) = f(z + h, u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        z += h;
        if (step + 1) % every == 0 {
            out.push((z, u));
        }
    }
    out
}

/// Right-hand side of the equation solved for U'':
/// U'' = -[(B1 + B2 z) U' + (B3 + q(z - z0)) U] / (z (z - z0)).
pub fn che_rhs(
    p: &wince_core::che::CheParams,
) -> impl Fn(f64, Complex64, Complex64) -> Complex64 + '_ {
    move |z: f64, u: Complex64, v: Complex64| {
        let zc = Complex64::new(z, 0.0);
        -((p.b1 + p.b2 * zc) * v + (p.b3 + p.q * (zc - p.z0)) * u) / (zc * (zc - p.z0))
    }
}

/// Characteristic values of the even pi-periodic Mathieu class from the
/// Fourier-cosine discretisation of w'' + (a - 2q cos 2u) w = 0:
/// a A_0 = q A_2, (a - 4) A_2 = q (2 A_0 + A_4),
/// (a - 4j^2) A_{2j} = q (A_{2j-2} + A_{2j+2}).
pub fn mathieu_fourier_oracle(q: f64, count: usize, dim: usize) -> Vec<f64> {
    // symmetrize: off-diagonal products are q^2 except the first (2 q^2)
    let mut diag = vec![0.0; dim];
    let mut off = vec![0.0; dim - 1];
    for (j, d) in diag.iter_mut().enumerate() {
        *d = 4.0 * (j * j) as f64;
    }
    off[0] = (2.0 * q * q).sqrt();
    for o in off.iter_mut().skip(1) {
        *o = q;
    }
    let mut eig = symm_eigen(&diag, &off);
    eig.truncate(count);
    eig
}

/// Separation constants of the dipole angular equation from the
/// associated-Legendre discretisation:
/// C c_l = l(l+1) c_l + beta [ (l-m)/(2l-1) c_{l-1} + (l+1+m)/(2l+3) c_{l+1} ].
pub fn dipole_legendre_oracle(m: u32, beta: f64, count: usize, dim: usize) -> Vec<f64> {
    let mf = m as f64;
    let ell = |i: usize| mf + i as f64;
    let diag: Vec<f64> = (0..dim).map(|i| ell(i) * (ell(i) + 1.0)).collect();
    // row i couples to i+1 with beta (l+1+m)/(2l+3), to i-1 with beta (l-m)/(2l-1)
    let sup: Vec<f64> = (0..dim - 1)
        .map(|i| beta * (ell(i) + 1.0 + mf) / (2.0 * ell(i) + 3.0))
        .collect();
    let sub: Vec<f64> = (1..dim)
        .map(|i| beta * (ell(i) - mf) / (2.0 * ell(i) - 1.0))
        .collect();
    let off: Vec<f64> = (0..dim - 1).map(|i| (sup[i] * sub[i]).sqrt()).collect();
    let mut eig = symm_eigen(&diag, &off);
    eig.truncate(count);
    eig
}

/// Plain bisection Sturm eigensolver for a symmetric tridiagonal matrix,
/// kept separate from the library's own implementation on purpose: the
/// oracle should not share the code path it validates. Ascending.
pub fn symm_eigen(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let e2: Vec<f64> = off.iter().map(|x| x * x).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < n - 1 {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let count_below = |x: f64| -> usize {
        let mut c = 0;
        let mut q = 1.0_f64;
        for i in 0..n {
            q = diag[i] - x - if i > 0 { e2[i - 1] / q } else { 0.0 };
            if q < 0.0 {
                c += 1;
            }
            if q == 0.0 {
                q = 1e-300;
            }
        }
        c
    };
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count_below(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// J_nu(x) for rational x and half-odd or integer nu as an exact truncated
/// rational series times the (possibly irrational) prefactor; `terms` terms
/// of sum_k (-x^2/4)^k / (k! (nu+1)_k), evaluated in BigRational.
pub fn bessel_j_rational_series(nu_times2: i64, x: BigRational, terms: usize) -> f64 {
    // sum with rational Pochhammer shift: works for integer nu here
    assert!(
        nu_times2 % 2 == 0,
        "rational oracle used with integer order"
    );
    let nu = nu_times2 / 2;
    let w = -(&x * &x) / BigRational::from_integer(BigInt::from(4));
    let mut term = BigRational::from_integer(BigInt::from(1));
    let mut sum = term.clone();
    for k in 1..=terms {
        let kk = BigInt::from(k as i64);
        let shift = BigInt::from(k as i64 + nu);
        term = term * &w / BigRational::from_integer(kk) / BigRational::from_integer(shift);
        sum += &term;
        if term.is_zero() {
            break;
        }
    }
    // prefactor (x/2)^nu / nu!
    let half = &x / BigRational::from_integer(BigInt::from(2));
    let mut pref = BigRational::from_integer(BigInt::from(1));
    for _ in 0..nu {
        pref *= &half;
    }
    let mut fact = BigInt::from(1);
    for k in 2..=nu {
        fact *= k;
    }
    pref /= BigRational::from_integer(fact);
    (pref * sum).to_f64().unwrap()
}

/// Exact rational terminating 2F1(-n, b; c; x) for rational b, c, x.
pub fn hyp2f1_rational(n: usize, b: BigRational, c: BigRational, x: BigRational) -> f64 {
    let mut term = BigRational::from_integer(BigInt::from(1));
    let mut sum = term.clone();
    for k in 0..n {
        let kf = BigRational::from_integer(BigInt::from(k as i64));
        let a_fac = &kf - BigRational::from_integer(BigInt::from(n as i64));
        let num = a_fac * (&b + &kf);
        let den = (&c + &kf) * (kf + BigRational::from_integer(BigInt::from(1)));
        term = term * num / den * &x;
        sum += &term;
    }
    sum.to_f64().unwrap()
}

/// Sign-stable check helper: true when a and b agree to `rel` relative.
pub fn close_rel(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

/// Verifies that the oracle pieces are themselves sane.
#[allow(unused)]
pub fn oracle_smoke() {
    let v = bessel_j_rational_series(6, BigRational::new(BigInt::from(3), BigInt::from(2)), 60);
    assert!(v.is_finite());
    let _ = Signed::abs(&BigRational::from_integer(BigInt::from(-1)));
}
