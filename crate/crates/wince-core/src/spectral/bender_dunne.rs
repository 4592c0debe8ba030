//! Polynomial sequences P_n(E) generated by
//!
//! ```text
//! P_{n+1} = (E + k_n) P_n - g_n P_{n-1},    P_{-1} = 0,  P_0 = 1,
//! ```
//!
//! in exact rational arithmetic. Every f64 input is an exact dyadic
//! rational, so the rational path covers all callers; the critical
//! polynomial's roots come out of a Durand-Kerner iteration on the
//! f64-projected coefficients with a rational-Horner Newton polish.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational from an f64 (dyadic mantissa times power of two).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// The polynomial sequence with exact coefficients, low degree first.
#[derive(Clone, Debug)]
pub struct BenderDunneSeq {
    pub polys: Vec<Vec<BigRational>>,
}

/// Builds P_0..P_count from the shift constants k_n and the products g_n.
pub fn bender_dunne<K, G>(knl: K, gamma: G, count: usize) -> BenderDunneSeq
where
    K: Fn(usize) -> BigRational,
    G: Fn(usize) -> BigRational,
{
    let mut polys: Vec<Vec<BigRational>> = Vec::with_capacity(count + 1);
    polys.push(vec![BigRational::from_integer(BigInt::from(1))]); // P_0 = 1
    let mut prev: Vec<BigRational> = vec![]; // P_{-1} = 0
    for n in 0..count {
        let k = knl(n);
        let g = gamma(n);
        let cur = &polys[n];
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c; // E * P_n
            next[i] += &k * c; // k_n * P_n
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &g * c; // - g_n * P_{n-1}
        }
        prev = cur.clone();
        polys.push(next);
    }
    BenderDunneSeq { polys }
}

impl BenderDunneSeq {
    /// Degree-checked coefficient vector of P_n projected to f64.
    pub fn coeffs_f64(&self, n: usize) -> Vec<f64> {
        self.polys[n]
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// P_n(e) by exact rational Horner, projected to f64 at the end.
    pub fn eval(&self, n: usize, e: f64) -> f64 {
        let x = rational_from_f64(e);
        let mut acc = BigRational::zero();
        for c in self.polys[n].iter().rev() {
            acc = acc * &x + c;
        }
        acc.to_f64().unwrap_or(f64::NAN)
    }

    /// Sign of P_n(e), exactly.
    pub fn eval_sign(&self, n: usize, e: f64) -> i8 {
        let x = rational_from_f64(e);
        let mut acc = BigRational::zero();
        for c in self.polys[n].iter().rev() {
            acc = acc * &x + c;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    /// All roots of P_n by Durand-Kerner on the monic f64 projection.
    pub fn roots(&self, n: usize) -> Vec<Complex64> {
        let c = self.coeffs_f64(n);
        durand_kerner(&c)
    }

    /// Real roots of P_n, sorted ascending, with an exact-sign bisection
    /// polish; imaginary parts below tolerance are flattened.
    pub fn real_roots(&self, n: usize) -> Vec<f64> {
        let mut roots: Vec<f64> = self
            .roots(n)
            .iter()
            .filter(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // polish each root by bisection on the exact sign of P_n
        let scale = roots.iter().fold(1.0_f64, |m, r| m.max(r.abs()));
        for r in roots.iter_mut() {
            let mut h = 1e-8 * scale;
            let mut lo = *r - h;
            let mut hi = *r + h;
            let mut tries = 0;
            while self.eval_sign(n, lo) == self.eval_sign(n, hi) && tries < 30 {
                h *= 3.0;
                lo = *r - h;
                hi = *r + h;
                tries += 1;
            }
            if self.eval_sign(n, lo) == self.eval_sign(n, hi) {
                continue; // double root or conditioning issue: keep DK value
            }
            let (slo, _) = (self.eval_sign(n, lo), ());
            for _ in 0..90 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let sm = self.eval_sign(n, mid);
                if sm == 0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if sm == slo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            *r = 0.5 * (lo + hi);
        }
        roots
    }
}

/// Durand-Kerner root iteration for a polynomial given low-to-high.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|&c| Complex64::new(c / lead, 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            p = p * z + c;
        }
        p
    };
    let radius = 1.0 + monic.iter().take(deg).map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.37 + 2.2 * k as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> BigRational {
        rational_from_f64(x)
    }

    #[test]
    fn first_polynomials_explicit() {
        // P_1 = E + k_0, P_2 = E^2 + (k_0 + k_1) E + k_0 k_1 - g_1
        let k = |n: usize| r([0.25, -1.5, 2.0][n]);
        let g = |n: usize| r([0.0, 0.5, -0.25][n]);
        let seq = bender_dunne(k, g, 3);
        assert_eq!(seq.coeffs_f64(1), vec![0.25, 1.0]);
        let p2 = seq.coeffs_f64(2);
        assert_eq!(p2, vec![0.25 * -1.5 - 0.5, 0.25 - 1.5, 1.0]);
        // degree grows by one each step
        assert_eq!(seq.polys[3].len(), 4);
    }

    #[test]
    fn durand_kerner_quadratic() {
        // roots of (x-1)(x+3) = x^2 + 2x - 3
        let mut roots: Vec<f64> = durand_kerner(&[-3.0, 2.0, 1.0])
            .iter()
            .map(|z| z.re)
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((roots[0] + 3.0).abs() < 1e-12);
        assert!((roots[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_sign_bisection_polish() {
        // (x - 1/3)(x - 2/3): DK roots then polish to ~1e-15
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let two_third = BigRational::new(BigInt::from(2), BigInt::from(3));
        let poly = vec![
            &third * &two_third,
            -(&third + &two_third),
            BigRational::from_integer(BigInt::from(1)),
        ];
        let seq = BenderDunneSeq { polys: vec![poly] };
        let roots = seq.real_roots(0);
        assert!((roots[0] - 1.0 / 3.0).abs() < 1e-14);
        assert!((roots[1] - 2.0 / 3.0).abs() < 1e-14);
    }
}
