//! Tridiagonal eigenvalues: diagonal symmetrization plus Sturm bisection
//! when every super/sub product is positive, Hessenberg QR otherwise.

use super::hqr::hessenberg_qr;
use super::tridiag::Tridiag;
use num_complex::Complex64;

/// Eigenvalues of a symmetric tridiagonal matrix (diag d, off-diagonal e)
/// by Sturm-sequence bisection; returned ascending.
pub fn symm_tridiag_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
    let n = d.len();
    if n == 0 {
        return vec![];
    }
    let e2: Vec<f64> = e.iter().map(|x| x * x).collect();

    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += e[i - 1].abs();
        }
        if i < n - 1 {
            r += e[i].abs();
        }
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let span = (hi - lo).max(1e-300);
    let lo = lo - 1e-10 * span;
    let hi = hi + 1e-10 * span;

    // count of eigenvalues strictly below x
    let count_below = |x: f64| -> usize {
        let mut count = 0usize;
        let mut q = 1.0_f64;
        for i in 0..n {
            q = d[i] - x - if i > 0 { e2[i - 1] / q } else { 0.0 };
            if q < 0.0 {
                count += 1;
            }
            if q == 0.0 {
                q = 1e-300;
            }
        }
        count
    };

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (lo, hi);
        // bisect until the k-th eigenvalue is pinned to relative machine width
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
        out.push(0.5 * (a + b));
    }
    out
}

/// Outcome of a tridiagonal eigenvalue computation.
#[derive(Clone, Debug)]
pub enum EigenOutcome {
    /// All sup*sub products positive: symmetrized spectrum, real ascending.
    Symmetric(Vec<f64>),
    /// Some product non-positive: general (possibly complex) spectrum.
    General(Vec<Complex64>),
}

impl EigenOutcome {
    pub fn values(&self) -> Vec<Complex64> {
        match self {
            EigenOutcome::Symmetric(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            EigenOutcome::General(v) => v.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, EigenOutcome::Symmetric(_))
    }
}

/// Eigenvalues of a real tridiagonal matrix. When every product
/// `sup[i]*sub[i]` is positive the matrix is diagonally similar to a
/// symmetric one with off-diagonals sqrt(sup*sub) and the spectrum is real.
pub fn tridiag_eigenvalues(t: &Tridiag) -> EigenOutcome {
    let n = t.dim();
    let symmetrizable = (0..n.saturating_sub(1)).all(|i| t.sup[i] * t.sub[i] > 0.0);
    if symmetrizable {
        let e: Vec<f64> = (0..n - 1).map(|i| (t.sup[i] * t.sub[i]).sqrt()).collect();
        EigenOutcome::Symmetric(symm_tridiag_eigenvalues(&t.diag, &e))
    } else {
        EigenOutcome::General(hessenberg_qr(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_on_known_matrix() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 - 2 cos(k pi/(n+1))
        let n = 8;
        let d = vec![2.0; n];
        let e = vec![-1.0; n - 1];
        let eig = symm_tridiag_eigenvalues(&d, &e);
        for (k, &lam) in eig.iter().enumerate() {
            let expect =
                2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((lam - expect).abs() < 1e-12, "k={k}: {lam} vs {expect}");
        }
    }

    #[test]
    fn asymmetric_but_symmetrizable() {
        // diag similarity leaves the spectrum intact
        let t = Tridiag::new(vec![1.0, 2.0, 3.0], vec![2.0, 1.0], vec![0.5, 4.0]).unwrap();
        let out = tridiag_eigenvalues(&t);
        assert!(out.is_symmetric());
        let eig = out.values();
        // check against the characteristic polynomial: det(T - x I) = 0
        for lam in eig {
            let x = lam.re;
            let det = Tridiag::new(
                vec![1.0 - x, 2.0 - x, 3.0 - x],
                vec![2.0, 1.0],
                vec![0.5, 4.0],
            )
            .unwrap()
            .det();
            assert!(det.abs() < 1e-10, "residual {det}");
        }
    }
}
