//! Eigenvalues of a real upper Hessenberg matrix by the shifted QR
//! iteration (EISPACK hqr lineage). Used as the fallback when a tridiagonal
//! characteristic matrix cannot be symmetrized; eigenvalues may then come in
//! complex-conjugate pairs.

use super::tridiag::Tridiag;
use num_complex::Complex64;

/// Eigenvalues of the tridiagonal matrix viewed as upper Hessenberg.
pub fn hessenberg_qr(t: &Tridiag) -> Vec<Complex64> {
    let n = t.dim();
    let mut a = vec![vec![0.0_f64; n]; n];
    for i in 0..n {
        a[i][i] = t.diag[i];
        if i + 1 < n {
            a[i][i + 1] = t.sup[i];
            a[i + 1][i] = t.sub[i];
        }
    }
    hqr(&mut a)
}

/// In-place Francis QR on an upper Hessenberg matrix; returns eigenvalues.
pub fn hqr(a: &mut [Vec<f64>]) -> Vec<Complex64> {
    let n = a.len();
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return eig;
    }

    let mut anorm = 0.0_f64;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return vec![Complex64::new(0.0, 0.0); n];
    }

    let mut nn = n as isize - 1;
    let mut t_shift = 0.0_f64;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // look for a small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let s =
                    a[(l - 1) as usize][(l - 1) as usize].abs() + a[l as usize][l as usize].abs();
                let s = if s == 0.0 { anorm } else { s };
                if a[l as usize][(l - 1) as usize].abs() <= f64::EPSILON * s {
                    a[l as usize][(l - 1) as usize] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = a[nn as usize][nn as usize];
            if l == nn {
                // one root found
                eig.push(Complex64::new(x + t_shift, 0.0));
                nn -= 1;
                break;
            }
            let y = a[(nn - 1) as usize][(nn - 1) as usize];
            let w = a[nn as usize][(nn - 1) as usize] * a[(nn - 1) as usize][nn as usize];
            if l == nn - 1 {
                // two roots found
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let x_sh = x + t_shift;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    eig.push(Complex64::new(x_sh + z, 0.0));
                    let second = if z != 0.0 { x_sh - w / z } else { x_sh };
                    eig.push(Complex64::new(second, 0.0));
                } else {
                    eig.push(Complex64::new(x_sh + p, z));
                    eig.push(Complex64::new(x_sh + p, -z));
                }
                nn -= 2;
                break;
            }
            // no root yet: QR step
            if its == 60 {
                // give up on this block; report the diagonal as-is
                eig.push(Complex64::new(x + t_shift, 0.0));
                nn -= 1;
                break;
            }
            let mut x = x;
            let mut y = y;
            let mut w = w;
            if its == 10 || its == 20 {
                // exceptional shift
                t_shift += x;
                for i in 0..=nn as usize {
                    a[i][i] -= x;
                }
                let s = a[nn as usize][(nn - 1) as usize].abs()
                    + a[(nn - 1) as usize][(nn - 2) as usize].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // double-shift: look for two consecutive small subdiagonals
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = (0.0, 0.0, 0.0);
            while m >= l {
                let z = a[m as usize][m as usize];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1) as usize][m as usize]
                    + a[m as usize][(m + 1) as usize];
                q = a[(m + 1) as usize][(m + 1) as usize] - z - rr - ss;
                r = a[(m + 2) as usize][(m + 1) as usize];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m as usize][(m - 1) as usize].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a[(m - 1) as usize][(m - 1) as usize].abs()
                        + a[m as usize][m as usize].abs()
                        + a[(m + 1) as usize][(m + 1) as usize].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i as usize][(i - 2) as usize] = 0.0;
                if i != m + 2 {
                    a[i as usize][(i - 3) as usize] = 0.0;
                }
            }
            // Householder sweep
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a[k as usize][(k - 1) as usize];
                    q = a[(k + 1) as usize][(k - 1) as usize];
                    r = if k != nn - 1 {
                        a[(k + 2) as usize][(k - 1) as usize]
                    } else {
                        0.0
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    k += 1;
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k as usize][(k - 1) as usize] = -a[k as usize][(k - 1) as usize];
                    }
                } else {
                    a[k as usize][(k - 1) as usize] = -s * x;
                }
                p += s;
                let xx = p / s;
                let yy = q / s;
                let zz = r / s;
                q /= p;
                r /= p;
                // row modification
                for j in k as usize..n {
                    let pp = a[k as usize][j]
                        + q * a[(k + 1) as usize][j]
                        + if k != nn - 1 {
                            r * a[(k + 2) as usize][j]
                        } else {
                            0.0
                        };
                    if k != nn - 1 {
                        a[(k + 2) as usize][j] -= pp * zz;
                    }
                    a[(k + 1) as usize][j] -= pp * yy;
                    a[k as usize][j] -= pp * xx;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                // column modification
                for i in 0..=(mmin as usize) {
                    let pp = xx * a[i][k as usize]
                        + yy * a[i][(k + 1) as usize]
                        + if k != nn - 1 {
                            zz * a[i][(k + 2) as usize]
                        } else {
                            0.0
                        };
                    if k != nn - 1 {
                        a[i][(k + 2) as usize] -= pp * r;
                    }
                    a[i][(k + 1) as usize] -= pp * q;
                    a[i][k as usize] -= pp;
                }
                k += 1;
            }
        }
    }
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_symmetric_path() {
        let t = Tridiag::new(
            vec![2.0, -1.0, 0.5, 3.0, 1.0],
            vec![1.0, 0.7, 2.0, 0.3],
            vec![0.4, 1.1, 0.6, 2.5],
        )
        .unwrap();
        let mut general = hessenberg_qr(&t)
            .iter()
            .map(|z| {
                assert!(z.im.abs() < 1e-9, "unexpected complex eigenvalue {z}");
                z.re
            })
            .collect::<Vec<_>>();
        general.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let symmetric = match super::super::eigen::tridiag_eigenvalues(&t) {
            super::super::eigen::EigenOutcome::Symmetric(v) => v,
            _ => panic!("expected symmetrizable"),
        };
        for (g, s) in general.iter().zip(symmetric.iter()) {
            assert!((g - s).abs() < 1e-9, "{g} vs {s}");
        }
    }

    #[test]
    fn finds_complex_pair() {
        // [[0, 1], [-1, 0]] has eigenvalues +-i
        let t = Tridiag::new(vec![0.0, 0.0], vec![1.0], vec![-1.0]).unwrap();
        let eig = hessenberg_qr(&t);
        let mut ims: Vec<f64> = eig.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_block_spectrum() {
        // pentadiagonal-free check on a 4x4 with both real and complex parts
        let t = Tridiag::new(
            vec![1.0, 1.0, 5.0, 4.0],
            vec![2.0, 0.0, 1.0],
            vec![-3.0, 0.0, 0.5],
        )
        .unwrap();
        let eig = hessenberg_qr(&t);
        // block [[1,2],[-3,1]]: 1 +- i sqrt(6); block [[5,1],[0.5,4]]: (9 +- sqrt(3))/2
        let mut complex: Vec<&Complex64> = eig.iter().filter(|z| z.im.abs() > 1e-9).collect();
        complex.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert_eq!(complex.len(), 2);
        assert!((complex[1].re - 1.0).abs() < 1e-10);
        assert!((complex[1].im - 6.0_f64.sqrt()).abs() < 1e-10);
        let mut real: Vec<f64> = eig
            .iter()
            .filter(|z| z.im.abs() <= 1e-9)
            .map(|z| z.re)
            .collect();
        real.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((real[0] - (9.0 - 3.0_f64.sqrt()) / 2.0).abs() < 1e-10);
        assert!((real[1] - (9.0 + 3.0_f64.sqrt()) / 2.0).abs() < 1e-10);
    }
}
