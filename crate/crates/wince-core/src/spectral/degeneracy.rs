//! Degeneracy verifier for the paired finite-series matrices: checks the
//! element identities (the second matrix is the first one reversed) and
//! compares determinants.

use super::tridiag::Tridiag;
use crate::error::{Error, Result};

/// Outcome of comparing the two l x l characteristic matrices.
#[derive(Clone, Debug)]
pub struct DegeneracyReport {
    pub det_a: f64,
    pub det_b: f64,
    /// |det A - det B| within 1e-10 relative
    pub dets_match: bool,
    /// diag_B is diag_A reversed, sub_B is sub_A reversed
    pub identity_ok: bool,
    /// relative determinant discrepancy
    pub rel_error: f64,
}

pub fn degeneracy_check(a: &Tridiag, b: &Tridiag) -> Result<DegeneracyReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = a.dim();
    let rel = |x: f64, y: f64| (x - y).abs() <= 1e-10 * (1.0 + x.abs() + y.abs());

    let mut identity_ok = true;
    for k in 0..n {
        // beta~_k = beta_{l-1-k}
        if !rel(b.diag[k], a.diag[n - 1 - k]) {
            identity_ok = false;
        }
    }
    for k in 0..n.saturating_sub(1) {
        // gamma~_{k+1} = gamma_{l-1-k}: sub_b[k] = sub_a[n-2-k]
        if !rel(b.sub[k], a.sub[n - 2 - k]) {
            identity_ok = false;
        }
    }

    let (ma, ea) = a.det_scaled();
    let (mb, eb) = b.det_scaled();
    // compare in the common scale
    let (det_a, det_b) = (
        ma * 2.0_f64.powi((ea - ea.max(eb)) as i32),
        mb * 2.0_f64.powi((eb - ea.max(eb)) as i32),
    );
    let scale = det_a.abs().max(det_b.abs()).max(1e-300);
    let rel_error = (det_a - det_b).abs() / scale;
    Ok(DegeneracyReport {
        det_a: a.det(),
        det_b: b.det(),
        dets_match: rel_error <= 1e-10,
        identity_ok,
        rel_error,
    })
}
