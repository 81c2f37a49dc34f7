//! Small dense routines on row-major square matrices.

use crate::error::{Error, Result};

/// Lower-triangular `L` with `L Lᵀ = a`. The error carries the failing row.
pub(crate) fn cholesky(m: usize, a: &[f64]) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), m * m);
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let dot: f64 = (0..j).map(|k| l[i * m + k] * l[j * m + k]).sum();
            let v = a[i * m + j] - dot;
            if i == j {
                if !(v > 0.0) {
                    return Err(Error::NotPositiveDefinite { pivot: i, value: v });
                }
                l[i * m + i] = v.sqrt();
            } else {
                l[i * m + j] = v / l[j * m + j];
            }
        }
    }
    Ok(l)
}

pub(crate) fn cholesky_log_det(m: usize, l: &[f64]) -> f64 {
    (0..m).map(|i| l[i * m + i].ln()).sum::<f64>() * 2.0
}

/// Solves `L Lᵀ x = b` in place.
pub(crate) fn cholesky_solve(m: usize, l: &[f64], b: &mut [f64]) {
    for i in 0..m {
        let dot: f64 = (0..i).map(|k| l[i * m + k] * b[k]).sum();
        b[i] = (b[i] - dot) / l[i * m + i];
    }
    for i in (0..m).rev() {
        let dot: f64 = (i + 1..m).map(|k| l[k * m + i] * b[k]).sum();
        b[i] = (b[i] - dot) / l[i * m + i];
    }
}

/// `a - scale · c (q + reg·I)^{-1} cᵀ` for `a: n x n`, `c: n x m`, `q: m x m`.
pub(crate) fn schur_complement(
    n: usize,
    a: &[f64],
    m: usize,
    c: &[f64],
    q: &[f64],
    reg: f64,
    scale: f64,
) -> Result<Vec<f64>> {
    let mut out = a.to_vec();
    if m == 0 || scale == 0.0 {
        return Ok(out);
    }
    let mut qr = q.to_vec();
    for i in 0..m {
        qr[i * m + i] += reg;
    }
    let l = cholesky(m, &qr)?;
    // w_i = (q + reg I)^{-1} c_iᵀ
    let mut w = c.to_vec();
    for i in 0..n {
        cholesky_solve(m, &l, &mut w[i * m..(i + 1) * m]);
    }
    for i in 0..n {
        for j in i..n {
            let dot: f64 = (0..m).map(|k| c[i * m + k] * w[j * m + k]).sum();
            let v = a[i * n + j] - scale * dot;
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    Ok(out)
}
