//! Gaussian elimination on nested vectors.

pub(super) type Matrix = Vec<Vec<f64>>;

pub(super) fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

/// Rows `r` and columns `c` of `m`.
pub(super) fn pick(m: &Matrix, r: &[usize], c: &[usize]) -> Matrix {
    r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect()
}

pub(super) fn add_diagonal(mut m: Matrix, d: f64) -> Matrix {
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += d;
    }
    m
}

pub(super) fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub(super) fn transpose(a: &Matrix, rows: usize, cols: usize) -> Matrix {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

pub(super) fn subtract(a: &Matrix, b: &Matrix, scale: f64) -> Matrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - scale * q).collect()).collect()
}

/// Determinant by elimination with partial pivoting.
pub(super) fn determinant(mut a: Matrix) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when singular.
pub(super) fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a.iter().zip(identity(n)).map(|(r, i)| r.iter().copied().chain(i).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(pivot, col);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let factor = m[r][col];
                for c in 0..2 * n {
                    m[r][c] -= factor * m[col][c];
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
