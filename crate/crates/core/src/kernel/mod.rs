//! Feature matrices and similarity kernels.
//!
//! Two metrics are supported. Cosine similarity is clamped at zero so every
//! kernel entry is nonnegative; Euclidean distance `d` is mapped to the
//! similarity `1 / (1 + d)`. Both give a self-similarity of exactly `1.0`.
//! Distances used by the dispersion functions are derived as `1 - s`.

mod cluster;
pub mod io;

pub use cluster::{cluster_ground_set, ClusterMap};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};

/// Row-major matrix of `rows` points with `dims` finite coordinates each.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    dims: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, dims: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || dims == 0 {
            return Err(Error::InvalidData(format!(
                "need at least one row and one column, got {rows}x{dims}"
            )));
        }
        if values.len() != rows * dims {
            return Err(Error::InvalidData(format!(
                "expected {} values for {rows}x{dims}, got {}",
                rows * dims,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite value at row {}, column {}",
                pos / dims,
                pos % dims
            )));
        }
        Ok(FeatureMatrix { rows, dims, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dims = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * dims);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dims {
                return Err(Error::InvalidData(format!(
                    "row {i} has {} columns, expected {dims}",
                    r.len()
                )));
            }
            values.extend_from_slice(r);
        }
        FeatureMatrix::new(rows.len(), dims, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dims..(i + 1) * self.dims]
    }

    /// Rows at `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(indices.len() * self.dims);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange { index: i, n: self.rows });
            }
            values.extend_from_slice(self.row(i));
        }
        FeatureMatrix::new(indices.len(), self.dims, values)
    }
}

/// Similarity metric used to build kernels from features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `max(0, cos(x_i, x_j))`.
    Cosine,
    /// `1 / (1 + ||x_i - x_j||)`.
    Euclidean,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" => Ok(Metric::Cosine),
            "euclidean" => Ok(Metric::Euclidean),
            other => Err(Error::InvalidConfig(format!("unknown metric `{other}`"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Cosine => "cosine",
            Metric::Euclidean => "euclidean",
        })
    }
}

/// Where a kernel's values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelTag {
    /// Built from features; cosine values below zero were clamped to zero.
    Metric(Metric),
    /// Supplied directly by the caller.
    Precomputed,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<f64>),
    /// Sorted `(column, similarity)` lists; absent entries are zero.
    Sparse { k: usize, rows: Vec<Vec<(usize, f64)>> },
}

/// Square similarity matrix over a ground set, dense or k-nearest-neighbor sparse.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityKernel {
    n: usize,
    storage: Storage,
    tag: KernelTag,
}

impl SimilarityKernel {
    /// Wrap a precomputed row-major `n x n` matrix. Entries must be finite,
    /// within `[0, 1]`, and symmetric to `1e-9`.
    pub fn from_dense(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidKernel("empty kernel".into()));
        }
        if values.len() != n * n {
            return Err(Error::InvalidKernel(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidKernel(format!(
                        "entry ({i}, {j}) = {v} is outside [0, 1]"
                    )));
                }
                if (v - values[j * n + i]).abs() > 1e-9 {
                    return Err(Error::InvalidKernel(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(SimilarityKernel { n, storage: Storage::Dense(values), tag: KernelTag::Precomputed })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::InvalidKernel("kernel rows must have length n".into()));
            }
            values.extend_from_slice(r);
        }
        SimilarityKernel::from_dense(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> KernelTag {
        self.tag
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    /// Neighbor count for sparse kernels.
    pub fn neighbors(&self) -> Option<usize> {
        match &self.storage {
            Storage::Dense(_) => None,
            Storage::Sparse { k, .. } => Some(*k),
        }
    }

    /// Row-major values of a dense kernel.
    pub fn dense_values(&self) -> Option<&[f64]> {
        match &self.storage {
            Storage::Dense(v) => Some(v),
            Storage::Sparse { .. } => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense(v) => v[i * self.n + j],
            Storage::Sparse { rows, .. } => rows[i]
                .binary_search_by_key(&j, |&(c, _)| c)
                .map_or(0.0, |p| rows[i][p].1),
        }
    }

    /// Distance view `1 - s_ij`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        1.0 - self.get(i, j)
    }

    /// Stored entries of row `i`. Dense rows yield every column.
    pub fn row_entries(&self, i: usize) -> RowEntries<'_> {
        match &self.storage {
            Storage::Dense(v) => RowEntries::Dense { row: &v[i * self.n..(i + 1) * self.n], at: 0 },
            Storage::Sparse { rows, .. } => RowEntries::Sparse(rows[i].iter()),
        }
    }

    /// Number of stored entries in row `i`.
    pub fn row_len(&self, i: usize) -> usize {
        match &self.storage {
            Storage::Dense(_) => self.n,
            Storage::Sparse { rows, .. } => rows[i].len(),
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(v) => v.clone(),
            Storage::Sparse { rows, .. } => {
                let mut out = vec![0.0; self.n * self.n];
                for (i, row) in rows.iter().enumerate() {
                    for &(j, s) in row {
                        out[i * self.n + j] = s;
                    }
                }
                out
            }
        }
    }

    /// Dense principal submatrix on `indices` (in that order).
    pub fn submatrix(&self, indices: &[usize]) -> Result<SimilarityKernel> {
        for &i in indices {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, n: self.n });
            }
        }
        let m = indices.len();
        let mut values = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                values.push(self.get(i, j));
            }
        }
        Ok(SimilarityKernel { n: m, storage: Storage::Dense(values), tag: self.tag })
    }

    /// Cross kernel whose columns are the ground elements `cols`, rows all of V.
    pub fn columns(&self, cols: &[usize]) -> Result<CrossKernel> {
        for &j in cols {
            if j >= self.n {
                return Err(Error::IndexOutOfRange { index: j, n: self.n });
            }
        }
        let mut values = Vec::with_capacity(self.n * cols.len());
        for i in 0..self.n {
            for &j in cols {
                values.push(self.get(i, j));
            }
        }
        CrossKernel::from_values(self.n, cols.len(), values)
    }
}

/// Iterator over `(column, similarity)` pairs of a kernel row.
pub enum RowEntries<'a> {
    Dense { row: &'a [f64], at: usize },
    Sparse(std::slice::Iter<'a, (usize, f64)>),
}

impl Iterator for RowEntries<'_> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<(usize, f64)> {
        match self {
            RowEntries::Dense { row, at } => {
                let v = *row.get(*at)?;
                *at += 1;
                Some((*at - 1, v))
            }
            RowEntries::Sparse(it) => it.next().copied(),
        }
    }
}

/// Rectangular similarity matrix between two point sets (rows x cols).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossKernel {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl CrossKernel {
    pub fn from_values(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::InvalidKernel(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                values.len()
            )));
        }
        if let Some(p) = values.iter().position(|v| !v.is_finite() || !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidKernel(format!(
                "cross entry ({}, {}) = {} is outside [0, 1]",
                p / cols.max(1),
                p % cols.max(1),
                values[p]
            )));
        }
        Ok(CrossKernel { rows, cols, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::new();
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(Error::InvalidKernel("ragged cross kernel".into()));
            }
            values.extend_from_slice(r.as_ref());
        }
        CrossKernel::from_values(rows.len(), cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> CrossKernel {
        let mut values = vec![0.0; self.values.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                values[j * self.rows + i] = self.values[i * self.cols + j];
            }
        }
        CrossKernel { rows: self.cols, cols: self.rows, values }
    }
}

struct Prepared<'a> {
    data: &'a FeatureMatrix,
    norms: Vec<f64>,
    metric: Metric,
}

impl<'a> Prepared<'a> {
    fn new(data: &'a FeatureMatrix, metric: Metric) -> Result<Self> {
        let norms: Vec<f64> = (0..data.rows())
            .map(|i| data.row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect();
        if metric == Metric::Cosine {
            if let Some(row) = norms.iter().position(|&v| v == 0.0) {
                return Err(Error::ZeroNormRow { row });
            }
        }
        Ok(Prepared { data, norms, metric })
    }
}

fn similarity(metric: Metric, a: &[f64], b: &[f64], norm_a: f64, norm_b: f64) -> f64 {
    match metric {
        Metric::Cosine => {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            (dot / (norm_a * norm_b)).clamp(0.0, 1.0)
        }
        Metric::Euclidean => {
            let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            1.0 / (1.0 + d2.sqrt())
        }
    }
}

/// Symmetric similarity of rows `i` and `j` of the same matrix; bitwise
/// identical for `(i, j)` and `(j, i)`.
fn self_similarity(p: &Prepared<'_>, i: usize, j: usize) -> f64 {
    if i == j {
        return 1.0;
    }
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    similarity(p.metric, p.data.row(a), p.data.row(b), p.norms[a], p.norms[b])
}

/// Dense `n x n` kernel using the default execution mode.
pub fn build_dense_kernel(data: &FeatureMatrix, metric: Metric) -> Result<SimilarityKernel> {
    build_dense_kernel_with(data, metric, Execution::default())
}

pub fn build_dense_kernel_with(
    data: &FeatureMatrix,
    metric: Metric,
    exec: Execution,
) -> Result<SimilarityKernel> {
    let prep = Prepared::new(data, metric)?;
    let n = data.rows();
    let mut values = vec![0.0; n * n];
    parallel::for_each_chunk_mut(exec, &mut values, n, |i, row| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = self_similarity(&prep, i, j);
        }
    });
    Ok(SimilarityKernel { n, storage: Storage::Dense(values), tag: KernelTag::Metric(metric) })
}

/// k-nearest-neighbor kernel using the default execution mode.
pub fn build_sparse_kernel(
    data: &FeatureMatrix,
    metric: Metric,
    k_neighbors: usize,
) -> Result<SimilarityKernel> {
    build_sparse_kernel_with(data, metric, k_neighbors, Execution::default())
}

/// Each row keeps the self entry and its `k_neighbors` most similar other
/// rows (ties to the smaller index); the graph is then symmetrized by union,
/// so rows can end up holding more than `k_neighbors + 1` entries.
pub fn build_sparse_kernel_with(
    data: &FeatureMatrix,
    metric: Metric,
    k_neighbors: usize,
    exec: Execution,
) -> Result<SimilarityKernel> {
    let n = data.rows();
    if k_neighbors == 0 || k_neighbors >= n {
        return Err(Error::InvalidNeighbors { k: k_neighbors, n });
    }
    let prep = Prepared::new(data, metric)?;
    let knn: Vec<Vec<(usize, f64)>> = parallel::map_range(exec, n, |i| {
        let mut cand: Vec<(usize, f64)> =
            (0..n).filter(|&j| j != i).map(|j| (j, self_similarity(&prep, i, j))).collect();
        let by_rank = |a: &(usize, f64), b: &(usize, f64)| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0));
        if k_neighbors < cand.len() {
            cand.select_nth_unstable_by(k_neighbors - 1, by_rank);
            cand.truncate(k_neighbors);
        }
        cand
    });

    let mut rows: Vec<Vec<(usize, f64)>> = (0..n).map(|i| vec![(i, 1.0)]).collect();
    for (i, nbrs) in knn.iter().enumerate() {
        for &(j, s) in nbrs {
            rows[i].push((j, s));
            rows[j].push((i, s));
        }
    }
    for row in &mut rows {
        row.sort_by_key(|&(j, _)| j);
        row.dedup_by_key(|e| e.0);
    }
    Ok(SimilarityKernel {
        n,
        storage: Storage::Sparse { k: k_neighbors, rows },
        tag: KernelTag::Metric(metric),
    })
}

/// Similarities between every row of `a` and every row of `b`.
pub fn build_cross_kernel(a: &FeatureMatrix, b: &FeatureMatrix, metric: Metric) -> Result<CrossKernel> {
    build_cross_kernel_with(a, b, metric, Execution::default())
}

pub fn build_cross_kernel_with(
    a: &FeatureMatrix,
    b: &FeatureMatrix,
    metric: Metric,
    exec: Execution,
) -> Result<CrossKernel> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch { expected: a.dims(), found: b.dims() });
    }
    let pa = Prepared::new(a, metric)?;
    let pb = Prepared::new(b, metric).map_err(|e| match e {
        Error::ZeroNormRow { row } => {
            Error::InvalidData(format!("second matrix row {row} has zero norm"))
        }
        other => other,
    })?;
    let cols = b.rows();
    let mut values = vec![0.0; a.rows() * cols];
    parallel::for_each_chunk_mut(exec, &mut values, cols, |i, row| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = similarity(metric, a.row(i), b.row(j), pa.norms[i], pb.norms[j]);
        }
    });
    Ok(CrossKernel { rows: a.rows(), cols, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(rows: &[&[f64]]) -> FeatureMatrix {
        FeatureMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identical_points_have_unit_similarity() {
        let d = fm(&[&[0.3, 0.4], &[0.3, 0.4]]);
        for metric in [Metric::Cosine, Metric::Euclidean] {
            let k = build_dense_kernel(&d, metric).unwrap();
            assert!((k.get(0, 1) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn euclidean_map() {
        let d = fm(&[&[0.0, 0.0], &[3.0, 4.0]]);
        let k = build_dense_kernel(&d, Metric::Euclidean).unwrap();
        assert!((k.get(0, 1) - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(k.get(0, 0), 1.0);
    }

    #[test]
    fn orthogonal_cosine_is_zero_and_negative_is_clamped() {
        let d = fm(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0]]);
        let k = build_dense_kernel(&d, Metric::Cosine).unwrap();
        assert_eq!(k.get(0, 1), 0.0);
        assert_eq!(k.get(0, 2), 0.0);
    }

    #[test]
    fn zero_norm_row_is_named() {
        let d = fm(&[&[1.0, 0.0], &[0.0, 0.0]]);
        match build_dense_kernel(&d, Metric::Cosine) {
            Err(Error::ZeroNormRow { row }) => assert_eq!(row, 1),
            other => panic!("unexpected {other:?}"),
        }
        // Euclidean tolerates the origin.
        assert!(build_dense_kernel(&d, Metric::Euclidean).is_ok());
    }

    #[test]
    fn sparse_collinear_k1() {
        // 0 --1-- 1 --2-- 2 : nearest of 0 is 1, of 1 is 0, of 2 is 1
        let d = fm(&[&[0.0], &[1.0], &[3.0]]);
        let k = build_sparse_kernel(&d, Metric::Euclidean, 1).unwrap();
        let cols = |i: usize| k.row_entries(i).map(|(j, _)| j).collect::<Vec<_>>();
        assert_eq!(cols(0), vec![0, 1]);
        assert_eq!(cols(1), vec![0, 1, 2]);
        assert_eq!(cols(2), vec![1, 2]);
        assert_eq!(k.get(0, 2), 0.0);
    }

    #[test]
    fn sparse_full_neighborhood_matches_dense() {
        let d = fm(&[&[0.0, 1.0], &[2.0, 0.5], &[1.0, 1.0], &[4.0, 3.0]]);
        for metric in [Metric::Cosine, Metric::Euclidean] {
            let dense = build_dense_kernel(&d, metric).unwrap();
            let sparse = build_sparse_kernel(&d, metric, 3).unwrap();
            assert_eq!(dense.to_dense(), sparse.to_dense());
        }
    }

    #[test]
    fn sparse_ties_prefer_lower_index() {
        let d = fm(&[&[0.0], &[1.0], &[1.0], &[1.0]]);
        let k = build_sparse_kernel(&d, Metric::Euclidean, 1).unwrap();
        // row 0: the three duplicates tie; index 1 wins
        assert!(k.get(0, 1) > 0.0);
        assert_eq!(k.get(0, 2), 0.0);
        // row 3: 1 and 2 tie at distance 0; 1 wins
        assert_eq!(k.get(3, 1), 1.0);
        assert_eq!(k.get(3, 2), 0.0);
    }

    #[test]
    fn sparse_rejects_bad_k() {
        let d = fm(&[&[0.0], &[1.0]]);
        assert!(matches!(
            build_sparse_kernel(&d, Metric::Euclidean, 2),
            Err(Error::InvalidNeighbors { .. })
        ));
        assert!(build_sparse_kernel(&d, Metric::Euclidean, 0).is_err());
    }

    #[test]
    fn cross_kernel_cases() {
        let a = fm(&[&[0.0, 0.0], &[1.0, 2.0]]);
        let b = fm(&[&[3.0, 4.0]]);
        let c = build_cross_kernel(&a, &b, Metric::Euclidean).unwrap();
        assert_eq!((c.rows(), c.cols()), (2, 1));
        assert!((c.get(0, 0) - 1.0 / 6.0).abs() < 1e-15);

        let self_cross = build_cross_kernel(&a, &a, Metric::Euclidean).unwrap();
        let dense = build_dense_kernel(&a, Metric::Euclidean).unwrap();
        assert_eq!(self_cross.values(), dense.dense_values().unwrap());

        let q = fm(&[&[0.0, 0.0]]);
        let col = build_cross_kernel(&a, &q, Metric::Euclidean).unwrap();
        assert_eq!(col.get(0, 0), dense.get(0, 0));
        assert_eq!(col.get(1, 0), dense.get(1, 0));

        let bad = fm(&[&[1.0]]);
        assert!(matches!(
            build_cross_kernel(&a, &bad, Metric::Euclidean),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn from_dense_validation() {
        assert!(SimilarityKernel::from_rows(&[[1.0, 0.5], [0.4, 1.0]]).is_err());
        assert!(SimilarityKernel::from_rows(&[[1.0, 1.5], [1.5, 1.0]]).is_err());
        let k = SimilarityKernel::from_rows(&[[1.0, 0.5], [0.5, 1.0]]).unwrap();
        assert_eq!(k.distance(0, 1), 0.5);
        assert_eq!(k.tag(), KernelTag::Precomputed);
    }

    #[test]
    fn feature_matrix_rejects_non_finite() {
        assert!(FeatureMatrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(FeatureMatrix::new(0, 2, vec![]).is_err());
        assert!(FeatureMatrix::new(2, 2, vec![1.0; 3]).is_err());
    }
}
