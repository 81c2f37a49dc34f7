//! Log-determinant of a regularized kernel submatrix.
//!
//! Direct evaluation factors `L_X + reg·I` with a Cholesky decomposition.
//! The memoized path follows the incremental factorization used for fast
//! greedy MAP inference in DPPs: every candidate `i` keeps the row `c_i` of
//! the growing triangular factor and its residual pivot `d_i^2`, so the gain
//! of adding `i` is `ln d_i^2` and an insertion costs `O(n·|A|)`.

use crate::error::{Error, Result};
use crate::kernel::SimilarityKernel;
use crate::linalg;
use crate::set_function::{InstanceId, Objective, Properties};

use super::check_parameter;

/// Diagonal regularization applied when none is given.
pub const DEFAULT_REGULARIZATION: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct LogDeterminant {
    id: InstanceId,
    name: &'static str,
    n: usize,
    /// Row-major `n x n`, symmetric.
    matrix: Vec<f64>,
    reg: f64,
}

impl LogDeterminant {
    pub fn new(kernel: &SimilarityKernel, reg: f64) -> Result<Self> {
        let values = kernel
            .dense_values()
            .ok_or_else(|| Error::InvalidConfig("log-determinant requires a dense kernel".into()))?;
        LogDeterminant::from_matrix("log_determinant", kernel.n(), values.to_vec(), reg)
    }

    /// Any symmetric matrix, e.g. a Schur complement of a larger kernel.
    pub(crate) fn from_matrix(name: &'static str, n: usize, matrix: Vec<f64>, reg: f64) -> Result<Self> {
        check_parameter("reg", reg)?;
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.len() });
        }
        Ok(LogDeterminant { id: InstanceId::fresh(), name, n, matrix, reg })
    }

    pub fn regularization(&self) -> f64 {
        self.reg
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> f64 {
        let v = self.matrix[i * self.n + j];
        if i == j {
            v + self.reg
        } else {
            v
        }
    }
}

pub struct LogDetStat {
    /// Row of the triangular factor for each candidate, one entry per insertion.
    factor: Vec<Vec<f64>>,
    pivots: Vec<f64>,
    selected: Vec<bool>,
    value: f64,
}

impl Objective for LogDeterminant {
    type Stat = LogDetStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.n
    }

    fn flags(&self) -> Properties {
        Properties::SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let m = members.len();
        let mut sub = Vec::with_capacity(m * m);
        for &i in members {
            for &j in members {
                sub.push(self.entry(i, j));
            }
        }
        let chol = linalg::cholesky(m, &sub).map_err(|e| match e {
            Error::NotPositiveDefinite { pivot, value } => {
                Error::NotPositiveDefinite { pivot: members[pivot], value }
            }
            other => other,
        })?;
        Ok(linalg::cholesky_log_det(m, &chol))
    }

    fn empty_stat(&self) -> Result<LogDetStat> {
        Ok(LogDetStat {
            factor: vec![Vec::new(); self.n],
            pivots: (0..self.n).map(|i| self.entry(i, i)).collect(),
            selected: vec![false; self.n],
            value: 0.0,
        })
    }

    fn stat_gain(&self, stat: &LogDetStat, e: usize) -> Result<f64> {
        let p = stat.pivots[e];
        if p <= 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: e, value: p });
        }
        Ok(p.ln())
    }

    fn stat_insert(&self, stat: &mut LogDetStat, e: usize) -> Result<()> {
        let gain = self.stat_gain(stat, e)?;
        let d = stat.pivots[e].sqrt();
        let ce = std::mem::take(&mut stat.factor[e]);
        for i in 0..self.n {
            if i == e || stat.selected[i] {
                continue;
            }
            let ci = &mut stat.factor[i];
            let dot: f64 = ce.iter().zip(ci.iter()).map(|(a, b)| a * b).sum();
            let v = (self.entry(e, i) - dot) / d;
            ci.push(v);
            stat.pivots[i] -= v * v;
        }
        stat.factor[e] = ce;
        stat.selected[e] = true;
        stat.value += gain;
        Ok(())
    }

    fn stat_value(&self, stat: &LogDetStat) -> Result<f64> {
        Ok(stat.value)
    }
}
