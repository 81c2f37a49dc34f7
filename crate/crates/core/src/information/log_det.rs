//! Log-determinant measures through Schur complements.
//!
//! With `K|E = K - w² K_{·E} (K_EE + rI)^{-1} K_{E·}` (the kernel conditioned
//! on exemplars `E` at weight `w`):
//!
//! * LogDetMI is `logdet(S_A + rI) - logdet((S|Q)_A + rI)`,
//! * LogDetCG is `logdet((S|P)_A + rI)`,
//! * LogDetCMI conditions `V ∪ Q` on `P` first and then takes the MI form
//!   of the conditioned kernel.

use crate::error::{Error, Result};
use crate::functions::LogDeterminant;
use crate::kernel::{CrossKernel, SimilarityKernel};
use crate::linalg::schur_complement;
use crate::set_function::{Curvature, InstanceId, Objective, Properties};

use super::{PrivateContext, QueryContext};

fn dense(kernel: &SimilarityKernel) -> Result<&[f64]> {
    kernel
        .dense_values()
        .ok_or_else(|| Error::InvalidConfig("log-determinant measures require a dense kernel".into()))
}

/// `logdet(L1_A + rI) - logdet(L2_A + rI)` for two fixed matrices.
#[derive(Debug, Clone)]
pub struct LogDetDifference {
    id: InstanceId,
    name: &'static str,
    plain: LogDeterminant,
    conditioned: LogDeterminant,
}

impl LogDetDifference {
    fn new(name: &'static str, n: usize, plain: Vec<f64>, conditioned: Vec<f64>, reg: f64) -> Result<Self> {
        Ok(LogDetDifference {
            id: InstanceId::fresh(),
            name,
            plain: LogDeterminant::from_matrix(name, n, plain, reg)?,
            conditioned: LogDeterminant::from_matrix(name, n, conditioned, reg)?,
        })
    }
}

type Half = <LogDeterminant as Objective>::Stat;

pub struct LogDetDifferenceStat {
    plain: Half,
    conditioned: Half,
}

impl Objective for LogDetDifference {
    type Stat = LogDetDifferenceStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.plain.size()
    }

    /// Monotone, but sampled instances violate diminishing returns, so lazy
    /// evaluation is not safe.
    fn flags(&self) -> Properties {
        Properties { curvature: Curvature::Neither, monotone: true }
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        Ok(self.plain.value(members)? - self.conditioned.value(members)?)
    }

    fn empty_stat(&self) -> Result<LogDetDifferenceStat> {
        Ok(LogDetDifferenceStat { plain: self.plain.empty_stat()?, conditioned: self.conditioned.empty_stat()? })
    }

    fn stat_gain(&self, stat: &LogDetDifferenceStat, e: usize) -> Result<f64> {
        Ok(self.plain.stat_gain(&stat.plain, e)? - self.conditioned.stat_gain(&stat.conditioned, e)?)
    }

    fn stat_insert(&self, stat: &mut LogDetDifferenceStat, e: usize) -> Result<()> {
        self.plain.stat_insert(&mut stat.plain, e)?;
        self.conditioned.stat_insert(&mut stat.conditioned, e)
    }

    fn stat_value(&self, stat: &LogDetDifferenceStat) -> Result<f64> {
        Ok(self.plain.stat_value(&stat.plain)? - self.conditioned.stat_value(&stat.conditioned)?)
    }
}

/// LogDetMI: `logdet(S_A) - logdet(S_A - η² S_{A,Q} S_Q^{-1} S_{A,Q}ᵀ)`, regularized.
pub fn log_det_mi(kernel: &SimilarityKernel, reg: f64, query: &QueryContext) -> Result<LogDetDifference> {
    let n = kernel.n();
    query.0.check_ground(n)?;
    let s = dense(kernel)?;
    let qk = query.0.inner_values("query")?;
    let k = schur_complement(n, s, query.len(), query.cross().values(), qk, reg, query.eta().powi(2))?;
    LogDetDifference::new("logdetmi", n, s.to_vec(), k, reg)
}

/// LogDetCG: `logdet(S_A - ν² S_{A,P} S_P^{-1} S_{A,P}ᵀ)`, regularized.
pub fn log_det_cg(kernel: &SimilarityKernel, reg: f64, private: &PrivateContext) -> Result<LogDeterminant> {
    let n = kernel.n();
    private.0.check_ground(n)?;
    let s = dense(kernel)?;
    let pk = private.0.inner_values("private")?;
    let k = schur_complement(n, s, private.len(), private.cross().values(), pk, reg, private.nu().powi(2))?;
    LogDeterminant::from_matrix("logdetcg", n, k, reg)
}

/// LogDetCMI as the MI form of the kernel conditioned on `P`.
///
/// `query_private` is the `|Q| x |P|` cross kernel, needed to condition the
/// query block as well.
pub fn log_det_cmi(
    kernel: &SimilarityKernel,
    reg: f64,
    query: &QueryContext,
    private: &PrivateContext,
    query_private: &CrossKernel,
) -> Result<LogDetDifference> {
    let n = kernel.n();
    query.0.check_ground(n)?;
    private.0.check_ground(n)?;
    let (q, p) = (query.len(), private.len());
    if query_private.rows() != q || query_private.cols() != p {
        return Err(Error::DimensionMismatch { expected: q * p, found: query_private.rows() * query_private.cols() });
    }
    let s = dense(kernel)?;
    let qk = query.0.inner_values("query")?;
    let pk = private.0.inner_values("private")?;

    // joint kernel over V ∪ Q and its cross kernel to P
    let m = n + q;
    let mut joint = vec![0.0; m * m];
    for i in 0..n {
        joint[i * m..i * m + n].copy_from_slice(&s[i * n..(i + 1) * n]);
        for j in 0..q {
            let v = query.cross().get(i, j);
            joint[i * m + n + j] = v;
            joint[(n + j) * m + i] = v;
        }
    }
    for i in 0..q {
        joint[(n + i) * m + n..(n + i + 1) * m].copy_from_slice(&qk[i * q..(i + 1) * q]);
    }
    let mut to_private = Vec::with_capacity(m * p);
    to_private.extend_from_slice(private.cross().values());
    to_private.extend_from_slice(query_private.values());
    let c = schur_complement(m, &joint, p, &to_private, pk, reg, private.nu().powi(2))?;

    let mut c_vv = vec![0.0; n * n];
    let mut c_vq = vec![0.0; n * q];
    let mut c_qq = vec![0.0; q * q];
    for i in 0..n {
        c_vv[i * n..(i + 1) * n].copy_from_slice(&c[i * m..i * m + n]);
        c_vq[i * q..(i + 1) * q].copy_from_slice(&c[i * m + n..(i + 1) * m]);
    }
    for i in 0..q {
        c_qq[i * q..(i + 1) * q].copy_from_slice(&c[(n + i) * m + n..(n + i + 1) * m]);
    }
    let k = schur_complement(n, &c_vv, q, &c_vq, &c_qq, reg, query.eta().powi(2))?;
    LogDetDifference::new("logdetcmi", n, c_vv, k, reg)
}
