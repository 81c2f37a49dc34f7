use crate::error::{Error, Result};
use crate::kernel::{ClusterMap, CrossKernel, SimilarityKernel};
use crate::set_function::{InstanceId, Objective, Properties};

use super::clustered::{cluster_kernels, ClusteredFunction};

/// Similarities indexed by ground element: `column(e)` yields `(i, s_ie)` for
/// every represented item `i` with a stored entry.
#[derive(Debug, Clone)]
enum Columns {
    Dense { reps: usize, data: Vec<f64> },
    /// Symmetric kNN kernel: column `e` is row `e`.
    Sparse(SimilarityKernel),
}

impl Columns {
    fn reps(&self) -> usize {
        match self {
            Columns::Dense { reps, .. } => *reps,
            Columns::Sparse(k) => k.n(),
        }
    }

    #[inline]
    fn for_each(&self, e: usize, mut f: impl FnMut(usize, f64)) {
        match self {
            Columns::Dense { reps, data } => {
                for (i, &s) in data[e * reps..(e + 1) * reps].iter().enumerate() {
                    f(i, s);
                }
            }
            Columns::Sparse(k) => {
                for (i, s) in k.row_entries(e) {
                    f(i, s);
                }
            }
        }
    }
}

/// Facility location `f(X) = Σ_{i∈U} max_{j∈X} s_ij`.
///
/// The same machinery also backs the clamped forms used by the
/// information measures, where each represented item `i` contributes
/// `max(min(m_i, cap_i) - offset_i, 0)` for `m_i = max_{j∈X} s_ij`.
#[derive(Debug, Clone)]
pub struct FacilityLocation {
    id: InstanceId,
    name: &'static str,
    n: usize,
    columns: Columns,
    caps: Option<Vec<f64>>,
    offsets: Option<Vec<f64>>,
}

impl FacilityLocation {
    /// Represented set equal to the ground set. Sparse kernels are used as
    /// stored; missing entries count as similarity 0.
    pub fn new(kernel: &SimilarityKernel) -> Self {
        let columns = match kernel.dense_values() {
            Some(v) => Columns::Dense { reps: kernel.n(), data: v.to_vec() },
            None => Columns::Sparse(kernel.clone()),
        };
        FacilityLocation {
            id: InstanceId::fresh(),
            name: "facility_location",
            n: kernel.n(),
            columns,
            caps: None,
            offsets: None,
        }
    }

    /// Separate represented set `U`; `cross` is `|U| x |V|`.
    pub fn with_represented(cross: &CrossKernel) -> Result<Self> {
        if cross.rows() == 0 || cross.cols() == 0 {
            return Err(Error::InvalidConfig("represented set and ground set must be non-empty".into()));
        }
        Ok(FacilityLocation {
            id: InstanceId::fresh(),
            name: "facility_location",
            n: cross.cols(),
            columns: Columns::Dense { reps: cross.rows(), data: cross.transpose().values().to_vec() },
            caps: None,
            offsets: None,
        })
    }

    /// Per-cluster facility location: `Σ_l Σ_{i∈C_l} max_{j∈X∩C_l} s_ij`.
    pub fn clustered(kernel: &SimilarityKernel, map: &ClusterMap) -> Result<ClusteredFunction> {
        let kernels = cluster_kernels(kernel, map)?;
        ClusteredFunction::from_kernels("facility_location(clustered)", map, kernels, |k| {
            Ok(std::sync::Arc::new(FacilityLocation::new(k)))
        })
    }

    /// Clamped variant over a square ground kernel; see the type docs.
    pub(crate) fn clamped(
        name: &'static str,
        kernel: &SimilarityKernel,
        caps: Option<Vec<f64>>,
        offsets: Option<Vec<f64>>,
    ) -> Result<Self> {
        for v in [&caps, &offsets].into_iter().flatten() {
            if v.len() != kernel.n() {
                return Err(Error::DimensionMismatch { expected: kernel.n(), found: v.len() });
            }
        }
        let mut f = FacilityLocation::new(kernel);
        f.name = name;
        f.caps = caps;
        f.offsets = offsets;
        Ok(f)
    }

    pub fn represented_size(&self) -> usize {
        self.columns.reps()
    }

    #[inline]
    fn contribution(&self, i: usize, m: f64) -> f64 {
        let capped = match &self.caps {
            Some(c) => m.min(c[i]),
            None => m,
        };
        match &self.offsets {
            Some(o) => (capped - o[i]).max(0.0),
            None => capped.max(0.0),
        }
    }

    fn plain(&self) -> bool {
        self.caps.is_none() && self.offsets.is_none()
    }
}

pub struct FlStat {
    best: Vec<f64>,
}

impl Objective for FacilityLocation {
    type Stat = FlStat;

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
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut best = vec![0.0f64; self.columns.reps()];
        for &j in members {
            self.columns.for_each(j, |i, s| {
                if s > best[i] {
                    best[i] = s;
                }
            });
        }
        Ok(best.iter().enumerate().map(|(i, &m)| self.contribution(i, m)).sum())
    }

    fn empty_stat(&self) -> Result<FlStat> {
        Ok(FlStat { best: vec![0.0; self.columns.reps()] })
    }

    fn stat_gain(&self, stat: &FlStat, e: usize) -> Result<f64> {
        let mut gain = 0.0;
        if self.plain() {
            self.columns.for_each(e, |i, s| {
                let b = stat.best[i];
                if s > b {
                    gain += s - b;
                }
            });
        } else {
            self.columns.for_each(e, |i, s| {
                let b = stat.best[i];
                if s > b {
                    gain += self.contribution(i, s) - self.contribution(i, b);
                }
            });
        }
        Ok(gain)
    }

    fn stat_insert(&self, stat: &mut FlStat, e: usize) -> Result<()> {
        self.columns.for_each(e, |i, s| {
            if s > stat.best[i] {
                stat.best[i] = s;
            }
        });
        Ok(())
    }

    fn stat_value(&self, stat: &FlStat) -> Result<f64> {
        Ok(stat.best.iter().enumerate().map(|(i, &m)| self.contribution(i, m)).sum())
    }
}
