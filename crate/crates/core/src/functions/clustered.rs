use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{ClusterMap, SimilarityKernel};
use crate::set_function::{Curvature, InstanceId, MemoState, Objective, Properties, SetFunction, Subset};

/// Mixture `f(A) = Σ_l f_l(A ∩ C_l)`, where `f_l` lives on cluster `C_l`
/// with local indices in ascending order of the global ones.
pub struct ClusteredFunction {
    id: InstanceId,
    name: String,
    map: ClusterMap,
    /// position of each ground element inside its cluster
    local: Vec<usize>,
    parts: Vec<Arc<dyn SetFunction>>,
    props: Properties,
}

/// Principal submatrix of `kernel` for every cluster.
pub fn cluster_kernels(kernel: &SimilarityKernel, map: &ClusterMap) -> Result<Vec<SimilarityKernel>> {
    if kernel.n() != map.n() {
        return Err(Error::DimensionMismatch { expected: map.n(), found: kernel.n() });
    }
    map.clusters().iter().map(|members| kernel.submatrix(members)).collect()
}

/// Builds one part per cluster kernel with `builder`.
pub fn clustered_function<B>(map: &ClusterMap, kernels: Vec<SimilarityKernel>, builder: B) -> Result<ClusteredFunction>
where
    B: Fn(&SimilarityKernel) -> Result<Arc<dyn SetFunction>>,
{
    let parts = build_parts(map, kernels, builder)?;
    let name = format!("clustered({})", parts[0].name());
    ClusteredFunction::new(name, map, parts)
}

fn build_parts<B>(map: &ClusterMap, kernels: Vec<SimilarityKernel>, builder: B) -> Result<Vec<Arc<dyn SetFunction>>>
where
    B: Fn(&SimilarityKernel) -> Result<Arc<dyn SetFunction>>,
{
    if kernels.len() != map.k() {
        return Err(Error::DimensionMismatch { expected: map.k(), found: kernels.len() });
    }
    kernels.iter().map(builder).collect()
}

impl ClusteredFunction {
    /// `parts[l]` must have ground size `|C_l|`.
    pub fn new(name: impl Into<String>, map: &ClusterMap, parts: Vec<Arc<dyn SetFunction>>) -> Result<Self> {
        let clusters = map.clusters();
        if parts.len() != clusters.len() {
            return Err(Error::DimensionMismatch { expected: clusters.len(), found: parts.len() });
        }
        for (members, part) in clusters.iter().zip(&parts) {
            if part.ground_size() != members.len() {
                return Err(Error::DimensionMismatch { expected: members.len(), found: part.ground_size() });
            }
        }
        let mut local = vec![0; map.n()];
        for members in &clusters {
            for (pos, &e) in members.iter().enumerate() {
                local[e] = pos;
            }
        }
        let all_sub = parts.iter().all(|p| p.properties().is_submodular());
        let props = Properties {
            curvature: if all_sub { Curvature::Submodular } else { Curvature::Neither },
            monotone: parts.iter().all(|p| p.properties().monotone),
        };
        Ok(ClusteredFunction { id: InstanceId::fresh(), name: name.into(), map: map.clone(), local, parts, props })
    }

    pub(crate) fn from_kernels<B>(name: &str, map: &ClusterMap, kernels: Vec<SimilarityKernel>, builder: B) -> Result<Self>
    where
        B: Fn(&SimilarityKernel) -> Result<Arc<dyn SetFunction>>,
    {
        let parts = build_parts(map, kernels, builder)?;
        ClusteredFunction::new(name, map, parts)
    }

    pub fn cluster_map(&self) -> &ClusterMap {
        &self.map
    }
}

pub struct ClusteredStat {
    memos: Vec<MemoState>,
}

impl Objective for ClusteredFunction {
    type Stat = ClusteredStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.map.n()
    }

    fn flags(&self) -> Properties {
        self.props
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut split = vec![Vec::new(); self.parts.len()];
        for &e in members {
            split[self.map.cluster_of(e)].push(self.local[e]);
        }
        let mut total = 0.0;
        for (part, locals) in self.parts.iter().zip(split) {
            if !locals.is_empty() {
                total += part.evaluate(&Subset::new(locals)?)?;
            }
        }
        Ok(total)
    }

    fn empty_stat(&self) -> Result<ClusteredStat> {
        Ok(ClusteredStat { memos: self.parts.iter().map(|p| p.new_memo()).collect::<Result<_>>()? })
    }

    fn stat_gain(&self, stat: &ClusteredStat, e: usize) -> Result<f64> {
        let c = self.map.cluster_of(e);
        self.parts[c].marginal_gain_with_memo(&stat.memos[c], self.local[e])
    }

    fn stat_insert(&self, stat: &mut ClusteredStat, e: usize) -> Result<()> {
        let c = self.map.cluster_of(e);
        self.parts[c].update_memo(&mut stat.memos[c], self.local[e])
    }

    fn stat_value(&self, stat: &ClusteredStat) -> Result<f64> {
        self.parts.iter().zip(&stat.memos).map(|(p, m)| p.eval_with_memo(m)).sum()
    }
}
