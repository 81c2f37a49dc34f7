use crate::error::Result;
use crate::functions::GraphCut;
use crate::kernel::SimilarityKernel;
use crate::set_function::{InstanceId, Objective, Properties};

use super::{PrivateContext, QueryContext};

/// GCMI: `2λη Σ_{i∈A} Σ_{j∈Q} S_ij`, a modular function.
#[derive(Debug, Clone)]
pub struct GcMi {
    id: InstanceId,
    weights: Vec<f64>,
}

impl GcMi {
    pub fn new(lambda: f64, query: &QueryContext) -> Result<Self> {
        crate::functions::check_parameter("lambda", lambda)?;
        let scale = 2.0 * lambda * query.eta();
        let weights = query.0.row_sum().into_iter().map(|s| scale * s).collect();
        Ok(GcMi { id: InstanceId::fresh(), weights })
    }

    /// Singleton values, which are also every marginal gain.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub struct GcMiStat {
    value: f64,
}

impl Objective for GcMi {
    type Stat = GcMiStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "gcmi"
    }

    fn size(&self) -> usize {
        self.weights.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        Ok(members.iter().map(|&e| self.weights[e]).sum())
    }

    fn empty_stat(&self) -> Result<GcMiStat> {
        Ok(GcMiStat { value: 0.0 })
    }

    fn stat_gain(&self, _: &GcMiStat, e: usize) -> Result<f64> {
        Ok(self.weights[e])
    }

    fn stat_insert(&self, stat: &mut GcMiStat, e: usize) -> Result<()> {
        stat.value += self.weights[e];
        Ok(())
    }

    fn stat_value(&self, stat: &GcMiStat) -> Result<f64> {
        Ok(stat.value)
    }
}

/// GCCG: `f_λ(A) - 2λν Σ_{i∈A, j∈P} S_ij`.
pub fn gc_cg(kernel: &SimilarityKernel, lambda: f64, private: &PrivateContext) -> Result<GraphCut> {
    private.0.check_ground(kernel.n())?;
    let scale = 2.0 * lambda * private.nu();
    let penalty: Vec<f64> = private.0.row_sum().into_iter().map(|s| scale * s).collect();
    GraphCut::penalized("gccg", kernel, lambda, &penalty)
}
