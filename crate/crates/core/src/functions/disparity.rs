//! Dispersion functions over distances `d_ij = 1 - s_ij`, both taken over
//! unordered pairs of distinct elements.

use crate::error::Result;
use crate::kernel::SimilarityKernel;
use crate::set_function::{Curvature, InstanceId, Objective, Properties};

/// `Σ_{i<j∈X} d_ij`. Supermodular and monotone.
#[derive(Debug, Clone)]
pub struct DisparitySum {
    id: InstanceId,
    kernel: SimilarityKernel,
}

impl DisparitySum {
    pub fn new(kernel: &SimilarityKernel) -> Self {
        DisparitySum { id: InstanceId::fresh(), kernel: kernel.clone() }
    }
}

pub struct DSumStat {
    /// `Σ_{j∈A} d_ij` for every `i`
    sums: Vec<f64>,
    value: f64,
}

impl Objective for DisparitySum {
    type Stat = DSumStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "disparity_sum"
    }

    fn size(&self) -> usize {
        self.kernel.n()
    }

    fn flags(&self) -> Properties {
        Properties { curvature: Curvature::Supermodular, monotone: true }
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut total = 0.0;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                total += self.kernel.distance(i, j);
            }
        }
        Ok(total)
    }

    fn empty_stat(&self) -> Result<DSumStat> {
        Ok(DSumStat { sums: vec![0.0; self.kernel.n()], value: 0.0 })
    }

    fn stat_gain(&self, stat: &DSumStat, e: usize) -> Result<f64> {
        Ok(stat.sums[e])
    }

    fn stat_insert(&self, stat: &mut DSumStat, e: usize) -> Result<()> {
        stat.value += stat.sums[e];
        for (i, s) in stat.sums.iter_mut().enumerate() {
            if i != e {
                *s += self.kernel.distance(i, e);
            }
        }
        Ok(())
    }

    fn stat_value(&self, stat: &DSumStat) -> Result<f64> {
        Ok(stat.value)
    }
}

/// `min_{i<j∈X} d_ij`, 0 when `|X| ≤ 1`. Neither submodular nor monotone.
#[derive(Debug, Clone)]
pub struct DisparityMin {
    id: InstanceId,
    kernel: SimilarityKernel,
}

impl DisparityMin {
    pub fn new(kernel: &SimilarityKernel) -> Self {
        DisparityMin { id: InstanceId::fresh(), kernel: kernel.clone() }
    }
}

pub struct DMinStat {
    min_pair: Option<f64>,
    /// `min_{j∈A} d_ij`
    near: Vec<f64>,
    count: usize,
}

impl DMinStat {
    fn current(&self) -> f64 {
        self.min_pair.unwrap_or(0.0)
    }
}

impl Objective for DisparityMin {
    type Stat = DMinStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "disparity_min"
    }

    fn size(&self) -> usize {
        self.kernel.n()
    }

    fn flags(&self) -> Properties {
        Properties { curvature: Curvature::Neither, monotone: false }
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut best = f64::INFINITY;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                best = best.min(self.kernel.distance(i, j));
            }
        }
        Ok(if best.is_finite() { best } else { 0.0 })
    }

    fn empty_stat(&self) -> Result<DMinStat> {
        Ok(DMinStat { min_pair: None, near: vec![f64::INFINITY; self.kernel.n()], count: 0 })
    }

    fn stat_gain(&self, stat: &DMinStat, e: usize) -> Result<f64> {
        if stat.count == 0 {
            return Ok(0.0);
        }
        let next = stat.min_pair.map_or(stat.near[e], |m| m.min(stat.near[e]));
        Ok(next - stat.current())
    }

    fn stat_insert(&self, stat: &mut DMinStat, e: usize) -> Result<()> {
        if stat.count > 0 {
            let d = stat.near[e];
            stat.min_pair = Some(stat.min_pair.map_or(d, |m| m.min(d)));
        }
        for (i, v) in stat.near.iter_mut().enumerate() {
            if i != e {
                *v = v.min(self.kernel.distance(i, e));
            }
        }
        stat.count += 1;
        Ok(())
    }

    fn stat_value(&self, stat: &DMinStat) -> Result<f64> {
        Ok(stat.current())
    }
}
