use crate::error::{Error, Result};
use crate::functions::FacilityLocation;
use crate::kernel::SimilarityKernel;
use crate::set_function::{InstanceId, Objective, Properties};

use super::{PrivateContext, QueryContext};

fn scaled(v: Vec<f64>, by: f64) -> Vec<f64> {
    v.into_iter().map(|x| x * by).collect()
}

/// FLVMI: `Σ_{i∈V} min(max_{j∈A} S_ij, η max_{j∈Q} S_ij)`.
pub fn fl_vmi(kernel: &SimilarityKernel, query: &QueryContext) -> Result<FacilityLocation> {
    query.0.check_ground(kernel.n())?;
    let caps = scaled(query.0.row_max(), query.eta());
    FacilityLocation::clamped("flvmi", kernel, Some(caps), None)
}

/// FLCG: `Σ_{i∈V} max(max_{j∈A} S_ij - ν max_{j∈P} S_ij, 0)`.
pub fn fl_cg(kernel: &SimilarityKernel, private: &PrivateContext) -> Result<FacilityLocation> {
    private.0.check_ground(kernel.n())?;
    let offsets = scaled(private.0.row_max(), private.nu());
    FacilityLocation::clamped("flcg", kernel, None, Some(offsets))
}

/// FLCMI: `Σ_{i∈V} max(min(max_{j∈A} S_ij, η max_{j∈Q} S_ij) - ν max_{j∈P} S_ij, 0)`.
pub fn fl_cmi(kernel: &SimilarityKernel, query: &QueryContext, private: &PrivateContext) -> Result<FacilityLocation> {
    query.0.check_ground(kernel.n())?;
    private.0.check_ground(kernel.n())?;
    let caps = scaled(query.0.row_max(), query.eta());
    let offsets = scaled(private.0.row_max(), private.nu());
    FacilityLocation::clamped("flcmi", kernel, Some(caps), Some(offsets))
}

/// FLQMI: `Σ_{i∈Q} max_{j∈A} S_ij + η Σ_{i∈A} max_{j∈Q} S_ij`.
///
/// Needs only the query cross kernel. With `η = 0` the value saturates once
/// every query item has its best match in `A`.
#[derive(Debug, Clone)]
pub struct FlQmi {
    id: InstanceId,
    /// `|V| x |Q|`, row-major by ground element
    cross: Vec<f64>,
    queries: usize,
    /// `η max_{j∈Q} S_ij`
    modular: Vec<f64>,
}

impl FlQmi {
    pub fn new(query: &QueryContext) -> Result<Self> {
        let cross = query.cross();
        if cross.rows() == 0 {
            return Err(Error::InvalidConfig("ground set must be non-empty".into()));
        }
        Ok(FlQmi {
            id: InstanceId::fresh(),
            cross: cross.values().to_vec(),
            queries: cross.cols(),
            modular: scaled(query.0.row_max(), query.eta()),
        })
    }

    fn row(&self, e: usize) -> &[f64] {
        &self.cross[e * self.queries..(e + 1) * self.queries]
    }
}

pub struct FlQmiStat {
    /// `max_{j∈A} S_qj` per query item
    best: Vec<f64>,
    value: f64,
}

impl Objective for FlQmi {
    type Stat = FlQmiStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "flqmi"
    }

    fn size(&self) -> usize {
        self.modular.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut best = vec![0.0f64; self.queries];
        let mut total = 0.0;
        for &e in members {
            for (b, &s) in best.iter_mut().zip(self.row(e)) {
                *b = b.max(s);
            }
            total += self.modular[e];
        }
        Ok(best.iter().sum::<f64>() + total)
    }

    fn empty_stat(&self) -> Result<FlQmiStat> {
        Ok(FlQmiStat { best: vec![0.0; self.queries], value: 0.0 })
    }

    fn stat_gain(&self, stat: &FlQmiStat, e: usize) -> Result<f64> {
        let cover: f64 = stat.best.iter().zip(self.row(e)).map(|(&b, &s)| (s - b).max(0.0)).sum();
        Ok(cover + self.modular[e])
    }

    fn stat_insert(&self, stat: &mut FlQmiStat, e: usize) -> Result<()> {
        stat.value += self.stat_gain(stat, e)?;
        let row = &self.cross[e * self.queries..(e + 1) * self.queries];
        for (b, &s) in stat.best.iter_mut().zip(row) {
            *b = b.max(s);
        }
        Ok(())
    }

    fn stat_value(&self, stat: &FlQmiStat) -> Result<f64> {
        Ok(stat.value)
    }
}
