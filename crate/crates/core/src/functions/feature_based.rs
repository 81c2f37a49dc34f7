use crate::error::{Error, Result};
use crate::kernel::FeatureMatrix;
use crate::set_function::{InstanceId, Objective, Properties};

use super::{check_nonnegative_finite, Concave};

/// Sparse nonnegative feature scores `m_f(x)` with feature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    num_features: usize,
    weights: Vec<f64>,
    /// `scores[x]` holds `(feature, m_f(x))` pairs
    scores: Vec<Vec<(usize, f64)>>,
    concave: Concave,
}

impl FeatureTable {
    pub fn new(num_features: usize, weights: Vec<f64>, scores: Vec<Vec<(usize, f64)>>, concave: Concave) -> Result<Self> {
        if weights.len() != num_features {
            return Err(Error::DimensionMismatch { expected: num_features, found: weights.len() });
        }
        check_nonnegative_finite("feature weights", &weights)?;
        if scores.is_empty() {
            return Err(Error::InvalidConfig("feature table needs at least one element".into()));
        }
        for (x, row) in scores.iter().enumerate() {
            for &(f, m) in row {
                if f >= num_features {
                    return Err(Error::InvalidConfig(format!("element {x} scores feature {f} of {num_features}")));
                }
                if !m.is_finite() || m < 0.0 {
                    return Err(Error::InvalidConfig(format!("element {x}: feature {f} score {m} must be >= 0")));
                }
            }
        }
        Ok(FeatureTable { num_features, weights, scores, concave })
    }

    /// Every column of `data` is a feature with unit weight; zeros are dropped.
    pub fn from_dense(data: &FeatureMatrix, concave: Concave) -> Result<Self> {
        let scores = (0..data.rows())
            .map(|x| data.row(x).iter().copied().enumerate().filter(|&(_, m)| m != 0.0).collect())
            .collect();
        FeatureTable::new(data.dims(), vec![1.0; data.dims()], scores, concave)
    }

    pub fn concave(&self) -> Concave {
        self.concave
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }
}

/// `f(X) = Σ_f w_f g(Σ_{x∈X} m_f(x))` for concave `g`.
#[derive(Debug, Clone)]
pub struct FeatureBased {
    id: InstanceId,
    table: FeatureTable,
}

impl FeatureBased {
    pub fn new(table: FeatureTable) -> Self {
        FeatureBased { id: InstanceId::fresh(), table }
    }
}

pub struct FbStat {
    totals: Vec<f64>,
}

impl FeatureBased {
    fn total_value(&self, totals: &[f64]) -> f64 {
        let g = self.table.concave;
        totals.iter().zip(&self.table.weights).map(|(&t, &w)| w * g.apply(t)).sum()
    }
}

impl Objective for FeatureBased {
    type Stat = FbStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "feature_based"
    }

    fn size(&self) -> usize {
        self.table.scores.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut totals = vec![0.0; self.table.num_features];
        for &x in members {
            for &(f, m) in &self.table.scores[x] {
                totals[f] += m;
            }
        }
        Ok(self.total_value(&totals))
    }

    fn empty_stat(&self) -> Result<FbStat> {
        Ok(FbStat { totals: vec![0.0; self.table.num_features] })
    }

    fn stat_gain(&self, stat: &FbStat, e: usize) -> Result<f64> {
        let g = self.table.concave;
        Ok(self.table.scores[e]
            .iter()
            .map(|&(f, m)| {
                let t = stat.totals[f];
                self.table.weights[f] * (g.apply(t + m) - g.apply(t))
            })
            .sum())
    }

    fn stat_insert(&self, stat: &mut FbStat, e: usize) -> Result<()> {
        for &(f, m) in &self.table.scores[e] {
            stat.totals[f] += m;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &FbStat) -> Result<f64> {
        Ok(self.total_value(&stat.totals))
    }
}
