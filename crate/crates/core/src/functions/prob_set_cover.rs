use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::set_function::{InstanceId, Objective, Properties};

use super::check_nonnegative_finite;

/// Weighted concepts and per-element coverage probabilities.
///
/// `probs[x]` lists `(concept, p_xu)` pairs; absent pairs mean `p_xu = 0`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ProbCover {
    pub num_concepts: usize,
    pub weights: Vec<f64>,
    pub probs: Vec<Vec<(usize, f64)>>,
}

impl ProbCover {
    pub fn new(num_concepts: usize, weights: Vec<f64>, probs: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let c = ProbCover { num_concepts, weights, probs };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.num_concepts {
            return Err(Error::DimensionMismatch { expected: self.num_concepts, found: self.weights.len() });
        }
        check_nonnegative_finite("weights", &self.weights)?;
        if self.probs.is_empty() {
            return Err(Error::InvalidConfig("probability lists must describe at least one element".into()));
        }
        for (x, list) in self.probs.iter().enumerate() {
            let mut seen = vec![false; self.num_concepts];
            for &(c, p) in list {
                if c >= self.num_concepts {
                    return Err(Error::InvalidConfig(format!(
                        "element {x} covers concept {c}, but there are only {} concepts",
                        self.num_concepts
                    )));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidConfig(format!("element {x}: probability {p} for concept {c}")));
                }
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidConfig(format!("element {x} lists concept {c} twice")));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ProbCover =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("probabilistic cover: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        ProbCover::from_json(&text).map_err(|e| Error::Parse { path: path.into(), message: e.to_string() })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `Π_{x∈X} (1 - p_xu)` for every concept.
    pub fn miss_probabilities(&self, members: &[usize]) -> Vec<f64> {
        let mut miss = vec![1.0; self.num_concepts];
        for &x in members {
            for &(c, p) in &self.probs[x] {
                miss[c] *= 1.0 - p;
            }
        }
        miss
    }
}

/// `f(X) = Σ_u w_u (1 - Π_{x∈X} (1 - p_xu))`.
#[derive(Debug, Clone)]
pub struct ProbabilisticSetCover {
    id: InstanceId,
    name: &'static str,
    weights: Vec<f64>,
    cover: ProbCover,
}

impl ProbabilisticSetCover {
    pub fn new(cover: &ProbCover) -> Result<Self> {
        cover.validate()?;
        Ok(ProbabilisticSetCover {
            id: InstanceId::fresh(),
            name: "probabilistic_set_cover",
            weights: cover.weights.clone(),
            cover: cover.clone(),
        })
    }

    /// Same cover with per-concept weights replaced.
    pub(crate) fn reweighted(name: &'static str, cover: &ProbCover, weights: Vec<f64>) -> Result<Self> {
        let mut f = ProbabilisticSetCover::new(cover)?;
        if weights.len() != cover.num_concepts {
            return Err(Error::DimensionMismatch { expected: cover.num_concepts, found: weights.len() });
        }
        check_nonnegative_finite("weights", &weights)?;
        f.name = name;
        f.weights = weights;
        Ok(f)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub struct PscStat {
    miss: Vec<f64>,
    value: f64,
}

impl Objective for ProbabilisticSetCover {
    type Stat = PscStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.cover.probs.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let miss = self.cover.miss_probabilities(members);
        Ok(miss.iter().zip(&self.weights).map(|(m, w)| w * (1.0 - m)).sum())
    }

    fn empty_stat(&self) -> Result<PscStat> {
        Ok(PscStat { miss: vec![1.0; self.weights.len()], value: 0.0 })
    }

    fn stat_gain(&self, stat: &PscStat, e: usize) -> Result<f64> {
        Ok(self.cover.probs[e].iter().map(|&(c, p)| self.weights[c] * stat.miss[c] * p).sum())
    }

    fn stat_insert(&self, stat: &mut PscStat, e: usize) -> Result<()> {
        stat.value += self.stat_gain(stat, e)?;
        for &(c, p) in &self.cover.probs[e] {
            stat.miss[c] *= 1.0 - p;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &PscStat) -> Result<f64> {
        Ok(stat.value)
    }
}
