use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::set_function::{InstanceId, Objective, Properties};

use super::check_nonnegative_finite;

/// Weighted concepts and the concepts each ground element covers.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ConceptCover {
    pub num_concepts: usize,
    pub weights: Vec<f64>,
    pub covers: Vec<Vec<usize>>,
}

impl ConceptCover {
    pub fn new(num_concepts: usize, weights: Vec<f64>, covers: Vec<Vec<usize>>) -> Result<Self> {
        let c = ConceptCover { num_concepts, weights, covers };
        c.validate()?;
        Ok(c)
    }

    /// Unit weights.
    pub fn unweighted(num_concepts: usize, covers: Vec<Vec<usize>>) -> Result<Self> {
        ConceptCover::new(num_concepts, vec![1.0; num_concepts], covers)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.num_concepts {
            return Err(Error::DimensionMismatch { expected: self.num_concepts, found: self.weights.len() });
        }
        check_nonnegative_finite("weights", &self.weights)?;
        if self.covers.is_empty() {
            return Err(Error::InvalidConfig("cover lists must describe at least one element".into()));
        }
        for (x, list) in self.covers.iter().enumerate() {
            if let Some(&c) = list.iter().find(|&&c| c >= self.num_concepts) {
                return Err(Error::InvalidConfig(format!(
                    "element {x} covers concept {c}, but there are only {} concepts",
                    self.num_concepts
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ConceptCover =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("concept cover: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        ConceptCover::from_json(&text).map_err(|e| Error::Parse { path: path.into(), message: e.to_string() })
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }
}

/// Weighted set cover `f(X) = Σ_{u∈γ(X)} w_u`.
#[derive(Debug, Clone)]
pub struct SetCover {
    id: InstanceId,
    name: &'static str,
    weights: Vec<f64>,
    /// sorted and deduplicated
    covers: Vec<Vec<usize>>,
}

impl SetCover {
    pub fn new(cover: &ConceptCover) -> Result<Self> {
        cover.validate()?;
        Ok(SetCover::restricted("set_cover", cover, |_| true))
    }

    /// Set cover over the cover lists filtered to concepts where `keep` holds.
    pub(crate) fn restricted(name: &'static str, cover: &ConceptCover, keep: impl Fn(usize) -> bool) -> Self {
        let covers = cover
            .covers
            .iter()
            .map(|list| {
                let mut l: Vec<usize> = list.iter().copied().filter(|&c| keep(c)).collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        SetCover { id: InstanceId::fresh(), name, weights: cover.weights.clone(), covers }
    }
}

pub struct ScStat {
    covered: Vec<bool>,
    value: f64,
}

impl Objective for SetCover {
    type Stat = ScStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.covers.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut covered = vec![false; self.weights.len()];
        for &x in members {
            for &c in &self.covers[x] {
                covered[c] = true;
            }
        }
        Ok(covered.iter().zip(&self.weights).filter(|(c, _)| **c).map(|(_, w)| w).sum())
    }

    fn empty_stat(&self) -> Result<ScStat> {
        Ok(ScStat { covered: vec![false; self.weights.len()], value: 0.0 })
    }

    fn stat_gain(&self, stat: &ScStat, e: usize) -> Result<f64> {
        Ok(self.covers[e].iter().filter(|&&c| !stat.covered[c]).map(|&c| self.weights[c]).sum())
    }

    fn stat_insert(&self, stat: &mut ScStat, e: usize) -> Result<()> {
        stat.value += self.stat_gain(stat, e)?;
        for &c in &self.covers[e] {
            stat.covered[c] = true;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &ScStat) -> Result<f64> {
        Ok(stat.value)
    }
}
