//! Set-cover information measures as set covers over filtered cover lists,
//! and probabilistic ones as probabilistic covers with adjusted weights.

use crate::error::{Error, Result};
use crate::functions::{ConceptCover, ProbCover, ProbabilisticSetCover, SetCover};
use crate::set_function::Subset;

/// A set of concepts, e.g. `Γ(Q)` for a query set `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSet {
    mask: Vec<bool>,
}

impl ConceptSet {
    pub fn from_concepts(num_concepts: usize, concepts: &[usize]) -> Result<Self> {
        let mut mask = vec![false; num_concepts];
        for &c in concepts {
            if c >= num_concepts {
                return Err(Error::IndexOutOfRange { index: c, n: num_concepts });
            }
            mask[c] = true;
        }
        Ok(ConceptSet { mask })
    }

    /// `Γ(X)` for ground elements `X` of `cover`.
    pub fn from_elements(cover: &ConceptCover, elements: &Subset) -> Result<Self> {
        let mut mask = vec![false; cover.num_concepts];
        for e in elements.iter() {
            let list = cover.covers.get(e).ok_or(Error::IndexOutOfRange { index: e, n: cover.len() })?;
            for &c in list {
                mask[c] = true;
            }
        }
        Ok(ConceptSet { mask })
    }

    pub fn contains(&self, c: usize) -> bool {
        self.mask[c]
    }

    pub fn num_concepts(&self) -> usize {
        self.mask.len()
    }
}

/// Probability that each concept is covered by some set, `P̄_u(Q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptCoverage {
    values: Vec<f64>,
}

impl ConceptCoverage {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(p) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidConfig(format!("coverage of concept {p} is {} (outside [0, 1])", values[p])));
        }
        Ok(ConceptCoverage { values })
    }

    /// Certain coverage of the listed concepts, none of the others.
    pub fn from_concepts(num_concepts: usize, concepts: &[usize]) -> Result<Self> {
        Ok(ConceptSet::from_concepts(num_concepts, concepts)?.into())
    }

    /// `1 - Π_{x∈X} (1 - p_xu)` for ground elements `X` of `cover`.
    pub fn from_elements(cover: &ProbCover, elements: &Subset) -> Result<Self> {
        if let Some(e) = elements.iter().find(|&e| e >= cover.len()) {
            return Err(Error::IndexOutOfRange { index: e, n: cover.len() });
        }
        let miss = cover.miss_probabilities(elements.as_slice());
        Ok(ConceptCoverage { values: miss.into_iter().map(|m| 1.0 - m).collect() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl From<ConceptSet> for ConceptCoverage {
    fn from(set: ConceptSet) -> Self {
        ConceptCoverage { values: set.mask.into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect() }
    }
}

fn check_concepts(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// SCMI: `w(Γ(A) ∩ Γ(Q))`.
pub fn sc_mi(cover: &ConceptCover, query: &ConceptSet) -> Result<SetCover> {
    cover.validate()?;
    check_concepts(cover.num_concepts, query.num_concepts())?;
    Ok(SetCover::restricted("scmi", cover, |c| query.contains(c)))
}

/// SCCG: `w(Γ(A) \ Γ(P))`.
pub fn sc_cg(cover: &ConceptCover, private: &ConceptSet) -> Result<SetCover> {
    cover.validate()?;
    check_concepts(cover.num_concepts, private.num_concepts())?;
    Ok(SetCover::restricted("sccg", cover, |c| !private.contains(c)))
}

/// SCCMI: `w(Γ(A) ∩ Γ(Q) \ Γ(P))`.
pub fn sc_cmi(cover: &ConceptCover, query: &ConceptSet, private: &ConceptSet) -> Result<SetCover> {
    cover.validate()?;
    check_concepts(cover.num_concepts, query.num_concepts())?;
    check_concepts(cover.num_concepts, private.num_concepts())?;
    Ok(SetCover::restricted("sccmi", cover, |c| query.contains(c) && !private.contains(c)))
}

fn reweight(
    name: &'static str,
    cover: &ProbCover,
    query: Option<&ConceptCoverage>,
    private: Option<&ConceptCoverage>,
) -> Result<ProbabilisticSetCover> {
    for c in [query, private].into_iter().flatten() {
        check_concepts(cover.num_concepts, c.values.len())?;
    }
    let weights = (0..cover.num_concepts)
        .map(|u| {
            let q = query.map_or(1.0, |c| c.values[u]);
            let p = private.map_or(1.0, |c| 1.0 - c.values[u]);
            cover.weights[u] * q * p
        })
        .collect();
    ProbabilisticSetCover::reweighted(name, cover, weights)
}

/// PSCMI: `Σ_u w_u P̄_u(A) P̄_u(Q)`.
pub fn psc_mi(cover: &ProbCover, query: &ConceptCoverage) -> Result<ProbabilisticSetCover> {
    reweight("pscmi", cover, Some(query), None)
}

/// PSCCG: `Σ_u w_u P̄_u(A) P_u(P)` where `P_u(P) = 1 - P̄_u(P)`.
pub fn psc_cg(cover: &ProbCover, private: &ConceptCoverage) -> Result<ProbabilisticSetCover> {
    reweight("psccg", cover, None, Some(private))
}

/// PSCCMI: `Σ_u w_u P̄_u(A) P̄_u(Q) P_u(P)`.
pub fn psc_cmi(cover: &ProbCover, query: &ConceptCoverage, private: &ConceptCoverage) -> Result<ProbabilisticSetCover> {
    reweight("psccmi", cover, Some(query), Some(private))
}
