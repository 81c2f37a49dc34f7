//! Mutual information, conditional gain and conditional mutual information
//! built on top of any base set function.
//!
//! Each composition keeps memo states of the base function for the shifted
//! sets it needs (`A ∪ Q`, `A ∪ P`, `A ∪ Q ∪ P`), so its gains reuse the
//! base statistic.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::{Curvature, InstanceId, MemoState, Objective, Properties, SetFunction, Subset};

fn mask_of(set: &Subset, n: usize) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for e in set.iter() {
        if e >= n {
            return Err(Error::IndexOutOfRange { index: e, n });
        }
        mask[e] = true;
    }
    Ok(mask)
}

/// `g(A) = f(A) + f(Q) - f(A ∪ Q)`.
pub struct MutualInformation {
    id: InstanceId,
    name: String,
    base: Arc<dyn SetFunction>,
    query: Subset,
    in_query: Vec<bool>,
    query_value: f64,
    props: Properties,
}

/// Mutual information of `base` with the in-ground-set query `query`.
///
/// The result is flagged as neither sub- nor supermodular, since that holds
/// only for some bases; use [`MutualInformation::with_properties`] when the
/// base is known to give a submodular measure.
pub fn generic_mi(base: Arc<dyn SetFunction>, query: &Subset) -> Result<MutualInformation> {
    let n = base.ground_size();
    let in_query = mask_of(query, n)?;
    let query_value = base.evaluate(query)?;
    let base_props = base.properties();
    Ok(MutualInformation {
        id: InstanceId::fresh(),
        name: format!("mi({})", base.name()),
        props: Properties {
            curvature: Curvature::Neither,
            monotone: base_props.monotone && base_props.is_submodular(),
        },
        base,
        query: query.clone(),
        in_query,
        query_value,
    })
}

impl MutualInformation {
    pub fn with_properties(mut self, props: Properties) -> Self {
        self.props = props;
        self
    }

    pub fn query(&self) -> &Subset {
        &self.query
    }
}

pub struct MiStat {
    a: MemoState,
    aq: MemoState,
}

impl Objective for MutualInformation {
    type Stat = MiStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.base.ground_size()
    }

    fn flags(&self) -> Properties {
        self.props
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let a = Subset::new(members.iter().copied())?;
        Ok(self.base.evaluate(&a)? + self.query_value - self.base.evaluate(&a.union(&self.query))?)
    }

    fn empty_stat(&self) -> Result<MiStat> {
        Ok(MiStat { a: self.base.new_memo()?, aq: self.base.memo_for(&self.query)? })
    }

    fn stat_gain(&self, stat: &MiStat, e: usize) -> Result<f64> {
        let ga = self.base.marginal_gain_with_memo(&stat.a, e)?;
        if self.in_query[e] {
            Ok(ga)
        } else {
            Ok(ga - self.base.marginal_gain_with_memo(&stat.aq, e)?)
        }
    }

    fn stat_insert(&self, stat: &mut MiStat, e: usize) -> Result<()> {
        self.base.update_memo(&mut stat.a, e)?;
        if !self.in_query[e] {
            self.base.update_memo(&mut stat.aq, e)?;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &MiStat) -> Result<f64> {
        Ok(self.base.eval_with_memo(&stat.a)? + self.query_value - self.base.eval_with_memo(&stat.aq)?)
    }
}

/// `g(A) = f(A ∪ P) - f(P)`.
pub struct ConditionalGain {
    id: InstanceId,
    name: String,
    base: Arc<dyn SetFunction>,
    private: Subset,
    in_private: Vec<bool>,
    private_value: f64,
}

/// Conditional gain of `base` given the in-ground-set private set. Inherits
/// the base function's properties.
pub fn generic_cg(base: Arc<dyn SetFunction>, private: &Subset) -> Result<ConditionalGain> {
    let in_private = mask_of(private, base.ground_size())?;
    let private_value = base.evaluate(private)?;
    Ok(ConditionalGain {
        id: InstanceId::fresh(),
        name: format!("cg({})", base.name()),
        base,
        private: private.clone(),
        in_private,
        private_value,
    })
}

impl ConditionalGain {
    pub fn private(&self) -> &Subset {
        &self.private
    }
}

impl Objective for ConditionalGain {
    type Stat = MemoState;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.base.ground_size()
    }

    fn flags(&self) -> Properties {
        self.base.properties()
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let a = Subset::new(members.iter().copied())?;
        Ok(self.base.evaluate(&a.union(&self.private))? - self.private_value)
    }

    fn empty_stat(&self) -> Result<MemoState> {
        self.base.memo_for(&self.private)
    }

    fn stat_gain(&self, stat: &MemoState, e: usize) -> Result<f64> {
        if self.in_private[e] {
            Ok(0.0)
        } else {
            self.base.marginal_gain_with_memo(stat, e)
        }
    }

    fn stat_insert(&self, stat: &mut MemoState, e: usize) -> Result<()> {
        if !self.in_private[e] {
            self.base.update_memo(stat, e)?;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &MemoState) -> Result<f64> {
        Ok(self.base.eval_with_memo(stat)? - self.private_value)
    }
}

/// `g(A) = f(A ∪ P) + f(Q ∪ P) - f(A ∪ Q ∪ P) - f(P)`.
pub struct ConditionalMutualInformation {
    id: InstanceId,
    name: String,
    base: Arc<dyn SetFunction>,
    query_private: Subset,
    private: Subset,
    in_private: Vec<bool>,
    in_query_private: Vec<bool>,
    query_private_value: f64,
    private_value: f64,
    props: Properties,
}

/// Conditional mutual information; flagged like [`generic_mi`].
pub fn generic_cmi(
    base: Arc<dyn SetFunction>,
    query: &Subset,
    private: &Subset,
) -> Result<ConditionalMutualInformation> {
    let n = base.ground_size();
    mask_of(query, n)?;
    let in_private = mask_of(private, n)?;
    let query_private = query.union(private);
    let in_query_private = mask_of(&query_private, n)?;
    let base_props = base.properties();
    Ok(ConditionalMutualInformation {
        id: InstanceId::fresh(),
        name: format!("cmi({})", base.name()),
        query_private_value: base.evaluate(&query_private)?,
        private_value: base.evaluate(private)?,
        props: Properties {
            curvature: Curvature::Neither,
            monotone: base_props.monotone && base_props.is_submodular(),
        },
        base,
        query_private,
        private: private.clone(),
        in_private,
        in_query_private,
    })
}

impl ConditionalMutualInformation {
    pub fn with_properties(mut self, props: Properties) -> Self {
        self.props = props;
        self
    }
}

pub struct CmiStat {
    ap: MemoState,
    aqp: MemoState,
}

impl Objective for ConditionalMutualInformation {
    type Stat = CmiStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.base.ground_size()
    }

    fn flags(&self) -> Properties {
        self.props
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let a = Subset::new(members.iter().copied())?;
        Ok(self.base.evaluate(&a.union(&self.private))? + self.query_private_value
            - self.base.evaluate(&a.union(&self.query_private))?
            - self.private_value)
    }

    fn empty_stat(&self) -> Result<CmiStat> {
        Ok(CmiStat {
            ap: self.base.memo_for(&self.private)?,
            aqp: self.base.memo_for(&self.query_private)?,
        })
    }

    fn stat_gain(&self, stat: &CmiStat, e: usize) -> Result<f64> {
        let g_ap = if self.in_private[e] { 0.0 } else { self.base.marginal_gain_with_memo(&stat.ap, e)? };
        let g_aqp = if self.in_query_private[e] {
            0.0
        } else {
            self.base.marginal_gain_with_memo(&stat.aqp, e)?
        };
        Ok(g_ap - g_aqp)
    }

    fn stat_insert(&self, stat: &mut CmiStat, e: usize) -> Result<()> {
        if !self.in_private[e] {
            self.base.update_memo(&mut stat.ap, e)?;
        }
        if !self.in_query_private[e] {
            self.base.update_memo(&mut stat.aqp, e)?;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &CmiStat) -> Result<f64> {
        Ok(self.base.eval_with_memo(&stat.ap)? + self.query_private_value
            - self.base.eval_with_memo(&stat.aqp)?
            - self.private_value)
    }
}
