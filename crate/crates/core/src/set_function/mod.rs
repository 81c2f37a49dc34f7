//! The set-function contract shared by every function in the crate.
//!
//! Implementors provide [`Objective`]: a direct evaluation plus a typed
//! pre-computed statistic that makes marginal gains incremental. The blanket
//! [`SetFunction`] impl wraps the statistic in an opaque [`MemoState`], checks
//! indices and ownership, and gives an object-safe interface used by the
//! optimizers and the generic information-measure compositions.

mod generic;

pub use generic::{generic_cg, generic_cmi, generic_mi, ConditionalGain, ConditionalMutualInformation, MutualInformation};

use std::any::Any;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static NEXT_INSTANCE: AtomicU64 = AtomicU64::new(1);

/// Identity of a function instance; memo states remember their owner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceId(u64);

impl InstanceId {
    pub fn fresh() -> Self {
        InstanceId(NEXT_INSTANCE.fetch_add(1, Ordering::Relaxed))
    }
}

/// A set of distinct ground-set indices, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    /// Fails on duplicate indices. Range is checked by the function evaluating it.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(Subset(v))
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        Subset((0..n).collect())
    }

    /// Members of the bitmask `bits` (bit `i` set means `i` is in the subset).
    pub fn from_mask(bits: u64) -> Self {
        Subset((0..64).filter(|i| bits >> i & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `self ∪ {e}`.
    pub fn with(&self, e: usize) -> Subset {
        let mut v = self.0.clone();
        if let Err(p) = v.binary_search(&e) {
            v.insert(p, e);
        }
        Subset(v)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut v: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Elements inserted into a memo, in insertion order, with a membership mask.
#[derive(Debug, Clone)]
pub struct Selection {
    order: Vec<usize>,
    mask: Vec<bool>,
}

impl Selection {
    fn new(n: usize) -> Self {
        Selection { order: Vec::new(), mask: vec![false; n] }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn to_subset(&self) -> Subset {
        Subset::new(self.order.iter().copied()).expect("selection holds distinct elements")
    }
}

/// Pre-computed statistic for one subset, owned by one selection run.
///
/// Deliberately not `Clone`: a memo advances with exactly one run.
pub struct MemoState {
    owner: InstanceId,
    selection: Selection,
    stat: Box<dyn Any + Send + Sync>,
}

impl MemoState {
    /// The subset this memo currently summarizes.
    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    pub fn subset(&self) -> Subset {
        self.selection.to_subset()
    }

    pub fn owner(&self) -> InstanceId {
        self.owner
    }

    #[cfg(test)]
    pub(crate) fn stat<T: 'static>(&self) -> Option<&T> {
        self.stat.downcast_ref()
    }
}

impl fmt::Debug for MemoState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MemoState")
            .field("owner", &self.owner)
            .field("selection", &self.selection.order)
            .finish_non_exhaustive()
    }
}

/// Diminishing-returns direction of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Submodular,
    Supermodular,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Properties {
    pub curvature: Curvature,
    pub monotone: bool,
}

impl Properties {
    pub const MONOTONE_SUBMODULAR: Properties = Properties { curvature: Curvature::Submodular, monotone: true };
    pub const SUBMODULAR: Properties = Properties { curvature: Curvature::Submodular, monotone: false };

    pub fn is_submodular(&self) -> bool {
        self.curvature == Curvature::Submodular
    }
}

/// Typed implementation side of a set function.
///
/// `value` receives sorted, distinct, in-range members. The statistic
/// methods are only called with elements not yet inserted.
pub trait Objective: Send + Sync {
    type Stat: Send + Sync + 'static;

    fn instance_id(&self) -> InstanceId;
    fn label(&self) -> &str;
    fn size(&self) -> usize;
    fn flags(&self) -> Properties;

    fn value(&self, members: &[usize]) -> Result<f64>;

    fn empty_stat(&self) -> Result<Self::Stat>;
    fn stat_gain(&self, stat: &Self::Stat, e: usize) -> Result<f64>;
    fn stat_insert(&self, stat: &mut Self::Stat, e: usize) -> Result<()>;
    fn stat_value(&self, stat: &Self::Stat) -> Result<f64>;
}

/// Object-safe set function interface.
pub trait SetFunction: Send + Sync {
    fn name(&self) -> &str;
    fn ground_size(&self) -> usize;
    fn properties(&self) -> Properties;

    /// `f(X)`; the empty set evaluates to 0.
    fn evaluate(&self, x: &Subset) -> Result<f64>;

    /// `f(X ∪ {e}) - f(X)` by two direct evaluations.
    fn marginal_gain(&self, x: &Subset, e: usize) -> Result<f64>;

    /// Memo for the empty set.
    fn new_memo(&self) -> Result<MemoState>;

    fn marginal_gain_with_memo(&self, memo: &MemoState, e: usize) -> Result<f64>;

    /// Advance `memo` from `A` to `A ∪ {e}`.
    fn update_memo(&self, memo: &mut MemoState, e: usize) -> Result<()>;

    fn eval_with_memo(&self, memo: &MemoState) -> Result<f64>;

    /// Memo for `x`, built by inserting its members in ascending order.
    fn memo_for(&self, x: &Subset) -> Result<MemoState> {
        let mut memo = self.new_memo()?;
        for e in x.iter() {
            self.update_memo(&mut memo, e)?;
        }
        Ok(memo)
    }
}

fn check_index(e: usize, n: usize) -> Result<()> {
    if e >= n {
        Err(Error::IndexOutOfRange { index: e, n })
    } else {
        Ok(())
    }
}

fn stat_of<'m, T: Objective>(f: &T, memo: &'m MemoState) -> Result<&'m T::Stat> {
    if memo.owner != f.instance_id() {
        return Err(Error::StaleMemo);
    }
    memo.stat.downcast_ref::<T::Stat>().ok_or(Error::StaleMemo)
}

impl<T: Objective> SetFunction for T {
    fn name(&self) -> &str {
        self.label()
    }

    fn ground_size(&self) -> usize {
        self.size()
    }

    fn properties(&self) -> Properties {
        self.flags()
    }

    fn evaluate(&self, x: &Subset) -> Result<f64> {
        let n = self.size();
        for e in x.iter() {
            check_index(e, n)?;
        }
        if x.is_empty() {
            return Ok(0.0);
        }
        self.value(x.as_slice())
    }

    fn marginal_gain(&self, x: &Subset, e: usize) -> Result<f64> {
        check_index(e, self.size())?;
        if x.contains(e) {
            return Err(Error::AlreadySelected(e));
        }
        Ok(self.evaluate(&x.with(e))? - self.evaluate(x)?)
    }

    fn new_memo(&self) -> Result<MemoState> {
        Ok(MemoState {
            owner: self.instance_id(),
            selection: Selection::new(self.size()),
            stat: Box::new(self.empty_stat()?),
        })
    }

    fn marginal_gain_with_memo(&self, memo: &MemoState, e: usize) -> Result<f64> {
        let stat = stat_of(self, memo)?;
        check_index(e, self.size())?;
        if memo.selection.contains(e) {
            return Err(Error::AlreadySelected(e));
        }
        self.stat_gain(stat, e)
    }

    fn update_memo(&self, memo: &mut MemoState, e: usize) -> Result<()> {
        stat_of(self, memo)?;
        check_index(e, self.size())?;
        if memo.selection.contains(e) {
            return Err(Error::AlreadySelected(e));
        }
        let stat = memo.stat.downcast_mut::<T::Stat>().ok_or(Error::StaleMemo)?;
        self.stat_insert(stat, e)?;
        memo.selection.order.push(e);
        memo.selection.mask[e] = true;
        Ok(())
    }

    fn eval_with_memo(&self, memo: &MemoState) -> Result<f64> {
        let stat = stat_of(self, memo)?;
        if memo.selection.is_empty() {
            return Ok(0.0);
        }
        self.stat_value(stat)
    }
}
