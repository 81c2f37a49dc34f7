//! Cardinality-constrained greedy maximization.
//!
//! All optimizers drive the memoization contract of [`SetFunction`], break
//! ties toward the smallest element index, and count every marginal-gain
//! evaluation so their efficiency can be compared without a clock.

mod lazy;
mod naive;
mod sampling;

pub use lazy::lazy_greedy;
pub use naive::naive_greedy;
pub use sampling::{lazier_than_lazy_greedy, sample_size, stochastic_greedy};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::set_function::{SetFunction, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimizerKind {
    Naive,
    Lazy,
    Stochastic,
    LazierThanLazy,
}

impl OptimizerKind {
    pub const ALL: [OptimizerKind; 4] =
        [OptimizerKind::Naive, OptimizerKind::Lazy, OptimizerKind::Stochastic, OptimizerKind::LazierThanLazy];

    /// Whether the optimizer draws random samples (and so needs `epsilon`).
    pub fn samples(self) -> bool {
        matches!(self, OptimizerKind::Stochastic | OptimizerKind::LazierThanLazy)
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "naive" | "naivegreedy" => Ok(OptimizerKind::Naive),
            "lazy" | "lazygreedy" => Ok(OptimizerKind::Lazy),
            "stochastic" | "stochasticgreedy" | "random" => Ok(OptimizerKind::Stochastic),
            "lazier" | "lazierthanlazy" | "lazierthanlazygreedy" => Ok(OptimizerKind::LazierThanLazy),
            _ => Err(Error::InvalidConfig(format!("unknown optimizer `{s}`"))),
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizerKind::Naive => "naive",
            OptimizerKind::Lazy => "lazy",
            OptimizerKind::Stochastic => "stochastic",
            OptimizerKind::LazierThanLazy => "lazier",
        })
    }
}

/// Budget, algorithm and stopping rules for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeSpec {
    pub budget: usize,
    pub optimizer: OptimizerKind,
    /// Required by the sampling optimizers, rejected by the others.
    pub epsilon: Option<f64>,
    pub seed: u64,
    /// Stop before adding an element whose gain is `<= 0`.
    pub stop_if_zero_gain: bool,
    /// Stop before adding an element whose gain is `< 0`.
    pub stop_if_negative_gain: bool,
    pub execution: Execution,
}

impl OptimizeSpec {
    pub fn new(budget: usize, optimizer: OptimizerKind) -> Self {
        OptimizeSpec {
            budget,
            optimizer,
            epsilon: None,
            seed: 0,
            stop_if_zero_gain: false,
            stop_if_negative_gain: false,
            execution: Execution::default(),
        }
    }

    pub fn naive(budget: usize) -> Self {
        OptimizeSpec::new(budget, OptimizerKind::Naive)
    }

    pub fn lazy(budget: usize) -> Self {
        OptimizeSpec::new(budget, OptimizerKind::Lazy)
    }

    pub fn stochastic(budget: usize, epsilon: f64) -> Self {
        OptimizeSpec::new(budget, OptimizerKind::Stochastic).epsilon(epsilon)
    }

    pub fn lazier_than_lazy(budget: usize, epsilon: f64) -> Self {
        OptimizeSpec::new(budget, OptimizerKind::LazierThanLazy).epsilon(epsilon)
    }

    pub fn epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn stop_if_zero_gain(mut self, on: bool) -> Self {
        self.stop_if_zero_gain = on;
        self
    }

    pub fn stop_if_negative_gain(mut self, on: bool) -> Self {
        self.stop_if_negative_gain = on;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Checks the spec against a ground set of size `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1".into()));
        }
        if self.budget > n {
            return Err(Error::InvalidConfig(format!("budget {} exceeds ground set size {n}", self.budget)));
        }
        match (self.optimizer.samples(), self.epsilon) {
            (true, None) => Err(Error::InvalidConfig(format!("{} greedy needs epsilon", self.optimizer))),
            (true, Some(e)) if !(e > 0.0 && e < 1.0) => {
                Err(Error::InvalidConfig(format!("epsilon {e} must lie in (0, 1)")))
            }
            (false, Some(_)) => Err(Error::InvalidConfig(format!("{} greedy takes no epsilon", self.optimizer))),
            _ => Ok(()),
        }
    }

    /// Whether a best gain of `gain` ends the run.
    fn stops_at(&self, gain: f64) -> bool {
        (self.stop_if_zero_gain && gain <= 0.0) || (self.stop_if_negative_gain && gain < 0.0)
    }
}

/// Selected elements with their gains at selection time, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyResult {
    pub selection: Vec<(usize, f64)>,
    /// Marginal-gain evaluations performed.
    pub evaluations: u64,
}

impl GreedyResult {
    pub fn elements(&self) -> Vec<usize> {
        self.selection.iter().map(|&(e, _)| e).collect()
    }

    pub fn gains(&self) -> Vec<f64> {
        self.selection.iter().map(|&(_, g)| g).collect()
    }

    pub fn subset(&self) -> Subset {
        Subset::new(self.elements()).expect("greedy selections are distinct")
    }

    /// Sum of gains, i.e. `f` of the selection.
    pub fn value(&self) -> f64 {
        self.selection.iter().map(|&(_, g)| g).sum()
    }

    pub fn len(&self) -> usize {
        self.selection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selection.is_empty()
    }
}

/// Runs the optimizer named in `spec`.
pub fn maximize(f: &dyn SetFunction, spec: &OptimizeSpec) -> Result<GreedyResult> {
    match spec.optimizer {
        OptimizerKind::Naive => naive_greedy(f, spec),
        OptimizerKind::Lazy => lazy_greedy(f, spec),
        OptimizerKind::Stochastic => stochastic_greedy(f, spec),
        OptimizerKind::LazierThanLazy => lazier_than_lazy_greedy(f, spec),
    }
}

fn require_submodular(f: &dyn SetFunction, optimizer: OptimizerKind) -> Result<()> {
    if f.properties().is_submodular() {
        Ok(())
    } else {
        Err(Error::NotSubmodular(format!(
            "{optimizer} greedy relies on diminishing returns, which `{}` does not guarantee",
            f.name()
        )))
    }
}

/// Heap entry for the lazy optimizers: larger bound first, then smaller index.
#[derive(Debug, Clone, Copy)]
struct Bound {
    element: usize,
    gain: f64,
    /// Selection size when `gain` was computed.
    round: usize,
}

impl PartialEq for Bound {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Bound {}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        crate::parallel::rank((self.element, self.gain), (other.element, other.gain))
    }
}
