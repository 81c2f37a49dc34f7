//! Submodular subset selection: similarity kernels, submodular set
//! functions and information measures, and greedy maximizers.

pub mod bench;
pub mod datasets;
pub mod error;
pub mod functions;
pub mod information;
pub mod kernel;
mod linalg;
pub mod optimizer;
pub mod oracle;
pub mod parallel;
pub mod set_function;

pub use error::{Error, Result};
pub use parallel::Execution;
pub use set_function::{Curvature, MemoState, Properties, SetFunction, Subset};
pub use optimizer::{maximize, GreedyResult, OptimizeSpec, OptimizerKind};
