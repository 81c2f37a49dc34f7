//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled, [`Execution::Parallel`] dispatches work
//! onto the rayon global pool. Without it, every helper runs sequentially and
//! `Parallel` behaves exactly like `Sequential`. Results never depend on the
//! execution mode: reductions use a total order with an index tie-break.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

/// How batch work (kernel rows, candidate gains) is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Fill `out` in chunks of `chunk` elements; `f(chunk_index, chunk)` per chunk.
pub(crate) fn for_each_chunk_mut<T, F>(exec: Execution, out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    if chunk == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    out.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

/// `(0..len).map(f).collect()` in either mode.
pub(crate) fn map_range<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Evaluate `gain` on every candidate and return the best `(element, gain)`.
///
/// Larger gains win; equal gains go to the smaller element index, so the
/// result is identical in both modes.
pub(crate) fn best_candidate<F>(
    exec: Execution,
    candidates: &[usize],
    gain: F,
) -> Result<Option<(usize, f64)>>
where
    F: Fn(usize) -> Result<f64> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return candidates
            .par_iter()
            .map(|&e| gain(e).map(|g| Some((e, g))))
            .try_reduce(|| None, |a, b| Ok(better(a, b)));
    }
    let _ = exec;
    let mut best = None;
    for &e in candidates {
        let g = gain(e)?;
        best = better(best, Some((e, g)));
    }
    Ok(best)
}

fn better(a: Option<(usize, f64)>, b: Option<(usize, f64)>) -> Option<(usize, f64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if rank(x, y) == Ordering::Less {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

/// Orders candidates so that `Greater` means "preferred".
pub(crate) fn rank(a: (usize, f64), b: (usize, f64)) -> Ordering {
    // + 0.0 folds -0.0 into 0.0 so signed zeros still tie
    (a.1 + 0.0).total_cmp(&(b.1 + 0.0)).then_with(|| b.0.cmp(&a.0))
}
