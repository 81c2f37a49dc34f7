//! Brute-force references for testing.
//!
//! Nothing here shares numerical code with the production functions: the
//! formulas are transcribed directly over nested `Vec`s and determinants
//! come from a separate Gaussian elimination.

mod matrix;
mod reference;

pub use reference::{reference_evaluate, Reference};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::set_function::{SetFunction, Subset};

/// Upper bound on subsets visited by [`brute_force_opt`].
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

/// Largest ground set for which every visited value is kept.
pub const RECORD_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct ExhaustiveResult {
    pub best_subset: Subset,
    pub best_value: f64,
    /// Every visited subset with its value, when `n <= RECORD_LIMIT`.
    pub all_values: Option<BTreeMap<Subset, f64>>,
    pub visited: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of subsets of an `n`-set with at most `budget` members.
pub fn subsets_up_to(n: usize, budget: usize) -> u128 {
    (0..=budget.min(n)).map(|k| binomial(n, k)).sum()
}

/// Exact maximum of `f` over all subsets of size at most `budget`, by
/// direct evaluation. Exact ties go to the later subset in (size,
/// lexicographic) order, so larger sets win ties.
pub fn brute_force_opt(f: &dyn SetFunction, budget: usize) -> Result<ExhaustiveResult> {
    let n = f.ground_size();
    let count = subsets_up_to(n, budget);
    if count > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { count, limit: ENUMERATION_LIMIT });
    }
    let mut all = (n <= RECORD_LIMIT).then(BTreeMap::new);
    let mut best = (Subset::empty(), f.evaluate(&Subset::empty())?);
    let mut visited = 0u64;
    for k in 0..=budget.min(n) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let x = Subset::new(combo.iter().copied())?;
            let v = f.evaluate(&x)?;
            visited += 1;
            if v >= best.1 {
                best = (x.clone(), v);
            }
            if let Some(map) = all.as_mut() {
                map.insert(x, v);
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else { break };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    Ok(ExhaustiveResult { best_subset: best.0, best_value: best.1, all_values: all, visited })
}
