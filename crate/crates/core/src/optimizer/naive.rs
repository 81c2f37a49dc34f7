use crate::error::Result;
use crate::parallel::best_candidate;
use crate::set_function::SetFunction;

use super::{GreedyResult, OptimizeSpec};

/// Adds the best remaining element, scanning every candidate each round.
pub fn naive_greedy(f: &dyn SetFunction, spec: &OptimizeSpec) -> Result<GreedyResult> {
    let n = f.ground_size();
    spec.validate(n)?;
    let mut memo = f.new_memo()?;
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut result = GreedyResult { selection: Vec::with_capacity(spec.budget), evaluations: 0 };
    while result.selection.len() < spec.budget {
        let best = best_candidate(spec.execution, &remaining, |e| f.marginal_gain_with_memo(&memo, e))?;
        result.evaluations += remaining.len() as u64;
        let Some((e, gain)) = best else { break };
        if spec.stops_at(gain) {
            break;
        }
        f.update_memo(&mut memo, e)?;
        remaining.retain(|&x| x != e);
        result.selection.push((e, gain));
    }
    Ok(result)
}
