use std::collections::BinaryHeap;

use crate::error::Result;
use crate::parallel::map_range;
use crate::set_function::SetFunction;

use super::{require_submodular, Bound, GreedyResult, OptimizeSpec};

/// Accelerated greedy: stale gains stay in a max-heap as upper bounds and
/// only the top entry is refreshed.
pub fn lazy_greedy(f: &dyn SetFunction, spec: &OptimizeSpec) -> Result<GreedyResult> {
    let n = f.ground_size();
    spec.validate(n)?;
    require_submodular(f, spec.optimizer)?;
    let mut memo = f.new_memo()?;
    let first = map_range(spec.execution, n, |e| f.marginal_gain_with_memo(&memo, e));
    let mut heap = BinaryHeap::with_capacity(n);
    for (element, gain) in first.into_iter().enumerate() {
        heap.push(Bound { element, gain: gain?, round: 0 });
    }
    let mut result = GreedyResult { selection: Vec::with_capacity(spec.budget), evaluations: n as u64 };
    while result.selection.len() < spec.budget {
        let Some(top) = heap.pop() else { break };
        let round = result.selection.len();
        if top.round == round {
            if spec.stops_at(top.gain) {
                break;
            }
            f.update_memo(&mut memo, top.element)?;
            result.selection.push((top.element, top.gain));
        } else {
            let gain = f.marginal_gain_with_memo(&memo, top.element)?;
            result.evaluations += 1;
            heap.push(Bound { element: top.element, gain, round });
        }
    }
    Ok(result)
}
