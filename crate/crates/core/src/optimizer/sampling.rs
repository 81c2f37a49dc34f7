use std::collections::BinaryHeap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::parallel::best_candidate;
use crate::set_function::SetFunction;

use super::{require_submodular, Bound, GreedyResult, OptimizeSpec};

/// `ceil((n / b) ln(1 / ε))`, at least 1, capped at `remaining`.
pub fn sample_size(n: usize, budget: usize, epsilon: f64, remaining: usize) -> usize {
    let s = (n as f64 / budget as f64 * (1.0 / epsilon).ln()).ceil();
    (s.max(1.0) as usize).min(remaining)
}

/// Sorted random sample of `s` distinct entries of `remaining`.
fn draw(rng: &mut ChaCha8Rng, remaining: &[usize], s: usize) -> Vec<usize> {
    let mut picked: Vec<usize> = index::sample(rng, remaining.len(), s).into_iter().map(|i| remaining[i]).collect();
    picked.sort_unstable();
    picked
}

fn epsilon(spec: &OptimizeSpec) -> f64 {
    spec.epsilon.expect("validated spec carries epsilon")
}

/// Each round picks the best element of a fresh uniform sample of the
/// unselected elements.
pub fn stochastic_greedy(f: &dyn SetFunction, spec: &OptimizeSpec) -> Result<GreedyResult> {
    let n = f.ground_size();
    spec.validate(n)?;
    let eps = epsilon(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut memo = f.new_memo()?;
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut result = GreedyResult { selection: Vec::with_capacity(spec.budget), evaluations: 0 };
    while result.selection.len() < spec.budget && !remaining.is_empty() {
        let s = sample_size(n, spec.budget, eps, remaining.len());
        let sample = draw(&mut rng, &remaining, s);
        let best = best_candidate(spec.execution, &sample, |e| f.marginal_gain_with_memo(&memo, e))?;
        result.evaluations += sample.len() as u64;
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

/// Stochastic greedy whose per-sample search is lazy: gains computed in
/// earlier rounds are kept as upper bounds and refreshed only when they
/// reach the top.
pub fn lazier_than_lazy_greedy(f: &dyn SetFunction, spec: &OptimizeSpec) -> Result<GreedyResult> {
    let n = f.ground_size();
    spec.validate(n)?;
    require_submodular(f, spec.optimizer)?;
    let eps = epsilon(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut memo = f.new_memo()?;
    let mut remaining: Vec<usize> = (0..n).collect();
    // None = never evaluated
    let mut bounds: Vec<Option<(f64, usize)>> = vec![None; n];
    let mut result = GreedyResult { selection: Vec::with_capacity(spec.budget), evaluations: 0 };
    while result.selection.len() < spec.budget && !remaining.is_empty() {
        let round = result.selection.len();
        let s = sample_size(n, spec.budget, eps, remaining.len());
        let sample = draw(&mut rng, &remaining, s);

        let mut heap = BinaryHeap::with_capacity(sample.len());
        for &e in &sample {
            let entry = match bounds[e] {
                Some((gain, at)) => Bound { element: e, gain, round: at },
                None => {
                    let gain = f.marginal_gain_with_memo(&memo, e)?;
                    result.evaluations += 1;
                    bounds[e] = Some((gain, round));
                    Bound { element: e, gain, round }
                }
            };
            heap.push(entry);
        }
        let chosen = loop {
            let Some(top) = heap.pop() else { break None };
            if top.round == round {
                break Some(top);
            }
            let gain = f.marginal_gain_with_memo(&memo, top.element)?;
            result.evaluations += 1;
            bounds[top.element] = Some((gain, round));
            heap.push(Bound { element: top.element, gain, round });
        };
        let Some(top) = chosen else { break };
        if spec.stops_at(top.gain) {
            break;
        }
        f.update_memo(&mut memo, top.element)?;
        remaining.retain(|&x| x != top.element);
        result.selection.push((top.element, top.gain));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::FacilityLocation;
    use crate::kernel::SimilarityKernel;
    use crate::optimizer::{lazy_greedy, naive_greedy};

    fn kernel() -> SimilarityKernel {
        SimilarityKernel::from_rows(&[[1.0, 0.8, 0.1], [0.8, 1.0, 0.2], [0.1, 0.2, 1.0]]).unwrap()
    }

    #[test]
    fn sample_size_formula() {
        assert_eq!(sample_size(500, 10, 0.1, 500), 116);
        assert_eq!(sample_size(500, 10, 0.1, 40), 40);
        assert_eq!(sample_size(10, 10, 0.9, 10), 1);
    }

    #[test]
    fn full_samples_degenerate_to_exact_search() {
        let f = FacilityLocation::new(&kernel());
        // (3/2) ln(1e6) > 3, so every sample is the whole remaining pool
        let naive = naive_greedy(&f, &OptimizeSpec::naive(2)).unwrap();
        let lazy = lazy_greedy(&f, &OptimizeSpec::lazy(2)).unwrap();
        let sg = stochastic_greedy(&f, &OptimizeSpec::stochastic(2, 1e-6).seed(3)).unwrap();
        let ltl = lazier_than_lazy_greedy(&f, &OptimizeSpec::lazier_than_lazy(2, 1e-6).seed(3)).unwrap();
        assert_eq!(sg.selection, naive.selection);
        assert_eq!(ltl.selection, lazy.selection);
    }

    #[test]
    fn seeded_runs_repeat() {
        let f = FacilityLocation::new(&kernel());
        let spec = OptimizeSpec::stochastic(2, 0.5).seed(11);
        assert_eq!(stochastic_greedy(&f, &spec).unwrap(), stochastic_greedy(&f, &spec).unwrap());
    }
}
