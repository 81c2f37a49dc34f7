mod common;

use std::sync::Arc;

use common::{euclidean, random_subset, rng, submodular_zoo, zoo};
use rand::Rng;
use submodkit::functions::{DisparityMin, FacilityLocation, GraphCut};
use submodkit::information::{GcMi, QueryContext};
use submodkit::kernel::CrossKernel;
use submodkit::oracle::brute_force_opt;
use submodkit::optimizer::{lazy_greedy, naive_greedy, sample_size};
use submodkit::{maximize, Error, Execution, OptimizeSpec, OptimizerKind, SetFunction};

#[test]
fn greedy_reaches_one_minus_inverse_e() {
    let bound = 1.0 - (-1.0f64).exp();
    for seed in 0..10 {
        let n = 8 + (seed as usize % 5);
        for e in zoo(seed, n).into_iter().filter(|e| e.monotone && e.f.properties().is_submodular()) {
            for b in 1..=4 {
                let greedy = naive_greedy(e.f.as_ref(), &OptimizeSpec::naive(b)).unwrap().value();
                let opt = brute_force_opt(e.f.as_ref(), b).unwrap().best_value;
                assert!(greedy >= bound * opt - 1e-9, "{} b={b}: {greedy} vs OPT {opt}", e.name);
            }
        }
    }
}

#[test]
fn lazy_matches_naive_with_fewer_evaluations() {
    for seed in 0..6 {
        let n = 12;
        for e in submodular_zoo(seed, n) {
            for b in [1, 2, 5, 12] {
                let naive = naive_greedy(e.f.as_ref(), &OptimizeSpec::naive(b)).unwrap();
                let lazy = lazy_greedy(e.f.as_ref(), &OptimizeSpec::lazy(b)).unwrap();
                assert_eq!(naive.elements(), lazy.elements(), "{} b={b}", e.name);
                for (x, y) in naive.gains().iter().zip(lazy.gains()) {
                    assert!((x - y).abs() < 1e-9, "{}", e.name);
                }
                // lazy never exceeds naive, and naive scans only unselected
                // elements, so both stay below n·b once b > 1
                assert!(lazy.evaluations <= naive.evaluations, "{} b={b}", e.name);
                if b > 1 {
                    assert!(lazy.evaluations < (n * b) as u64, "{} b={b}", e.name);
                }
            }
        }
    }
}

#[test]
fn naive_gains_never_increase_on_submodular_functions() {
    for seed in 0..4 {
        for e in submodular_zoo(seed, 10) {
            let r = naive_greedy(e.f.as_ref(), &OptimizeSpec::naive(10)).unwrap();
            let g = r.gains();
            assert!(g.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{}: {g:?}", e.name);
        }
    }
}

#[test]
fn modular_lazy_refreshes_once_per_step() {
    let k = euclidean(&mut rng(1), 15);
    let q = QueryContext::new(k.columns(&[0, 3]).unwrap(), 1.0).unwrap();
    let f = GcMi::new(0.5, &q).unwrap();
    for b in 1..=15 {
        let r = lazy_greedy(&f, &OptimizeSpec::lazy(b)).unwrap();
        assert_eq!(r.evaluations, 15 + b as u64 - 1);
    }
}

#[test]
fn stop_flags() {
    // with λ = 2 every gain eventually turns negative
    let k = euclidean(&mut rng(2), 10);
    let f = GraphCut::new(&k, 2.0).unwrap();
    for kind in OptimizerKind::ALL {
        let base = OptimizeSpec::new(10, kind).seed(1);
        let base = if kind.samples() { base.epsilon(0.1) } else { base };
        let all = maximize(&f, &base).unwrap();
        assert_eq!(all.len(), 10);
        assert!(all.gains().iter().any(|&g| g < 0.0));
        let neg = maximize(&f, &base.clone().stop_if_negative_gain(true)).unwrap();
        assert!(neg.gains().iter().all(|&g| g >= 0.0), "{kind}");
        assert!(neg.len() < 10);
        let zero = maximize(&f, &base.stop_if_zero_gain(true)).unwrap();
        assert!(zero.gains().iter().all(|&g| g > 0.0), "{kind}");
    }
    // a modular function with zero weights stops at the first zero
    let cross = CrossKernel::from_values(4, 1, vec![0.5, 0.0, 0.2, 0.0]).unwrap();
    let f = GcMi::new(1.0, &QueryContext::new(cross, 1.0).unwrap()).unwrap();
    let r = maximize(&f, &OptimizeSpec::naive(4).stop_if_zero_gain(true)).unwrap();
    assert_eq!(r.elements(), vec![0, 2]);
    let r = maximize(&f, &OptimizeSpec::naive(4).stop_if_negative_gain(true)).unwrap();
    assert_eq!(r.elements(), vec![0, 2, 1, 3]);
}

#[test]
fn stochastic_is_close_to_naive_on_average() {
    let k = euclidean(&mut rng(3), 120);
    let f = FacilityLocation::new(&k);
    let naive = naive_greedy(&f, &OptimizeSpec::naive(12)).unwrap().value();
    let ratios: Vec<f64> = (0..20)
        .map(|seed| maximize(&f, &OptimizeSpec::stochastic(12, 0.01).seed(seed)).unwrap().value() / naive)
        .collect();
    let mean = ratios.iter().sum::<f64>() / 20.0;
    assert!(mean >= 0.95, "{mean}");
}

#[test]
fn sampling_optimizers_are_deterministic_per_seed() {
    let k = euclidean(&mut rng(4), 60);
    let f = FacilityLocation::new(&k);
    for spec in [OptimizeSpec::stochastic(8, 0.2), OptimizeSpec::lazier_than_lazy(8, 0.2)] {
        let a = maximize(&f, &spec.clone().seed(9)).unwrap();
        let b = maximize(&f, &spec.clone().seed(9)).unwrap();
        assert_eq!(a.selection, b.selection);
        assert_eq!(a.evaluations, b.evaluations);
        let others: Vec<Vec<usize>> = (0..8).map(|s| maximize(&f, &spec.clone().seed(s)).unwrap().elements()).collect();
        assert!(others.iter().any(|o| *o != a.elements()));
    }
}

#[test]
fn full_samples_reduce_to_exact_optimizers() {
    for e in submodular_zoo(5, 10) {
        let naive = naive_greedy(e.f.as_ref(), &OptimizeSpec::naive(4)).unwrap();
        let lazy = lazy_greedy(e.f.as_ref(), &OptimizeSpec::lazy(4)).unwrap();
        let sg = maximize(e.f.as_ref(), &OptimizeSpec::stochastic(4, 1e-9).seed(1)).unwrap();
        let ltl = maximize(e.f.as_ref(), &OptimizeSpec::lazier_than_lazy(4, 1e-9).seed(1)).unwrap();
        assert_eq!(sg.elements(), naive.elements(), "{}", e.name);
        assert_eq!(ltl.elements(), lazy.elements(), "{}", e.name);
    }
}

#[test]
fn sample_sizes() {
    assert_eq!(sample_size(500, 10, 0.1, 500), 116);
    assert_eq!(sample_size(500, 250, 0.01, 500), 10);
    assert_eq!(sample_size(500, 10, 0.1, 3), 3);
}

#[test]
fn lazy_optimizers_refuse_non_submodular_functions() {
    let f = DisparityMin::new(&euclidean(&mut rng(6), 6));
    for kind in [OptimizerKind::Lazy, OptimizerKind::LazierThanLazy] {
        let spec = OptimizeSpec::new(3, kind);
        let spec = if kind.samples() { spec.epsilon(0.1) } else { spec };
        assert!(matches!(maximize(&f, &spec), Err(Error::NotSubmodular(_))));
    }
    assert_eq!(maximize(&f, &OptimizeSpec::naive(3)).unwrap().len(), 3);
}

#[test]
fn invalid_specs() {
    let f = FacilityLocation::new(&euclidean(&mut rng(7), 5));
    let bad = [
        OptimizeSpec::naive(0),
        OptimizeSpec::naive(6),
        OptimizeSpec::new(2, OptimizerKind::Stochastic),
        OptimizeSpec::stochastic(2, 1.0),
        OptimizeSpec::lazier_than_lazy(2, 0.0),
        OptimizeSpec::naive(2).epsilon(0.5),
    ];
    for spec in bad {
        assert!(maximize(&f, &spec).is_err(), "{spec:?}");
    }
}

#[test]
fn execution_modes_agree() {
    let mut r = rng(8);
    for _ in 0..5 {
        let k = euclidean(&mut r, 40);
        let f: Arc<dyn SetFunction> = Arc::new(FacilityLocation::new(&k));
        let b = r.random_range(1..20);
        for kind in OptimizerKind::ALL {
            let spec = OptimizeSpec::new(b, kind).seed(3);
            let spec = if kind.samples() { spec.epsilon(0.05) } else { spec };
            let seq = maximize(f.as_ref(), &spec.clone().execution(Execution::Sequential)).unwrap();
            let par = maximize(f.as_ref(), &spec.execution(Execution::Parallel)).unwrap();
            assert_eq!(seq.selection, par.selection);
            assert_eq!(seq.evaluations, par.evaluations);
        }
    }
    let _ = random_subset(&mut r, 3, 0.5);
}
