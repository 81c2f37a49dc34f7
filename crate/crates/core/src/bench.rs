//! Timing reports for optimizer comparisons and ground-set size sweeps.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::datasets::blobs;
use crate::error::{Error, Result};
use crate::functions::FacilityLocation;
use crate::kernel::{build_dense_kernel_with, FeatureMatrix, Metric};
use crate::optimizer::{maximize, OptimizeSpec, OptimizerKind};
use crate::parallel::Execution;
use crate::set_function::SetFunction;

#[derive(Debug, Clone, Serialize)]
pub struct OptimizerRun {
    pub optimizer: String,
    pub wall_ms: f64,
    pub evaluations: u64,
    pub value: f64,
    pub selected: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub function: String,
    pub n: usize,
    pub budget: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub runs: Vec<OptimizerRun>,
}

impl ComparisonReport {
    pub fn run(&self, kind: OptimizerKind) -> Option<&OptimizerRun> {
        let name = kind.to_string();
        self.runs.iter().find(|r| r.optimizer == name)
    }
}

/// Runs each optimizer once on `f`. `epsilon` is used by the sampling
/// optimizers only.
pub fn compare_optimizers(
    f: &dyn SetFunction,
    budget: usize,
    optimizers: &[OptimizerKind],
    epsilon: f64,
    seed: u64,
    execution: Execution,
) -> Result<ComparisonReport> {
    let mut runs = Vec::with_capacity(optimizers.len());
    for &kind in optimizers {
        let mut spec = OptimizeSpec::new(budget, kind).seed(seed).execution(execution);
        if kind.samples() {
            spec = spec.epsilon(epsilon);
        }
        let start = Instant::now();
        let result = maximize(f, &spec)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        runs.push(OptimizerRun {
            optimizer: kind.to_string(),
            wall_ms,
            evaluations: result.evaluations,
            value: result.value(),
            selected: result.len(),
        });
    }
    Ok(ComparisonReport { function: f.name().to_string(), n: f.ground_size(), budget, epsilon, seed, runs })
}

/// Dense euclidean facility location over `data`, compared across optimizers.
pub fn compare_on_features(
    data: &FeatureMatrix,
    budget: usize,
    optimizers: &[OptimizerKind],
    epsilon: f64,
    seed: u64,
    execution: Execution,
) -> Result<ComparisonReport> {
    let kernel = build_dense_kernel_with(data, Metric::Euclidean, execution)?;
    compare_optimizers(&FacilityLocation::new(&kernel), budget, optimizers, epsilon, seed, execution)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub budget: usize,
    pub optimizer: String,
    pub kernel_ms: f64,
    pub select_ms: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub points: Vec<SweepPoint>,
}

/// Times kernel construction and maximization of dense euclidean facility
/// location on seeded 10-cluster blobs of each size. The budget is capped
/// at `n`.
pub fn size_sweep(
    sizes: &[usize],
    budget: usize,
    optimizer: OptimizerKind,
    epsilon: f64,
    seed: u64,
    execution: Execution,
) -> Result<SweepReport> {
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let data = blobs(n, 10.min(n), 2, 4.0, seed)?.data;
        let start = Instant::now();
        let kernel = build_dense_kernel_with(&data, Metric::Euclidean, execution)?;
        let kernel_ms = start.elapsed().as_secs_f64() * 1e3;
        let b = budget.min(n);
        let mut spec = OptimizeSpec::new(b, optimizer).seed(seed).execution(execution);
        if optimizer.samples() {
            spec = spec.epsilon(epsilon);
        }
        let start = Instant::now();
        let result = maximize(&FacilityLocation::new(&kernel), &spec)?;
        let select_ms = start.elapsed().as_secs_f64() * 1e3;
        points.push(SweepPoint {
            n,
            budget: b,
            optimizer: optimizer.to_string(),
            kernel_ms,
            select_ms,
            evaluations: result.evaluations,
        });
    }
    Ok(SweepReport { seed, points })
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidData(format!("csv output: {e}"))
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::InvalidData(format!("csv output: {e}")))
}

impl ComparisonReport {
    /// One row per optimizer.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(out, &self.runs)
    }
}

impl SweepReport {
    /// One row per size: `n` against time, ready to plot.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(out, &self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_covers_each_optimizer() {
        let data = blobs(60, 3, 2, 1.0, 4).unwrap().data;
        let r = compare_on_features(&data, 5, &OptimizerKind::ALL, 0.1, 1, Execution::Sequential).unwrap();
        assert_eq!(r.runs.len(), 4);
        let naive = r.run(OptimizerKind::Naive).unwrap();
        let lazy = r.run(OptimizerKind::Lazy).unwrap();
        assert_eq!(naive.evaluations, (0..5).map(|k| 60 - k).sum::<u64>());
        assert!(lazy.evaluations < naive.evaluations);
        assert!((naive.value - lazy.value).abs() < 1e-9);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("optimizer,wall_ms,evaluations,value,selected\n"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn sweep_caps_budget() {
        let r = size_sweep(&[5, 20], 8, OptimizerKind::Lazy, 0.1, 0, Execution::Sequential).unwrap();
        assert_eq!(r.points[0].budget, 5);
        assert_eq!(r.points[1].budget, 8);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["points"][1]["n"], 20);
    }
}
