//! Run configuration and execution behind the `submodkit` binary.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use submodkit::functions::{
    cluster_kernels, clustered_function, Concave, ConceptCover, DisparityMin, DisparitySum, FacilityLocation,
    FeatureTable, GraphCut, LogDeterminant, ProbCover, ProbabilisticSetCover,
};
use submodkit::information::{
    fl_cg, fl_cmi, fl_vmi, gc_cg, log_det_cg, log_det_cmi, log_det_mi, psc_cg, psc_cmi, psc_mi, sc_cg, sc_cmi, sc_mi,
    ConcaveOverModular, ConceptCoverage, ConceptSet, PrivateContext, QueryContext,
};
use submodkit::kernel::io::read_features;
use submodkit::kernel::{
    build_cross_kernel, build_dense_kernel_with, build_sparse_kernel_with, cluster_ground_set, FeatureMatrix, Metric,
    SimilarityKernel,
};
use submodkit::{maximize, Execution, GreedyResult, OptimizeSpec, SetFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    FacilityLocation,
    GraphCut,
    LogDet,
    DisparitySum,
    DisparityMin,
    SetCover,
    ProbSetCover,
    FeatureBased,
    FlVmi,
    FlQmi,
    FlCg,
    FlCmi,
    GcMi,
    GcCg,
    LogDetMi,
    LogDetCg,
    LogDetCmi,
    Com,
    ScMi,
    ScCg,
    ScCmi,
    PscMi,
    PscCg,
    PscCmi,
}

const NAMES: [(&str, FunctionKind); 24] = [
    ("fl", FunctionKind::FacilityLocation),
    ("gc", FunctionKind::GraphCut),
    ("logdet", FunctionKind::LogDet),
    ("dsum", FunctionKind::DisparitySum),
    ("dmin", FunctionKind::DisparityMin),
    ("sc", FunctionKind::SetCover),
    ("psc", FunctionKind::ProbSetCover),
    ("fb", FunctionKind::FeatureBased),
    ("flvmi", FunctionKind::FlVmi),
    ("flqmi", FunctionKind::FlQmi),
    ("flcg", FunctionKind::FlCg),
    ("flcmi", FunctionKind::FlCmi),
    ("gcmi", FunctionKind::GcMi),
    ("gccg", FunctionKind::GcCg),
    ("logdetmi", FunctionKind::LogDetMi),
    ("logdetcg", FunctionKind::LogDetCg),
    ("logdetcmi", FunctionKind::LogDetCmi),
    ("com", FunctionKind::Com),
    ("scmi", FunctionKind::ScMi),
    ("sccg", FunctionKind::ScCg),
    ("sccmi", FunctionKind::ScCmi),
    ("pscmi", FunctionKind::PscMi),
    ("psccg", FunctionKind::PscCg),
    ("psccmi", FunctionKind::PscCmi),
];

impl FunctionKind {
    pub fn names() -> impl Iterator<Item = &'static str> {
        NAMES.iter().map(|(n, _)| *n)
    }

    fn needs_query(self) -> bool {
        use FunctionKind::*;
        matches!(self, FlVmi | FlQmi | FlCmi | GcMi | LogDetMi | LogDetCmi | Com | ScMi | ScCmi | PscMi | PscCmi)
    }

    fn needs_private(self) -> bool {
        use FunctionKind::*;
        matches!(self, FlCg | FlCmi | GcCg | LogDetCg | LogDetCmi | ScCg | ScCmi | PscCg | PscCmi)
    }

    fn uses_concepts(self) -> bool {
        use FunctionKind::*;
        matches!(self, SetCover | ProbSetCover | ScMi | ScCg | ScCmi | PscMi | PscCg | PscCmi)
    }

    fn supports_clustered(self) -> bool {
        use FunctionKind::*;
        matches!(self, FacilityLocation | GraphCut | LogDet | DisparitySum | DisparityMin)
    }
}

impl FromStr for FunctionKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['_', '-'], "");
        NAMES
            .iter()
            .find(|(n, _)| *n == key)
            .map(|(_, k)| *k)
            .with_context(|| format!("unknown function `{s}`; expected one of {}", NAMES.map(|p| p.0).join(", ")))
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(NAMES.iter().find(|(_, k)| k == self).unwrap().0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    Dense,
    Sparse,
    Clustered,
}

impl FromStr for KernelMode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dense" => Ok(KernelMode::Dense),
            "sparse" => Ok(KernelMode::Sparse),
            "clustered" => Ok(KernelMode::Clustered),
            other => bail!("unknown mode `{other}`; expected dense, sparse or clustered"),
        }
    }
}

/// Everything needed to build one function and maximize it.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub function: FunctionKind,
    pub mode: KernelMode,
    pub metric: Metric,
    pub k_neighbors: Option<usize>,
    pub clusters: Option<usize>,
    pub spec: OptimizeSpec,
    pub lambda: f64,
    pub eta: f64,
    pub nu: f64,
    pub reg: f64,
    pub concave: Concave,
    pub data: Option<PathBuf>,
    pub query_data: Option<PathBuf>,
    pub private_data: Option<PathBuf>,
    /// Cover JSON for set cover and probabilistic set cover.
    pub concepts: Option<PathBuf>,
    pub query_concepts: Option<Vec<usize>>,
    pub private_concepts: Option<Vec<usize>>,
}

impl RunConfig {
    pub fn new(function: FunctionKind, spec: OptimizeSpec) -> Self {
        RunConfig {
            function,
            mode: KernelMode::Dense,
            metric: Metric::Euclidean,
            k_neighbors: None,
            clusters: None,
            spec,
            lambda: 0.5,
            eta: 1.0,
            nu: 1.0,
            reg: submodkit::functions::DEFAULT_REGULARIZATION,
            concave: Concave::Sqrt,
            data: None,
            query_data: None,
            private_data: None,
            concepts: None,
            query_concepts: None,
            private_concepts: None,
        }
    }

    /// Checks that the inputs present match what the function needs.
    pub fn validate(&self) -> Result<()> {
        let f = self.function;
        if self.spec.budget == 0 {
            bail!("budget must be at least 1");
        }
        if f.uses_concepts() {
            if self.concepts.is_none() {
                bail!("function `{f}` needs --concepts");
            }
            if f.needs_query() && self.query_concepts.is_none() {
                bail!("function `{f}` needs --query-concepts");
            }
            if f.needs_private() && self.private_concepts.is_none() {
                bail!("function `{f}` needs --private-concepts");
            }
            if self.mode != KernelMode::Dense {
                bail!("function `{f}` does not use a kernel; drop --mode");
            }
            return Ok(());
        }
        if self.data.is_none() {
            bail!("function `{f}` needs --data");
        }
        if f.needs_query() && self.query_data.is_none() {
            bail!("function `{f}` needs --query-data");
        }
        if f.needs_private() && self.private_data.is_none() {
            bail!("function `{f}` needs --private-data");
        }
        match self.mode {
            KernelMode::Sparse if self.k_neighbors.is_none() => bail!("--mode sparse needs --k-neighbors"),
            KernelMode::Clustered if self.clusters.is_none() => bail!("--mode clustered needs --clusters"),
            KernelMode::Clustered if !f.supports_clustered() => {
                bail!("--mode clustered supports fl, gc, logdet, dsum and dmin, not `{f}`")
            }
            _ => Ok(()),
        }
    }
}

fn load(path: &Option<PathBuf>) -> Result<FeatureMatrix> {
    let path = path.as_ref().expect("validated");
    Ok(read_features(path)?)
}

fn kernel_for(cfg: &RunConfig, data: &FeatureMatrix) -> Result<SimilarityKernel> {
    let exec = cfg.spec.execution;
    Ok(match cfg.mode {
        KernelMode::Sparse => build_sparse_kernel_with(data, cfg.metric, cfg.k_neighbors.unwrap(), exec)?,
        KernelMode::Dense | KernelMode::Clustered => build_dense_kernel_with(data, cfg.metric, exec)?,
    })
}

fn base_function(cfg: &RunConfig, kernel: &SimilarityKernel) -> Result<Arc<dyn SetFunction>> {
    Ok(match cfg.function {
        FunctionKind::FacilityLocation => Arc::new(FacilityLocation::new(kernel)),
        FunctionKind::GraphCut => Arc::new(GraphCut::new(kernel, cfg.lambda)?),
        FunctionKind::LogDet => Arc::new(LogDeterminant::new(kernel, cfg.reg)?),
        FunctionKind::DisparitySum => Arc::new(DisparitySum::new(kernel)),
        FunctionKind::DisparityMin => Arc::new(DisparityMin::new(kernel)),
        other => unreachable!("{other} is not a kernel function"),
    })
}

fn concept_function(cfg: &RunConfig) -> Result<Arc<dyn SetFunction>> {
    use FunctionKind::*;
    let path = cfg.concepts.as_ref().expect("validated");
    let list = |l: &Option<Vec<usize>>| l.clone().unwrap_or_default();
    if matches!(cfg.function, SetCover | ScMi | ScCg | ScCmi) {
        let cover = ConceptCover::read_json(path)?;
        let set = |l| ConceptSet::from_concepts(cover.num_concepts, &list(l));
        return Ok(match cfg.function {
            SetCover => Arc::new(submodkit::functions::SetCover::new(&cover)?),
            ScMi => Arc::new(sc_mi(&cover, &set(&cfg.query_concepts)?)?),
            ScCg => Arc::new(sc_cg(&cover, &set(&cfg.private_concepts)?)?),
            _ => Arc::new(sc_cmi(&cover, &set(&cfg.query_concepts)?, &set(&cfg.private_concepts)?)?),
        });
    }
    let cover = ProbCover::read_json(path)?;
    let cov = |l| ConceptCoverage::from_concepts(cover.num_concepts, &list(l));
    Ok(match cfg.function {
        ProbSetCover => Arc::new(ProbabilisticSetCover::new(&cover)?),
        PscMi => Arc::new(psc_mi(&cover, &cov(&cfg.query_concepts)?)?),
        PscCg => Arc::new(psc_cg(&cover, &cov(&cfg.private_concepts)?)?),
        _ => Arc::new(psc_cmi(&cover, &cov(&cfg.query_concepts)?, &cov(&cfg.private_concepts)?)?),
    })
}

/// Builds the configured function, reading every input file it needs.
pub fn build_function(cfg: &RunConfig) -> Result<Arc<dyn SetFunction>> {
    use FunctionKind::*;
    cfg.validate()?;
    if cfg.function.uses_concepts() {
        return concept_function(cfg);
    }
    let data = load(&cfg.data)?;
    if cfg.function == FeatureBased {
        return Ok(Arc::new(submodkit::functions::FeatureBased::new(FeatureTable::from_dense(&data, cfg.concave)?)));
    }
    let query = cfg.query_data.as_ref().map(|_| load(&cfg.query_data)).transpose()?;
    let private = cfg.private_data.as_ref().map(|_| load(&cfg.private_data)).transpose()?;
    let q = || QueryContext::from_features(&data, query.as_ref().unwrap(), cfg.metric, cfg.eta);
    let p = || PrivateContext::from_features(&data, private.as_ref().unwrap(), cfg.metric, cfg.nu);

    // the query-only forms never need the ground kernel
    match cfg.function {
        FlQmi => return Ok(Arc::new(submodkit::information::FlQmi::new(&q()?)?)),
        GcMi => return Ok(Arc::new(submodkit::information::GcMi::new(cfg.lambda, &q()?)?)),
        Com => return Ok(Arc::new(ConcaveOverModular::new(&q()?, cfg.concave)?)),
        _ => {}
    }
    let kernel = kernel_for(cfg, &data)?;
    Ok(match cfg.function {
        FacilityLocation | GraphCut | LogDet | DisparitySum | DisparityMin => {
            if cfg.mode == KernelMode::Clustered {
                let map = cluster_ground_set(&data, cfg.clusters.unwrap(), cfg.spec.seed)?;
                if cfg.function == FacilityLocation {
                    Arc::new(submodkit::functions::FacilityLocation::clustered(&kernel, &map)?)
                } else {
                    let kernels = cluster_kernels(&kernel, &map)?;
                    Arc::new(clustered_function(&map, kernels, |k| base_function(cfg, k).map_err(anyhow_to_core))?)
                }
            } else {
                base_function(cfg, &kernel)?
            }
        }
        FlVmi => Arc::new(fl_vmi(&kernel, &q()?)?),
        FlCg => Arc::new(fl_cg(&kernel, &p()?)?),
        FlCmi => Arc::new(fl_cmi(&kernel, &q()?, &p()?)?),
        GcCg => Arc::new(gc_cg(&kernel, cfg.lambda, &p()?)?),
        LogDetMi => Arc::new(log_det_mi(&kernel, cfg.reg, &q()?)?),
        LogDetCg => Arc::new(log_det_cg(&kernel, cfg.reg, &p()?)?),
        LogDetCmi => {
            let qp = build_cross_kernel(query.as_ref().unwrap(), private.as_ref().unwrap(), cfg.metric)?;
            Arc::new(log_det_cmi(&kernel, cfg.reg, &q()?, &p()?, &qp)?)
        }
        other => unreachable!("{other} handled above"),
    })
}

fn anyhow_to_core(e: anyhow::Error) -> submodkit::Error {
    match e.downcast::<submodkit::Error>() {
        Ok(core) => core,
        Err(other) => submodkit::Error::InvalidConfig(other.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pick {
    pub index: usize,
    pub gain: f64,
}

/// The JSON document written for a selection run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub selection: Vec<Pick>,
    pub function: String,
    pub optimizer: String,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl SelectionReport {
    pub fn new(function: &str, spec: &OptimizeSpec, result: &GreedyResult, wall_ms: Option<f64>) -> Self {
        SelectionReport {
            selection: result.selection.iter().map(|&(index, gain)| Pick { index, gain }).collect(),
            function: function.to_string(),
            optimizer: spec.optimizer.to_string(),
            evaluations: result.evaluations,
            wall_ms,
        }
    }
}

/// Builds the function and maximizes it. `wall_ms` covers maximization only
/// and is left out when `timing` is false.
pub fn run_selection(cfg: &RunConfig, timing: bool) -> Result<SelectionReport> {
    let f = build_function(cfg)?;
    let start = Instant::now();
    let result = maximize(f.as_ref(), &cfg.spec)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SelectionReport::new(f.name(), &cfg.spec, &result, timing.then_some(wall_ms)))
}

/// Default execution for the build: parallel when the feature is on.
pub fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}
