//! Random instances shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use submodkit::functions::{
    Concave, ConceptCover, DisparityMin, DisparitySum, FacilityLocation, FeatureBased, FeatureTable, GraphCut,
    LogDeterminant, ProbCover, ProbabilisticSetCover, SetCover,
};
use submodkit::information::{
    fl_cg, fl_cmi, fl_vmi, gc_cg, log_det_cg, log_det_cmi, log_det_mi, psc_cg, psc_cmi, psc_mi, sc_cg, sc_cmi, sc_mi,
    ConcaveOverModular, ConceptCoverage, ConceptSet, FlQmi, GcMi, PrivateContext, QueryContext,
};
use submodkit::kernel::{build_dense_kernel, CrossKernel, FeatureMatrix, Metric, SimilarityKernel};
use submodkit::set_function::{generic_cg, generic_cmi, generic_mi};
use submodkit::{Curvature, SetFunction, Subset};

pub type Matrix = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn points(rng: &mut ChaCha8Rng, n: usize, dims: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dims).map(|_| rng.random_range(-2.0..2.0)).collect()).collect()
}

/// Gaussian kernel `exp(-|x-y|^2 / 2)`, positive definite for distinct points.
pub fn rbf(points: &[Vec<f64>]) -> SimilarityKernel {
    let n = points.len();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let d2: f64 = points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            v[i * n + j] = if i == j { 1.0 } else { (-d2 / 2.0).exp() };
        }
    }
    SimilarityKernel::from_dense(n, v).unwrap()
}

pub fn euclidean(rng: &mut ChaCha8Rng, n: usize) -> SimilarityKernel {
    let p = points(rng, n, 3);
    build_dense_kernel(&FeatureMatrix::from_rows(&p).unwrap(), Metric::Euclidean).unwrap()
}

pub fn matrix(k: &SimilarityKernel) -> Matrix {
    (0..k.n()).map(|i| (0..k.n()).map(|j| k.get(i, j)).collect()).collect()
}

pub fn cross_matrix(c: &CrossKernel) -> Matrix {
    (0..c.rows()).map(|i| c.row(i).to_vec()).collect()
}

/// Rows `rows`, columns `cols` of `k` as a cross kernel.
pub fn cross(k: &SimilarityKernel, rows: &[usize], cols: &[usize]) -> CrossKernel {
    let v = rows.iter().flat_map(|&i| cols.iter().map(move |&j| k.get(i, j))).collect();
    CrossKernel::from_values(rows.len(), cols.len(), v).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Subset {
    Subset::new((0..n).filter(|_| rng.random_bool(p))).unwrap()
}

pub fn random_cover(rng: &mut ChaCha8Rng, n: usize, concepts: usize) -> ConceptCover {
    let weights = (0..concepts).map(|_| rng.random_range(0.1..2.0)).collect();
    let covers = (0..n).map(|_| (0..concepts).filter(|_| rng.random_bool(0.3)).collect()).collect();
    ConceptCover::new(concepts, weights, covers).unwrap()
}

pub fn random_prob_cover(rng: &mut ChaCha8Rng, n: usize, concepts: usize) -> ProbCover {
    let weights = (0..concepts).map(|_| rng.random_range(0.1..2.0)).collect();
    let probs = (0..n)
        .map(|_| {
            let mut row = Vec::new();
            for c in 0..concepts {
                if rng.random_bool(0.4) {
                    row.push((c, rng.random_range(0.0..=1.0)));
                }
            }
            row
        })
        .collect();
    ProbCover::new(concepts, weights, probs).unwrap()
}

pub fn random_scores(rng: &mut ChaCha8Rng, n: usize, features: usize) -> Matrix {
    (0..n)
        .map(|_| (0..features).map(|_| if rng.random_bool(0.5) { rng.random_range(0.0..3.0) } else { 0.0 }).collect())
        .collect()
}

pub fn feature_table(scores: &Matrix, weights: &[f64], concave: Concave) -> FeatureTable {
    let sparse = scores
        .iter()
        .map(|r| r.iter().copied().enumerate().filter(|&(_, m)| m != 0.0).collect())
        .collect();
    FeatureTable::new(weights.len(), weights.to_vec(), sparse, concave).unwrap()
}

/// Direction of diminishing returns a function is expected to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Submodular,
    Supermodular,
    Neither,
}

pub struct Entry {
    pub name: String,
    pub f: Arc<dyn SetFunction>,
    pub shape: Shape,
    pub monotone: bool,
}

fn entry(name: &str, f: Arc<dyn SetFunction>, shape: Shape, monotone: bool) -> Entry {
    Entry { name: name.to_string(), f, shape, monotone }
}

/// One instance of every function family on a ground set of size `n`.
///
/// Kernel families use a Gaussian kernel over `n` ground points plus two
/// query and two private points outside the ground set.
pub fn zoo(seed: u64, n: usize) -> Vec<Entry> {
    use Shape::*;
    let mut r = rng(seed);
    let all = points(&mut r, n + 4, 2);
    let joint = rbf(&all);
    let v: Vec<usize> = (0..n).collect();
    let (qi, pi) = (vec![n, n + 1], vec![n + 2, n + 3]);
    let k = joint.submatrix(&v).unwrap();
    let q = QueryContext::new(cross(&joint, &v, &qi), 1.0).unwrap().with_kernel(joint.submatrix(&qi).unwrap()).unwrap();
    let p = PrivateContext::new(cross(&joint, &v, &pi), 1.0).unwrap().with_kernel(joint.submatrix(&pi).unwrap()).unwrap();
    let qp = cross(&joint, &qi, &pi);
    let q_half = QueryContext::new(cross(&joint, &v, &qi), 0.5).unwrap();
    let ek = euclidean(&mut r, n);
    let cover = random_cover(&mut r, n, 6);
    let prob = random_prob_cover(&mut r, n, 6);
    let scores = random_scores(&mut r, n, 4);
    let concept_q = ConceptSet::from_concepts(6, &[0, 1, 2]).unwrap();
    let concept_p = ConceptSet::from_concepts(6, &[2, 3]).unwrap();
    let cov_q = ConceptCoverage::new(vec![0.9, 0.5, 1.0, 0.0, 0.3, 0.7]).unwrap();
    let cov_p = ConceptCoverage::new(vec![0.2, 0.0, 0.6, 1.0, 0.1, 0.4]).unwrap();
    let in_ground_q = Subset::new([0, 1]).unwrap();
    let fl: Arc<dyn SetFunction> = Arc::new(FacilityLocation::new(&k));

    vec![
        entry("fl", fl.clone(), Submodular, true),
        entry("fl_euclidean", Arc::new(FacilityLocation::new(&ek)), Submodular, true),
        entry("gc_0.3", Arc::new(GraphCut::new(&k, 0.3).unwrap()), Submodular, true),
        entry("gc_0.9", Arc::new(GraphCut::new(&k, 0.9).unwrap()), Submodular, false),
        entry("logdet", Arc::new(LogDeterminant::new(&k, 1e-6).unwrap()), Submodular, false),
        entry("dsum", Arc::new(DisparitySum::new(&ek)), Supermodular, true),
        entry("dmin", Arc::new(DisparityMin::new(&ek)), Neither, false),
        entry("sc", Arc::new(SetCover::new(&cover).unwrap()), Submodular, true),
        entry("psc", Arc::new(ProbabilisticSetCover::new(&prob).unwrap()), Submodular, true),
        entry("fb_sqrt", Arc::new(FeatureBased::new(feature_table(&scores, &[1.0, 0.5, 2.0, 1.0], Concave::Sqrt))), Submodular, true),
        entry("fb_log", Arc::new(FeatureBased::new(feature_table(&scores, &[1.0; 4], Concave::Log1p))), Submodular, true),
        entry("fb_inverse", Arc::new(FeatureBased::new(feature_table(&scores, &[1.0; 4], Concave::Inverse))), Submodular, true),
        entry("flvmi", Arc::new(fl_vmi(&k, &q).unwrap()), Submodular, true),
        entry("flqmi", Arc::new(FlQmi::new(&q).unwrap()), Submodular, true),
        entry("flqmi_eta", Arc::new(FlQmi::new(&q_half).unwrap()), Submodular, true),
        entry("flcg", Arc::new(fl_cg(&k, &p).unwrap()), Submodular, true),
        entry("flcmi", Arc::new(fl_cmi(&k, &q, &p).unwrap()), Submodular, true),
        entry("gcmi", Arc::new(GcMi::new(0.4, &q).unwrap()), Submodular, true),
        entry("gccg", Arc::new(gc_cg(&k, 0.4, &p).unwrap()), Submodular, false),
        entry("logdetcg", Arc::new(log_det_cg(&k, 1e-6, &p).unwrap()), Submodular, false),
        entry("logdetmi", Arc::new(log_det_mi(&k, 1e-6, &q).unwrap()), Neither, true),
        entry("logdetcmi", Arc::new(log_det_cmi(&k, 1e-6, &q, &p, &qp).unwrap()), Neither, true),
        entry("com_sqrt", Arc::new(ConcaveOverModular::new(&q, Concave::Sqrt).unwrap()), Submodular, true),
        entry("com_log", Arc::new(ConcaveOverModular::new(&q_half, Concave::Log1p).unwrap()), Submodular, true),
        entry("scmi", Arc::new(sc_mi(&cover, &concept_q).unwrap()), Submodular, true),
        entry("sccg", Arc::new(sc_cg(&cover, &concept_p).unwrap()), Submodular, true),
        entry("sccmi", Arc::new(sc_cmi(&cover, &concept_q, &concept_p).unwrap()), Submodular, true),
        entry("pscmi", Arc::new(psc_mi(&prob, &cov_q).unwrap()), Submodular, true),
        entry("psccg", Arc::new(psc_cg(&prob, &cov_p).unwrap()), Submodular, true),
        entry("psccmi", Arc::new(psc_cmi(&prob, &cov_q, &cov_p).unwrap()), Submodular, true),
        entry("generic_mi_fl", Arc::new(generic_mi(fl.clone(), &in_ground_q).unwrap()), Neither, true),
        entry("generic_cg_fl", Arc::new(generic_cg(fl.clone(), &in_ground_q).unwrap()), Submodular, true),
        entry("generic_cmi_fl", Arc::new(generic_cmi(fl, &in_ground_q, &Subset::new([2]).unwrap()).unwrap()), Neither, true),
    ]
}

/// Functions flagged submodular by their type, used by optimizer suites.
pub fn submodular_zoo(seed: u64, n: usize) -> Vec<Entry> {
    zoo(seed, n).into_iter().filter(|e| e.f.properties().curvature == Curvature::Submodular).collect()
}

/// Checks `f(e|A)` against `f(e|B)` for `A ⊆ B`, `e ∉ B`. Returns the first
/// triple breaking the stated direction.
pub fn diminishing_returns_witness(
    f: &dyn SetFunction,
    shape: Shape,
    triples: usize,
    seed: u64,
) -> Option<(Subset, Subset, usize, f64, f64)> {
    let n = f.ground_size();
    let mut r = rng(seed);
    for _ in 0..triples {
        let b = random_subset(&mut r, n, 0.5);
        if b.len() == n {
            continue;
        }
        let a = Subset::new(b.iter().filter(|_| r.random_bool(0.5))).unwrap();
        let outside: Vec<usize> = (0..n).filter(|&x| !b.contains(x)).collect();
        let e = outside[r.random_range(0..outside.len())];
        let ga = f.marginal_gain(&a, e).unwrap();
        let gb = f.marginal_gain(&b, e).unwrap();
        let broken = match shape {
            Shape::Submodular => ga < gb - 1e-9,
            Shape::Supermodular => ga > gb + 1e-9,
            Shape::Neither => ga < gb - 1e-9,
        };
        if broken {
            return Some((a, b, e, ga, gb));
        }
    }
    None
}
