use crate::error::{Error, Result};
use crate::kernel::{CrossKernel, SimilarityKernel};
use crate::set_function::{Curvature, InstanceId, Objective, Properties};

use super::check_parameter;

/// Graph cut `f(X) = Σ_{i∈U, j∈X} s_ij - λ Σ_{i,j∈X} s_ij`.
///
/// The penalty sums over ordered pairs including `i = j`. Internally the
/// first term is a per-element modular weight, which lets conditional-gain
/// forms reuse this type with an adjusted weight vector.
#[derive(Debug, Clone)]
pub struct GraphCut {
    id: InstanceId,
    name: &'static str,
    lambda: f64,
    modular: Vec<f64>,
    kernel: SimilarityKernel,
    props: Properties,
}

fn column_sums(kernel: &SimilarityKernel) -> Vec<f64> {
    // symmetric: column sum == row sum
    (0..kernel.n()).map(|e| kernel.row_entries(e).map(|(_, s)| s).sum()).collect()
}

fn flag(lambda: f64) -> Properties {
    Properties { curvature: Curvature::Submodular, monotone: lambda <= 0.5 }
}

impl GraphCut {
    /// Represented set equal to the ground set.
    pub fn new(kernel: &SimilarityKernel, lambda: f64) -> Result<Self> {
        check_parameter("lambda", lambda)?;
        Ok(GraphCut {
            id: InstanceId::fresh(),
            name: "graph_cut",
            lambda,
            modular: column_sums(kernel),
            kernel: kernel.clone(),
            props: flag(lambda),
        })
    }

    /// Separate represented set: `cross` is `|U| x |V|`, `ground` is `|V| x |V|`.
    pub fn with_represented(cross: &CrossKernel, ground: &SimilarityKernel, lambda: f64) -> Result<Self> {
        check_parameter("lambda", lambda)?;
        if cross.cols() != ground.n() {
            return Err(Error::DimensionMismatch { expected: ground.n(), found: cross.cols() });
        }
        let mut modular = vec![0.0; ground.n()];
        for i in 0..cross.rows() {
            for (m, s) in modular.iter_mut().zip(cross.row(i)) {
                *m += s;
            }
        }
        Ok(GraphCut {
            id: InstanceId::fresh(),
            name: "graph_cut",
            lambda,
            modular,
            kernel: ground.clone(),
            props: flag(lambda),
        })
    }

    /// Graph cut whose modular term is reduced by `penalty[e]` per element.
    pub(crate) fn penalized(
        name: &'static str,
        kernel: &SimilarityKernel,
        lambda: f64,
        penalty: &[f64],
    ) -> Result<Self> {
        let mut f = GraphCut::new(kernel, lambda)?;
        if penalty.len() != kernel.n() {
            return Err(Error::DimensionMismatch { expected: kernel.n(), found: penalty.len() });
        }
        for (m, p) in f.modular.iter_mut().zip(penalty) {
            *m -= p;
        }
        f.name = name;
        if penalty.iter().any(|&p| p != 0.0) {
            f.props = Properties::SUBMODULAR;
        }
        Ok(f)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

pub struct GcStat {
    /// `Σ_{j∈A} s_ij` for every ground element `i`
    sums: Vec<f64>,
    value: f64,
}

impl Objective for GraphCut {
    type Stat = GcStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        self.name
    }

    fn size(&self) -> usize {
        self.kernel.n()
    }

    fn flags(&self) -> Properties {
        self.props
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let first: f64 = members.iter().map(|&e| self.modular[e]).sum();
        let mut pairs = 0.0;
        for &i in members {
            for &j in members {
                pairs += self.kernel.get(i, j);
            }
        }
        Ok(first - self.lambda * pairs)
    }

    fn empty_stat(&self) -> Result<GcStat> {
        Ok(GcStat { sums: vec![0.0; self.kernel.n()], value: 0.0 })
    }

    fn stat_gain(&self, stat: &GcStat, e: usize) -> Result<f64> {
        Ok(self.modular[e] - self.lambda * (2.0 * stat.sums[e] + self.kernel.get(e, e)))
    }

    fn stat_insert(&self, stat: &mut GcStat, e: usize) -> Result<()> {
        stat.value += self.stat_gain(stat, e)?;
        for (i, s) in self.kernel.row_entries(e) {
            stat.sums[i] += s;
        }
        Ok(())
    }

    fn stat_value(&self, stat: &GcStat) -> Result<f64> {
        Ok(stat.value)
    }
}
