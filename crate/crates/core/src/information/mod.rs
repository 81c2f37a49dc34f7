//! Closed-form submodular information measures: mutual information (MI),
//! conditional gain (CG) and conditional mutual information (CMI) of the
//! classic functions.
//!
//! Query and private sets are described by a [`QueryContext`] or a
//! [`PrivateContext`]: a cross kernel from the ground set to the exemplars,
//! an optional exemplar kernel (needed by log-determinant forms) and the
//! trade-off parameter. `η` and `ν` act on the cross-similarities when the
//! function is built, so stored kernels are never rescaled.

mod com;
mod cover;
mod facility;
mod graph;
mod log_det;

pub use com::ConcaveOverModular;
pub use cover::{psc_cg, psc_cmi, psc_mi, sc_cg, sc_cmi, sc_mi, ConceptCoverage, ConceptSet};
pub use facility::{fl_cg, fl_cmi, fl_vmi, FlQmi};
pub use graph::{gc_cg, GcMi};
pub use log_det::{log_det_cg, log_det_cmi, log_det_mi, LogDetDifference};

use crate::error::{Error, Result};
use crate::functions::check_parameter;
use crate::kernel::{build_cross_kernel, build_dense_kernel, CrossKernel, FeatureMatrix, Metric, SimilarityKernel};
use crate::set_function::Subset;

/// Exemplars scored against the ground set, with their trade-off weight.
#[derive(Debug, Clone)]
pub struct Exemplars {
    /// `|V| x |E|`
    cross: CrossKernel,
    /// `|E| x |E|`, required by the log-determinant forms
    inner: Option<SimilarityKernel>,
    weight: f64,
}

impl Exemplars {
    fn new(cross: CrossKernel, weight: f64, what: &str) -> Result<Self> {
        check_parameter(what, weight)?;
        Ok(Exemplars { cross, inner: None, weight })
    }

    fn with_inner(mut self, inner: SimilarityKernel) -> Result<Self> {
        if inner.n() != self.cross.cols() {
            return Err(Error::DimensionMismatch { expected: self.cross.cols(), found: inner.n() });
        }
        self.inner = Some(inner);
        Ok(self)
    }

    fn from_ground(kernel: &SimilarityKernel, members: &Subset, weight: f64, what: &str) -> Result<Self> {
        let cols = members.as_slice();
        Exemplars::new(kernel.columns(cols)?, weight, what)?.with_inner(kernel.submatrix(cols)?)
    }

    fn from_features(ground: &FeatureMatrix, ex: &FeatureMatrix, metric: Metric, weight: f64, what: &str) -> Result<Self> {
        let cross = build_cross_kernel(ground, ex, metric)?;
        Exemplars::new(cross, weight, what)?.with_inner(build_dense_kernel(ex, metric)?)
    }

    /// `max_j S_ij` per ground element; 0 for an empty exemplar set.
    fn row_max(&self) -> Vec<f64> {
        (0..self.cross.rows()).map(|i| self.cross.row(i).iter().copied().fold(0.0, f64::max)).collect()
    }

    /// `Σ_j S_ij` per ground element.
    fn row_sum(&self) -> Vec<f64> {
        (0..self.cross.rows()).map(|i| self.cross.row(i).iter().sum()).collect()
    }

    fn check_ground(&self, n: usize) -> Result<()> {
        if self.cross.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.cross.rows() });
        }
        Ok(())
    }

    /// Dense exemplar kernel values; empty for an empty exemplar set.
    fn inner_values(&self, what: &str) -> Result<&[f64]> {
        if self.cross.cols() == 0 {
            return Ok(&[]);
        }
        self.inner
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig(format!("{what} kernel is required by log-determinant measures")))?
            .dense_values()
            .ok_or_else(|| Error::InvalidConfig(format!("{what} kernel must be dense")))
    }
}

macro_rules! context {
    ($name:ident, $param:literal, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone)]
        pub struct $name(Exemplars);

        impl $name {
            /// `cross` is `|V| x |set|`.
            pub fn new(cross: CrossKernel, weight: f64) -> Result<Self> {
                Exemplars::new(cross, weight, $param).map($name)
            }

            /// Adds the kernel among the set's own members.
            pub fn with_kernel(self, kernel: SimilarityKernel) -> Result<Self> {
                self.0.with_inner(kernel).map($name)
            }

            /// The set is made of ground elements; similarities come from `kernel`.
            pub fn from_ground(kernel: &SimilarityKernel, members: &Subset, weight: f64) -> Result<Self> {
                Exemplars::from_ground(kernel, members, weight, $param).map($name)
            }

            /// Builds both kernels from feature rows.
            pub fn from_features(ground: &FeatureMatrix, set: &FeatureMatrix, metric: Metric, weight: f64) -> Result<Self> {
                Exemplars::from_features(ground, set, metric, weight, $param).map($name)
            }

            pub fn cross(&self) -> &CrossKernel {
                &self.0.cross
            }

            pub fn kernel(&self) -> Option<&SimilarityKernel> {
                self.0.inner.as_ref()
            }

            pub fn len(&self) -> usize {
                self.0.cross.cols()
            }

            pub fn is_empty(&self) -> bool {
                self.len() == 0
            }
        }
    };
}

context!(QueryContext, "eta", "Query set `Q` with its relevance weight `η`.");
context!(PrivateContext, "nu", "Private set `P` with its privacy weight `ν`.");

impl QueryContext {
    pub fn eta(&self) -> f64 {
        self.0.weight
    }
}

impl PrivateContext {
    pub fn nu(&self) -> f64 {
        self.0.weight
    }
}
