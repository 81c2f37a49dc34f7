//! Regular set functions: representation (facility location, graph cut),
//! diversity (log-determinant, dispersion) and coverage (set cover,
//! probabilistic set cover, feature-based), plus clustered mixtures.

mod clustered;
mod disparity;
mod facility_location;
mod feature_based;
mod graph_cut;
mod log_det;
mod prob_set_cover;
mod set_cover;

pub use clustered::{cluster_kernels, clustered_function, ClusteredFunction};
pub use disparity::{DisparityMin, DisparitySum};
pub use facility_location::FacilityLocation;
pub use feature_based::{FeatureBased, FeatureTable};
pub use graph_cut::GraphCut;
pub use log_det::{LogDeterminant, DEFAULT_REGULARIZATION};
pub use prob_set_cover::{ProbCover, ProbabilisticSetCover};
pub use set_cover::{ConceptCover, SetCover};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Concave transforms with `g(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Concave {
    /// `sqrt(t)`
    Sqrt,
    /// `ln(1 + t)`
    Log1p,
    /// `t / (1 + t)`
    Inverse,
}

impl Concave {
    #[inline]
    pub fn apply(self, t: f64) -> f64 {
        match self {
            Concave::Sqrt => t.sqrt(),
            Concave::Log1p => t.ln_1p(),
            Concave::Inverse => t / (1.0 + t),
        }
    }
}

impl FromStr for Concave {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sqrt" | "squareroot" | "square-root" => Ok(Concave::Sqrt),
            "log" | "log1p" | "logarithm" => Ok(Concave::Log1p),
            "inverse" => Ok(Concave::Inverse),
            other => Err(Error::InvalidConfig(format!("unknown concave function `{other}`"))),
        }
    }
}

impl fmt::Display for Concave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Concave::Sqrt => "sqrt",
            Concave::Log1p => "log1p",
            Concave::Inverse => "inverse",
        })
    }
}

pub(crate) fn check_nonnegative_finite(what: &str, values: &[f64]) -> Result<()> {
    if let Some(p) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidConfig(format!("{what}[{p}] = {} must be finite and >= 0", values[p])));
    }
    Ok(())
}

pub(crate) fn check_parameter(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidConfig(format!("{name} = {value} must be finite and >= 0")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concave_choices_vanish_at_zero() {
        for g in [Concave::Sqrt, Concave::Log1p, Concave::Inverse] {
            assert_eq!(g.apply(0.0), 0.0);
            assert_eq!(g.to_string().parse::<Concave>().unwrap(), g);
        }
        assert_eq!(Concave::Sqrt.apply(4.0), 2.0);
        assert_eq!(Concave::Inverse.apply(1.0), 0.5);
    }
}
