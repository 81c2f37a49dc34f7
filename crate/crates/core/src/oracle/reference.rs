//! Literal transcriptions of each function's defining formula.

use crate::error::{Error, Result};
use crate::functions::Concave;

use super::matrix::{add_diagonal, determinant, inverse, multiply, pick, subtract, transpose, Matrix};

/// A function instance described by plain data.
///
/// Matrices are nested row vectors: `sim` is the `|V| x |V|` ground
/// similarity, `query_sim` / `private_sim` are `|V| x |Q|` / `|V| x |P|`.
#[derive(Debug, Clone)]
pub enum Reference {
    /// `represented` is `|U| x |V|`.
    FacilityLocation { represented: Matrix },
    /// `represented` is `|U| x |V|`, `sim` is `|V| x |V|`.
    GraphCut { represented: Matrix, sim: Matrix, lambda: f64 },
    LogDet { sim: Matrix, reg: f64 },
    DisparitySum { sim: Matrix },
    DisparityMin { sim: Matrix },
    SetCover { weights: Vec<f64>, covers: Vec<Vec<usize>> },
    ProbabilisticSetCover { weights: Vec<f64>, probs: Vec<Vec<(usize, f64)>> },
    /// `scores` is `|V| x |F|`.
    FeatureBased { weights: Vec<f64>, scores: Matrix, concave: Concave },
    FlVmi { sim: Matrix, query_sim: Matrix, eta: f64 },
    FlQmi { query_sim: Matrix, eta: f64 },
    FlCg { sim: Matrix, private_sim: Matrix, nu: f64 },
    FlCmi { sim: Matrix, query_sim: Matrix, private_sim: Matrix, eta: f64, nu: f64 },
    GcMi { query_sim: Matrix, lambda: f64, eta: f64 },
    GcCg { sim: Matrix, private_sim: Matrix, lambda: f64, nu: f64 },
    /// `query_query` is `|Q| x |Q|`.
    LogDetMi { sim: Matrix, query_sim: Matrix, query_query: Matrix, reg: f64, eta: f64 },
    LogDetCg { sim: Matrix, private_sim: Matrix, private_private: Matrix, reg: f64, nu: f64 },
    /// CMI with `η = ν = 1` as a ratio of determinants over a joint
    /// similarity `universe`; `query` and `private` index into it and the
    /// evaluated set must be disjoint from both.
    LogDetCmiRatio { universe: Matrix, query: Vec<usize>, private: Vec<usize>, reg: f64 },
    Com { query_sim: Matrix, eta: f64, psi: Concave },
}

fn concave(g: Concave, t: f64) -> f64 {
    match g {
        Concave::Sqrt => t.sqrt(),
        Concave::Log1p => (1.0 + t).ln(),
        Concave::Inverse => t / (1.0 + t),
    }
}

fn max_over(row: &[f64], x: &[usize]) -> f64 {
    x.iter().map(|&j| row[j]).fold(0.0, f64::max)
}

fn log_det(m: Matrix) -> Result<f64> {
    let d = determinant(m);
    if d <= 0.0 || !d.is_finite() {
        return Err(Error::NotPositiveDefinite { pivot: 0, value: d });
    }
    Ok(d.ln())
}

/// `S_AA + rI - scale · S_AC (S_CC + rI)^{-1} S_CA` for a `|V| x |C|` cross block.
fn conditioned(sim: &Matrix, cross: &Matrix, inner: &Matrix, x: &[usize], reg: f64, scale: f64) -> Result<Matrix> {
    let cols: Vec<usize> = (0..inner.len()).collect();
    let s_aa = add_diagonal(pick(sim, x, x), reg);
    let s_ac = pick(cross, x, &cols);
    let inv = inverse(&add_diagonal(inner.clone(), reg)).ok_or(Error::NotPositiveDefinite { pivot: 0, value: 0.0 })?;
    let prod = multiply(&multiply(&s_ac, &inv), &transpose(&s_ac, x.len(), cols.len()));
    Ok(subtract(&s_aa, &prod, scale))
}

/// `det(I - (S_XX + rI)^{-1} S_XQ (S_QQ + rI)^{-1} S_QX)` over the universe.
fn mi_ratio_det(u: &Matrix, x: &[usize], q: &[usize], reg: f64) -> Result<f64> {
    let singular = || Error::NotPositiveDefinite { pivot: 0, value: 0.0 };
    let s_x = inverse(&add_diagonal(pick(u, x, x), reg)).ok_or_else(singular)?;
    let s_q = inverse(&add_diagonal(pick(u, q, q), reg)).ok_or_else(singular)?;
    let prod = multiply(&multiply(&multiply(&s_x, &pick(u, x, q)), &s_q), &pick(u, q, x));
    let n = x.len();
    let m: Matrix = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - prod[i][j]).collect()).collect();
    Ok(determinant(m))
}

/// Value of the described function on `x` (distinct, in range).
pub fn reference_evaluate(r: &Reference, x: &[usize]) -> Result<f64> {
    Ok(match r {
        Reference::FacilityLocation { represented } => represented.iter().map(|row| max_over(row, x)).sum(),
        Reference::GraphCut { represented, sim, lambda } => {
            let cover: f64 = represented.iter().map(|row| x.iter().map(|&j| row[j]).sum::<f64>()).sum();
            let within: f64 = x.iter().map(|&i| x.iter().map(|&j| sim[i][j]).sum::<f64>()).sum();
            cover - lambda * within
        }
        Reference::LogDet { sim, reg } => log_det(add_diagonal(pick(sim, x, x), *reg))?,
        Reference::DisparitySum { sim } => {
            let mut total = 0.0;
            for (a, &i) in x.iter().enumerate() {
                for &j in &x[a + 1..] {
                    total += 1.0 - sim[i][j];
                }
            }
            total
        }
        Reference::DisparityMin { sim } => {
            let mut best: Option<f64> = None;
            for (a, &i) in x.iter().enumerate() {
                for &j in &x[a + 1..] {
                    let d = 1.0 - sim[i][j];
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
            best.unwrap_or(0.0)
        }
        Reference::SetCover { weights, covers } => {
            let mut hit = vec![false; weights.len()];
            x.iter().flat_map(|&e| &covers[e]).for_each(|&c| hit[c] = true);
            weights.iter().zip(hit).filter(|(_, h)| *h).map(|(w, _)| w).sum()
        }
        Reference::ProbabilisticSetCover { weights, probs } => (0..weights.len())
            .map(|u| {
                let miss: f64 = x
                    .iter()
                    .map(|&e| 1.0 - probs[e].iter().find(|(c, _)| *c == u).map_or(0.0, |p| p.1))
                    .product();
                weights[u] * (1.0 - miss)
            })
            .sum(),
        Reference::FeatureBased { weights, scores, concave: g } => (0..weights.len())
            .map(|f| weights[f] * concave(*g, x.iter().map(|&e| scores[e][f]).sum()))
            .sum(),
        Reference::FlVmi { sim, query_sim, eta } => (0..sim.len())
            .map(|i| max_over(&sim[i], x).min(eta * query_sim[i].iter().copied().fold(0.0, f64::max)))
            .sum(),
        Reference::FlQmi { query_sim, eta } => {
            let queries = query_sim.first().map_or(0, Vec::len);
            let to_queries: f64 =
                (0..queries).map(|q| x.iter().map(|&i| query_sim[i][q]).fold(0.0, f64::max)).sum();
            let to_selected: f64 = x.iter().map(|&i| query_sim[i].iter().copied().fold(0.0, f64::max)).sum();
            to_queries + eta * to_selected
        }
        Reference::FlCg { sim, private_sim, nu } => (0..sim.len())
            .map(|i| (max_over(&sim[i], x) - nu * private_sim[i].iter().copied().fold(0.0, f64::max)).max(0.0))
            .sum(),
        Reference::FlCmi { sim, query_sim, private_sim, eta, nu } => (0..sim.len())
            .map(|i| {
                let capped = max_over(&sim[i], x).min(eta * query_sim[i].iter().copied().fold(0.0, f64::max));
                (capped - nu * private_sim[i].iter().copied().fold(0.0, f64::max)).max(0.0)
            })
            .sum(),
        Reference::GcMi { query_sim, lambda, eta } => {
            2.0 * lambda * eta * x.iter().map(|&i| query_sim[i].iter().sum::<f64>()).sum::<f64>()
        }
        Reference::GcCg { sim, private_sim, lambda, nu } => {
            let cover: f64 = sim.iter().map(|row| x.iter().map(|&j| row[j]).sum::<f64>()).sum();
            let within: f64 = x.iter().map(|&i| x.iter().map(|&j| sim[i][j]).sum::<f64>()).sum();
            let to_private: f64 = x.iter().map(|&i| private_sim[i].iter().sum::<f64>()).sum();
            cover - lambda * within - 2.0 * lambda * nu * to_private
        }
        Reference::LogDetMi { sim, query_sim, query_query, reg, eta } => {
            log_det(add_diagonal(pick(sim, x, x), *reg))?
                - log_det(conditioned(sim, query_sim, query_query, x, *reg, eta * eta)?)?
        }
        Reference::LogDetCg { sim, private_sim, private_private, reg, nu } => {
            log_det(conditioned(sim, private_sim, private_private, x, *reg, nu * nu)?)?
        }
        Reference::LogDetCmiRatio { universe, query, private, reg } => {
            let joint: Vec<usize> = x.iter().chain(private).copied().collect();
            (mi_ratio_det(universe, private, query, *reg)? / mi_ratio_det(universe, &joint, query, *reg)?).ln()
        }
        Reference::Com { query_sim, eta, psi } => {
            let queries = query_sim.first().map_or(0, Vec::len);
            let modular: f64 = x.iter().map(|&i| concave(*psi, query_sim[i].iter().sum())).sum();
            let per_query: f64 = (0..queries).map(|q| concave(*psi, x.iter().map(|&i| query_sim[i][q]).sum())).sum();
            eta * modular + per_query
        }
    })
}
