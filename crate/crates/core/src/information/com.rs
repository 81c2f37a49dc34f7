use crate::error::Result;
use crate::functions::Concave;
use crate::set_function::{InstanceId, Objective, Properties};

use super::QueryContext;

/// Concave-over-modular MI: `η Σ_{i∈A} ψ(Σ_{j∈Q} S_ij) + Σ_{j∈Q} ψ(Σ_{i∈A} S_ij)`.
#[derive(Debug, Clone)]
pub struct ConcaveOverModular {
    id: InstanceId,
    /// `|V| x |Q|`
    cross: Vec<f64>,
    queries: usize,
    /// `η ψ(Σ_j S_ij)`
    modular: Vec<f64>,
    psi: Concave,
}

impl ConcaveOverModular {
    pub fn new(query: &QueryContext, psi: Concave) -> Result<Self> {
        let eta = query.eta();
        let modular = query.0.row_sum().into_iter().map(|s| eta * psi.apply(s)).collect();
        Ok(ConcaveOverModular {
            id: InstanceId::fresh(),
            cross: query.cross().values().to_vec(),
            queries: query.len(),
            modular,
            psi,
        })
    }

    fn row(&self, e: usize) -> &[f64] {
        &self.cross[e * self.queries..(e + 1) * self.queries]
    }

    fn query_term(&self, sums: &[f64]) -> f64 {
        sums.iter().map(|&t| self.psi.apply(t)).sum()
    }
}

pub struct ComStat {
    /// `Σ_{i∈A} S_ij` per query item
    sums: Vec<f64>,
    modular: f64,
}

impl Objective for ConcaveOverModular {
    type Stat = ComStat;

    fn instance_id(&self) -> InstanceId {
        self.id
    }

    fn label(&self) -> &str {
        "com"
    }

    fn size(&self) -> usize {
        self.modular.len()
    }

    fn flags(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn value(&self, members: &[usize]) -> Result<f64> {
        let mut sums = vec![0.0; self.queries];
        for &e in members {
            for (t, s) in sums.iter_mut().zip(self.row(e)) {
                *t += s;
            }
        }
        Ok(members.iter().map(|&e| self.modular[e]).sum::<f64>() + self.query_term(&sums))
    }

    fn empty_stat(&self) -> Result<ComStat> {
        Ok(ComStat { sums: vec![0.0; self.queries], modular: 0.0 })
    }

    fn stat_gain(&self, stat: &ComStat, e: usize) -> Result<f64> {
        let psi = self.psi;
        let delta: f64 = stat.sums.iter().zip(self.row(e)).map(|(&t, &s)| psi.apply(t + s) - psi.apply(t)).sum();
        Ok(self.modular[e] + delta)
    }

    fn stat_insert(&self, stat: &mut ComStat, e: usize) -> Result<()> {
        let row = &self.cross[e * self.queries..(e + 1) * self.queries];
        for (t, s) in stat.sums.iter_mut().zip(row) {
            *t += s;
        }
        stat.modular += self.modular[e];
        Ok(())
    }

    fn stat_value(&self, stat: &ComStat) -> Result<f64> {
        Ok(stat.modular + self.query_term(&stat.sums))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::CrossKernel;
    use crate::set_function::{SetFunction, Subset};

    #[test]
    fn single_query_sqrt() {
        let q = QueryContext::new(CrossKernel::from_rows(&[[0.36], [0.04]]).unwrap(), 1.0).unwrap();
        let f = ConcaveOverModular::new(&q, Concave::Sqrt).unwrap();
        assert!((f.evaluate(&Subset::new([0]).unwrap()).unwrap() - 1.2).abs() < 1e-12);
        assert_eq!(f.evaluate(&Subset::empty()).unwrap(), 0.0);
        let memo = f.memo_for(&Subset::new([0]).unwrap()).unwrap();
        let direct = f.marginal_gain(&Subset::new([0]).unwrap(), 1).unwrap();
        assert!((f.marginal_gain_with_memo(&memo, 1).unwrap() - direct).abs() < 1e-12);
    }
}
