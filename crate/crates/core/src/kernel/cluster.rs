use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::FeatureMatrix;

const MAX_ITERATIONS: usize = 300;
const RELATIVE_TOLERANCE: f64 = 1e-4;

/// Partition of the ground set into `k` non-empty clusters with ids `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterMap {
    assignments: Vec<usize>,
    k: usize,
}

impl ClusterMap {
    /// Validates that ids are dense in `0..k` and that no cluster is empty.
    pub fn from_assignments(assignments: Vec<usize>) -> Result<Self> {
        if assignments.is_empty() {
            return Err(Error::InvalidConfig("cluster map over an empty ground set".into()));
        }
        let k = assignments.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; k];
        for &c in &assignments {
            sizes[c] += 1;
        }
        if let Some(c) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidConfig(format!("cluster {c} is empty")));
        }
        Ok(ClusterMap { assignments, k })
    }

    /// Every element in cluster 0.
    pub fn single(n: usize) -> Self {
        ClusterMap { assignments: vec![0; n], k: 1 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignments.len()
    }

    pub fn cluster_of(&self, element: usize) -> usize {
        self.assignments[element]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    /// Members of each cluster in ascending element order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (e, &c) in self.assignments.iter().enumerate() {
            out[c].push(e);
        }
        out
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-means with k-means++ seeding; deterministic for a given `seed`.
pub fn cluster_ground_set(data: &FeatureMatrix, k: usize, seed: u64) -> Result<ClusterMap> {
    let n = data.rows();
    if k == 0 || k > n {
        return Err(Error::InvalidClusterCount { k, n });
    }
    let dims = data.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // k-means++ seeding over distinct rows
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centroids: Vec<Vec<f64>> = vec![data.row(first).to_vec()];
    let mut nearest: Vec<f64> = (0..n).map(|i| sq_dist(data.row(i), &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = nearest.iter().enumerate().filter(|(i, _)| !chosen[*i]).map(|(_, d)| d).sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = None;
            for i in (0..n).filter(|&i| !chosen[i]) {
                target -= nearest[i];
                if target <= 0.0 && nearest[i] > 0.0 {
                    pick = Some(i);
                    break;
                }
            }
            pick.unwrap_or_else(|| (0..n).rev().find(|&i| !chosen[i] && nearest[i] > 0.0).unwrap())
        } else {
            // remaining points coincide with centroids
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen[pick] = true;
        centroids.push(data.row(pick).to_vec());
        let c = centroids.last().unwrap();
        for (i, d) in nearest.iter_mut().enumerate() {
            *d = d.min(sq_dist(data.row(i), c));
        }
    }

    let assign = |centroids: &[Vec<f64>], labels: &mut [usize]| -> f64 {
        let mut inertia = 0.0;
        for (i, label) in labels.iter_mut().enumerate() {
            let (best, d) = centroids
                .iter()
                .enumerate()
                .map(|(c, ctr)| (c, sq_dist(data.row(i), ctr)))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
                .unwrap();
            *label = best;
            inertia += d;
        }
        inertia
    };

    let mut labels = vec![0usize; n];
    let mut inertia = assign(&centroids, &mut labels);
    for _ in 0..MAX_ITERATIONS {
        let mut sums = vec![vec![0.0; dims]; k];
        let mut counts = vec![0usize; k];
        for (i, &c) in labels.iter().enumerate() {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(data.row(i)) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        let next = assign(&centroids, &mut labels);
        let done = inertia == 0.0 || (inertia - next).abs() <= RELATIVE_TOLERANCE * inertia;
        inertia = next;
        if done {
            break;
        }
    }

    fill_empty_clusters(data, &centroids, &mut labels, k);
    ClusterMap::from_assignments(labels)
}

/// Move the worst-fitting point of a multi-member cluster into each empty one.
fn fill_empty_clusters(data: &FeatureMatrix, centroids: &[Vec<f64>], labels: &mut [usize], k: usize) {
    loop {
        let mut counts = vec![0usize; k];
        for &c in labels.iter() {
            counts[c] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let donor = (0..labels.len())
            .filter(|&i| counts[labels[i]] > 1)
            .max_by(|&a, &b| {
                let da = sq_dist(data.row(a), &centroids[labels[a]]);
                let db = sq_dist(data.row(b), &centroids[labels[b]]);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .expect("k <= n guarantees a cluster with two members");
        labels[donor] = empty;
    }
}
