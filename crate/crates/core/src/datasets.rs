//! Seeded synthetic point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::kernel::FeatureMatrix;

/// Points with the index of the cluster each was drawn from; `None` marks
/// an outlier.
#[derive(Debug, Clone)]
pub struct LabeledPoints {
    pub data: FeatureMatrix,
    pub labels: Vec<Option<usize>>,
    pub centers: Vec<Vec<f64>>,
}

impl LabeledPoints {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn outliers(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i].is_none()).collect()
    }

    /// Index of the point closest to each center.
    pub fn nearest_to_centers(&self) -> Vec<usize> {
        self.centers
            .iter()
            .map(|c| {
                (0..self.len())
                    .min_by(|&a, &b| dist2(self.data.row(a), c).total_cmp(&dist2(self.data.row(b), c)))
                    .unwrap()
            })
            .collect()
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Isotropic Gaussian blobs. Centers are uniform in `[-10, 10]^dims` and
/// points are split as evenly as possible, earlier clusters taking the
/// remainder. Point order is cluster by cluster.
pub fn blobs(n: usize, clusters: usize, dims: usize, std: f64, seed: u64) -> Result<LabeledPoints> {
    if clusters == 0 || clusters > n {
        return Err(Error::InvalidClusterCount { k: clusters, n });
    }
    if dims == 0 {
        return Err(Error::InvalidData("points need at least one dimension".into()));
    }
    if !(std.is_finite() && std >= 0.0) {
        return Err(Error::InvalidConfig(format!("standard deviation {std} must be finite and >= 0")));
    }
    let noise = Normal::new(0.0, std).map_err(|e| Error::InvalidConfig(format!("standard deviation {std}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<f64>> =
        (0..clusters).map(|_| (0..dims).map(|_| rng.random_range(-10.0..10.0)).collect()).collect();
    let mut values = Vec::with_capacity(n * dims);
    let mut labels = Vec::with_capacity(n);
    for (c, center) in centers.iter().enumerate() {
        let count = n / clusters + usize::from(c < n % clusters);
        for _ in 0..count {
            values.extend(center.iter().map(|&m| m + noise.sample(&mut rng)));
            labels.push(Some(c));
        }
    }
    Ok(LabeledPoints { data: FeatureMatrix::new(n, dims, values)?, labels, centers })
}

/// The 500-point, 10-cluster, standard deviation 4 benchmark set in 2-D.
pub fn benchmark_blobs(seed: u64) -> LabeledPoints {
    blobs(500, 10, 2, 4.0, seed).expect("fixed parameters are valid")
}

/// 48 points in the plane: five tight clusters of nine points followed by
/// three far outliers (the last three indices).
pub fn clusters_with_outliers(seed: u64) -> LabeledPoints {
    let centers = vec![vec![2.0, 2.0], vec![2.0, 18.0], vec![18.0, 2.0], vec![18.0, 18.0], vec![10.0, 10.0]];
    let outliers = [[-14.0, 10.0], [34.0, 10.0], [10.0, 34.0]];
    let noise = Normal::new(0.0, 0.8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(96);
    let mut labels = Vec::with_capacity(48);
    for (c, center) in centers.iter().enumerate() {
        for _ in 0..9 {
            values.extend(center.iter().map(|&m| m + noise.sample(&mut rng)));
            labels.push(Some(c));
        }
    }
    for o in outliers {
        values.extend(o);
        labels.push(None);
    }
    LabeledPoints { data: FeatureMatrix::new(48, 2, values).unwrap(), labels, centers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blob_sizes_and_determinism() {
        let a = blobs(23, 4, 3, 1.0, 9).unwrap();
        assert_eq!(a.data.rows(), 23);
        assert_eq!(a.labels.iter().filter(|l| **l == Some(0)).count(), 6);
        assert_eq!(a.labels.iter().filter(|l| **l == Some(3)).count(), 5);
        assert_eq!(a.data, blobs(23, 4, 3, 1.0, 9).unwrap().data);
        assert_ne!(a.data, blobs(23, 4, 3, 1.0, 10).unwrap().data);
        assert!(blobs(3, 4, 2, 1.0, 0).is_err());
        assert!(blobs(3, 1, 2, -1.0, 0).is_err());
    }

    #[test]
    fn benchmark_spread() {
        let b = benchmark_blobs(0);
        let mean = b.data.values().iter().step_by(2).sum::<f64>() / 500.0;
        assert!(mean.abs() < 10.0);
        assert_eq!(b.centers.len(), 10);
    }

    #[test]
    fn outlier_layout() {
        let d = clusters_with_outliers(1);
        assert_eq!(d.len(), 48);
        assert_eq!(d.outliers(), vec![45, 46, 47]);
        for (c, &i) in d.nearest_to_centers().iter().enumerate() {
            assert_eq!(d.labels[i], Some(c));
        }
    }
}
