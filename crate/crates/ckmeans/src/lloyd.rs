//! Lloyd's k-means: alternating nearest-centroid assignment and
//! centroid-mean updates, with deterministic empty-cluster repair.

use serde::{Deserialize, Serialize};

use crate::dataset::{sq_dist, CentroidSet, Dataset, LabelVector};
use crate::error::{Error, Result};

fn default_max_iter() -> usize {
    300
}

fn default_tol() -> f64 {
    1e-6
}

/// Iteration controls. `standardize_first` is pipeline metadata: the
/// benchmark/CLI standardize the dataset before seeding and clustering
/// when it is set; `run_kmeans` itself operates on the data it is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KmeansConfig {
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub standardize_first: bool,
}

impl Default for KmeansConfig {
    fn default() -> Self {
        Self {
            max_iter: default_max_iter(),
            tol: default_tol(),
            standardize_first: false,
        }
    }
}

/// Outcome of a k-means run. Labels are the post-repair assignment that
/// produced the final centroids, so every cluster index occurs at least
/// once.
#[derive(Debug, Clone, PartialEq)]
pub struct KmeansResult {
    pub labels: LabelVector,
    pub centroids: CentroidSet,
    pub inertia: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Label every point with its nearest centroid under squared Euclidean
/// distance; ties go to the lowest centroid index.
pub fn assign_points(dataset: &Dataset, centroids: &CentroidSet) -> Result<LabelVector> {
    if dataset.d() != centroids.d() {
        return Err(Error::DimensionMismatch {
            expected: dataset.d(),
            got: centroids.d(),
        });
    }
    let k = centroids.k();
    let mut labels = Vec::with_capacity(dataset.n());
    for i in 0..dataset.n() {
        let row = dataset.row(i);
        let mut best = 0usize;
        let mut best_d = sq_dist(row, centroids.center(0));
        for c in 1..k {
            let d = sq_dist(row, centroids.center(c));
            if d < best_d {
                best = c;
                best_d = d;
            }
        }
        labels.push(best);
    }
    LabelVector::new(labels, k)
}

/// Mean of each cluster's members. Fails with the first empty cluster
/// index; `run_kmeans` handles the repair.
pub fn update_centroids(dataset: &Dataset, labels: &LabelVector, k: usize) -> Result<CentroidSet> {
    if labels.len() != dataset.n() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: dataset.n(),
        });
    }
    if labels.labels().iter().any(|&l| l >= k) {
        return Err(Error::InvalidDataset(format!(
            "label out of range for k={k}"
        )));
    }
    let d = dataset.d();
    let mut sums = vec![0.0f64; k * d];
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.labels().iter().enumerate() {
        counts[l] += 1;
        let row = dataset.row(i);
        for j in 0..d {
            sums[l * d + j] += row[j];
        }
    }
    if let Some(empty) = counts.iter().position(|&c| c == 0) {
        return Err(Error::EmptyCluster(empty));
    }
    for (l, &c) in counts.iter().enumerate() {
        for j in 0..d {
            sums[l * d + j] /= c as f64;
        }
    }
    CentroidSet::new(sums, d)
}

fn total_inertia(dataset: &Dataset, labels: &LabelVector, centroids: &CentroidSet) -> f64 {
    labels
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(dataset.row(i), centroids.center(l)))
        .sum()
}

/// Relabel the point farthest from its assigned centroid (ties by row
/// index) into the empty cluster. Sole members of their cluster are not
/// candidates, so no new empty cluster is created; with n >= k such a
/// candidate always exists.
fn repair_empty_cluster(
    dataset: &Dataset,
    labels: &mut [usize],
    centroids: &CentroidSet,
    empty: usize,
) {
    let mut counts = vec![0usize; centroids.k()];
    for &l in labels.iter() {
        counts[l] += 1;
    }
    let mut best: Option<(usize, f64)> = None;
    for (i, &l) in labels.iter().enumerate() {
        if counts[l] < 2 {
            continue;
        }
        let d = sq_dist(dataset.row(i), centroids.center(l));
        match best {
            Some((_, b)) if d <= b => {}
            _ => best = Some((i, d)),
        }
    }
    let (far, _) = best.expect("a cluster with >= 2 members exists when n >= k");
    labels[far] = empty;
}

/// Run Lloyd's iteration from the given seed centroids.
pub fn run_kmeans(
    dataset: &Dataset,
    seed_centroids: &CentroidSet,
    config: &KmeansConfig,
) -> Result<KmeansResult> {
    run_kmeans_traced(dataset, seed_centroids, config).map(|(r, _)| r)
}

/// As `run_kmeans`, additionally returning the inertia observed after the
/// initial assignment and after every centroid update — a non-increasing
/// sequence (diagnostic for monotonicity checks).
pub fn run_kmeans_traced(
    dataset: &Dataset,
    seed_centroids: &CentroidSet,
    config: &KmeansConfig,
) -> Result<(KmeansResult, Vec<f64>)> {
    if dataset.d() != seed_centroids.d() {
        return Err(Error::DimensionMismatch {
            expected: dataset.d(),
            got: seed_centroids.d(),
        });
    }
    let k = seed_centroids.k();
    let n = dataset.n();
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    let mut centroids = seed_centroids.clone();
    let mut labels = assign_points(dataset, &centroids)?.labels().to_vec();
    let mut trace = vec![total_inertia(
        dataset,
        &LabelVector::new(labels.clone(), k)?,
        &centroids,
    )];
    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < config.max_iter {
        iterations += 1;
        let new_centroids = loop {
            match update_centroids(dataset, &LabelVector::new(labels.clone(), k)?, k) {
                Ok(c) => break c,
                Err(Error::EmptyCluster(empty)) => {
                    repair_empty_cluster(dataset, &mut labels, &centroids, empty);
                }
                Err(e) => return Err(e),
            }
        };
        let movement: f64 = (0..k)
            .map(|c| sq_dist(centroids.center(c), new_centroids.center(c)))
            .sum();
        centroids = new_centroids;
        trace.push(total_inertia(
            dataset,
            &LabelVector::new(labels.clone(), k)?,
            &centroids,
        ));
        if movement <= config.tol {
            converged = true;
            break;
        }
        if iterations < config.max_iter {
            labels = assign_points(dataset, &centroids)?.labels().to_vec();
        }
    }
    let labels = LabelVector::new(labels, k)?;
    let inertia = total_inertia(dataset, &labels, &centroids);
    Ok((
        KmeansResult {
            labels,
            centroids,
            inertia,
            iterations,
            converged,
        },
        trace,
    ))
}
