//! Seed-point selection: three crowding-based methods (ckmeans, fckmeans,
//! rckmeans) and three baselines (random, kmeanspp, maxmin).
//!
//! All ties break to the lowest row index. ckmeans and fckmeans consume
//! no randomness; the rest derive a private ChaCha stream from the
//! caller's 64-bit seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crowding::crowding_modified;
use crate::dataset::{dist, feature_stats, sq_dist, CentroidSet, Dataset};
use crate::error::{Error, Result};

/// The six initialization methods, with their exact CLI/report names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitMethod {
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "kmeanspp")]
    Kmeanspp,
    #[serde(rename = "maxmin")]
    Maxmin,
    #[serde(rename = "ckmeans")]
    Ckmeans,
    #[serde(rename = "fckmeans")]
    Fckmeans,
    #[serde(rename = "rckmeans")]
    Rckmeans,
}

impl InitMethod {
    pub const ALL: [InitMethod; 6] = [
        InitMethod::Random,
        InitMethod::Kmeanspp,
        InitMethod::Maxmin,
        InitMethod::Ckmeans,
        InitMethod::Fckmeans,
        InitMethod::Rckmeans,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            InitMethod::Random => "random",
            InitMethod::Kmeanspp => "kmeanspp",
            InitMethod::Maxmin => "maxmin",
            InitMethod::Ckmeans => "ckmeans",
            InitMethod::Fckmeans => "fckmeans",
            InitMethod::Rckmeans => "rckmeans",
        }
    }

    /// Deterministic methods ignore the seed and need only one benchmark run.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, InitMethod::Ckmeans | InitMethod::Fckmeans)
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitMethod::ALL
            .iter()
            .find(|m| m.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// A fully specified seeding job.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRequest {
    pub method: InitMethod,
    pub k: usize,
    pub rng_seed: u64,
}

/// Dispatch a seeding job to the matching initializer.
pub fn initialize(dataset: &Dataset, req: &SeedRequest) -> Result<CentroidSet> {
    match req.method {
        InitMethod::Random => init_random(dataset, req.k, req.rng_seed),
        InitMethod::Kmeanspp => init_kmeanspp(dataset, req.k, req.rng_seed),
        InitMethod::Maxmin => init_maxmin(dataset, req.k, req.rng_seed),
        InitMethod::Ckmeans => init_ckmeans(dataset, req.k),
        InitMethod::Fckmeans => init_fckmeans(dataset, req.k),
        InitMethod::Rckmeans => init_rckmeans(dataset, req.k, req.rng_seed),
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    Ok(())
}

/// Denominator floor for the fckmeans/rckmeans ratio; keeps duplicate
/// points (zero crowding) from producing infinite ratios.
fn ratio_epsilon(global_max: f64) -> f64 {
    1e-12 * (1.0 + global_max)
}

/// distance-to-nearest-centroid / crowding ratio; coincident points get 0.
fn fcp_ratio(min_dist: f64, crowding: f64, eps: f64) -> f64 {
    let r = min_dist / crowding.max(eps);
    if r.is_nan() {
        0.0
    } else {
        r
    }
}

/// The k most crowded points (smallest modified crowding values, ties by
/// row index), in crowding order.
pub fn init_ckmeans(dataset: &Dataset, k: usize) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let order = crowding_modified(dataset)?.argsort_ascending();
    CentroidSet::from_dataset_rows(dataset, order[..k].to_vec())
}

/// Greedy furthest-crowded-points selection: start from the most crowded
/// point, then repeatedly take the point maximizing
/// (distance to nearest selected centroid) / max(crowding, eps).
pub fn init_fckmeans(dataset: &Dataset, k: usize) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let n = dataset.n();
    let crowding = crowding_modified(dataset)?;
    let eps = ratio_epsilon(feature_stats(dataset).global_max);
    let first = crowding.argsort_ascending()[0];
    let mut selected = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut min_dist: Vec<f64> = (0..n)
        .map(|i| dist(dataset.row(i), dataset.row(first)))
        .collect();
    while selected.len() < k {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if chosen[i] {
                continue;
            }
            let r = fcp_ratio(min_dist[i], crowding.values()[i], eps);
            match best {
                Some((_, b)) if r <= b => {}
                _ => best = Some((i, r)),
            }
        }
        let (next, _) = best.expect("k <= n leaves an unselected point");
        chosen[next] = true;
        selected.push(next);
        for i in 0..n {
            let d = dist(dataset.row(i), dataset.row(next));
            if d < min_dist[i] {
                min_dist[i] = d;
            }
        }
    }
    CentroidSet::from_dataset_rows(dataset, selected)
}

/// Draw an index proportionally to `weights`; None when the weights give
/// no usable distribution (all zero or non-finite total).
fn sample_weighted(rng: &mut ChaCha8Rng, candidates: &[usize], weights: &[f64]) -> Option<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return None;
    }
    let r = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (&i, &w) in candidates.iter().zip(weights) {
        acc += w;
        if r < acc {
            return Some(i);
        }
    }
    candidates.last().copied()
}

/// Uniform choice among candidates (fallback for degenerate weights).
fn sample_uniform(rng: &mut ChaCha8Rng, candidates: &[usize]) -> usize {
    candidates[rng.random_range(0..candidates.len())]
}

/// Randomized fckmeans: first centroid deterministic (most crowded), each
/// next centroid sampled proportionally to the fckmeans ratio.
pub fn init_rckmeans(dataset: &Dataset, k: usize, rng_seed: u64) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let n = dataset.n();
    let crowding = crowding_modified(dataset)?;
    let eps = ratio_epsilon(feature_stats(dataset).global_max);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let first = crowding.argsort_ascending()[0];
    let mut selected = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut min_dist: Vec<f64> = (0..n)
        .map(|i| dist(dataset.row(i), dataset.row(first)))
        .collect();
    while selected.len() < k {
        let candidates: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
        let weights: Vec<f64> = candidates
            .iter()
            .map(|&i| fcp_ratio(min_dist[i], crowding.values()[i], eps))
            .collect();
        let next = sample_weighted(&mut rng, &candidates, &weights)
            .unwrap_or_else(|| sample_uniform(&mut rng, &candidates));
        chosen[next] = true;
        selected.push(next);
        for i in 0..n {
            let d = dist(dataset.row(i), dataset.row(next));
            if d < min_dist[i] {
                min_dist[i] = d;
            }
        }
    }
    CentroidSet::from_dataset_rows(dataset, selected)
}

/// k-means++: first centroid uniform, each next sampled proportionally to
/// the squared distance to the nearest selected centroid.
pub fn init_kmeanspp(dataset: &Dataset, k: usize, rng_seed: u64) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let n = dataset.n();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let first = rng.random_range(0..n);
    let mut selected = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut min_sq: Vec<f64> = (0..n)
        .map(|i| sq_dist(dataset.row(i), dataset.row(first)))
        .collect();
    while selected.len() < k {
        let candidates: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
        let weights: Vec<f64> = candidates.iter().map(|&i| min_sq[i]).collect();
        let next = sample_weighted(&mut rng, &candidates, &weights)
            .unwrap_or_else(|| sample_uniform(&mut rng, &candidates));
        chosen[next] = true;
        selected.push(next);
        for i in 0..n {
            let d = sq_dist(dataset.row(i), dataset.row(next));
            if d < min_sq[i] {
                min_sq[i] = d;
            }
        }
    }
    CentroidSet::from_dataset_rows(dataset, selected)
}

/// Maxmin: first centroid uniform, each next is the point with maximum
/// distance to its nearest selected centroid (ties by row index).
pub fn init_maxmin(dataset: &Dataset, k: usize, rng_seed: u64) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let n = dataset.n();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let first = rng.random_range(0..n);
    let mut selected = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut min_sq: Vec<f64> = (0..n)
        .map(|i| sq_dist(dataset.row(i), dataset.row(first)))
        .collect();
    while selected.len() < k {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if chosen[i] {
                continue;
            }
            match best {
                Some((_, b)) if min_sq[i] <= b => {}
                _ => best = Some((i, min_sq[i])),
            }
        }
        let (next, _) = best.expect("k <= n leaves an unselected point");
        chosen[next] = true;
        selected.push(next);
        for i in 0..n {
            let d = sq_dist(dataset.row(i), dataset.row(next));
            if d < min_sq[i] {
                min_sq[i] = d;
            }
        }
    }
    CentroidSet::from_dataset_rows(dataset, selected)
}

/// k distinct rows drawn uniformly without replacement.
pub fn init_random(dataset: &Dataset, k: usize, rng_seed: u64) -> Result<CentroidSet> {
    check_k(k, dataset.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let indices = rand::seq::index::sample(&mut rng, dataset.n(), k).into_vec();
    CentroidSet::from_dataset_rows(dataset, indices)
}
