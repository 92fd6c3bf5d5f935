//! Crowding distance over a dataset, treating features as objectives.
//!
//! Two variants:
//! * `crowding_standard` — per-feature sorted extremes get an infinite
//!   sentinel, interior gaps are normalized by the feature range and
//!   averaged over features.
//! * `crowding_modified` — the dataset is augmented with two artificial
//!   rows (ideal = componentwise min, nadir = componentwise max) that pin
//!   the sorted extremes of every feature; real points accumulate
//!   unnormalized gaps averaged over features. All returned values are
//!   finite. Small value = dense (highly crowded) region.

use crate::dataset::{feature_stats, Dataset};
use crate::error::{Error, Result};

/// Which crowding formula produced the values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrowdingVariant {
    Standard,
    Modified,
}

/// Per-point crowding distances. Length always equals the dataset's n;
/// artificial augmentation rows are never reported.
#[derive(Debug, Clone, PartialEq)]
pub struct CrowdingVector {
    values: Vec<f64>,
    variant: CrowdingVariant,
}

impl CrowdingVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn variant(&self) -> CrowdingVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Indices of the points ordered from most crowded (smallest value)
    /// to least crowded; ties broken by row index.
    pub fn argsort_ascending(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| {
            self.values[a]
                .partial_cmp(&self.values[b])
                .expect("crowding values are never NaN")
        });
        idx
    }
}

/// Boundary value assigned to the artificial augmentation rows:
/// M (feature count) times the maximum feature value.
#[cfg(test)]
pub(crate) fn modified_boundary(d: usize, global_max: f64) -> f64 {
    d as f64 * global_max
}

/// Classic crowding distance: for every feature the two sorted extremes
/// receive an infinite sentinel; interior points accumulate
/// `(next - prev) / (f_max - f_min)`; finite totals are divided by the
/// feature count. Constant features contribute nothing to interior sums.
pub fn crowding_standard(dataset: &Dataset) -> Result<CrowdingVector> {
    let n = dataset.n();
    if n < 2 {
        return Err(Error::EmptyInput { required: 2, got: n });
    }
    let d = dataset.d();
    let stats = feature_stats(dataset);
    if (0..d).all(|j| stats.per_feature_max[j] == stats.per_feature_min[j]) {
        return Err(Error::DegenerateFeature);
    }
    let m = d as f64;
    let mut totals = vec![0.0f64; n];
    let mut infinite = vec![false; n];
    let mut idx: Vec<usize> = (0..n).collect();
    for j in 0..d {
        // explicit index tie-break: the vector still carries the previous
        // feature's order, so stability alone would not give row order
        idx.sort_by(|&a, &b| {
            dataset.row(a)[j]
                .partial_cmp(&dataset.row(b)[j])
                .expect("dataset entries are finite")
                .then_with(|| a.cmp(&b))
        });
        infinite[idx[0]] = true;
        infinite[idx[n - 1]] = true;
        let span = stats.per_feature_max[j] - stats.per_feature_min[j];
        if span == 0.0 {
            continue;
        }
        for pos in 1..n - 1 {
            totals[idx[pos]] +=
                (dataset.row(idx[pos + 1])[j] - dataset.row(idx[pos - 1])[j]) / span;
        }
    }
    let values = (0..n)
        .map(|i| {
            if infinite[i] {
                f64::INFINITY
            } else {
                totals[i] / m
            }
        })
        .collect();
    Ok(CrowdingVector {
        values,
        variant: CrowdingVariant::Standard,
    })
}

/// Modified crowding distance. The augmented per-feature order is always
/// `ideal, real rows (stably sorted), nadir`: the artificial rows pin the
/// sorted extremes, so every real point is interior and accumulates the
/// unnormalized gap between its sorted neighbors. Totals are divided by
/// the feature count; the artificial rows would carry the boundary value
/// M * global_max but are stripped from the result.
pub fn crowding_modified(dataset: &Dataset) -> Result<CrowdingVector> {
    let n = dataset.n();
    if n < 1 {
        return Err(Error::EmptyInput { required: 1, got: n });
    }
    let d = dataset.d();
    let stats = feature_stats(dataset);
    let m = d as f64;
    let mut totals = vec![0.0f64; n];
    let mut idx: Vec<usize> = (0..n).collect();
    for j in 0..d {
        // explicit index tie-break: the vector still carries the previous
        // feature's order, so stability alone would not give row order
        idx.sort_by(|&a, &b| {
            dataset.row(a)[j]
                .partial_cmp(&dataset.row(b)[j])
                .expect("dataset entries are finite")
                .then_with(|| a.cmp(&b))
        });
        for pos in 0..n {
            let prev = if pos == 0 {
                stats.per_feature_min[j] // ideal occupies the sorted front
            } else {
                dataset.row(idx[pos - 1])[j]
            };
            let next = if pos + 1 == n {
                stats.per_feature_max[j] // nadir occupies the sorted back
            } else {
                dataset.row(idx[pos + 1])[j]
            };
            totals[idx[pos]] += next - prev;
        }
    }
    for t in &mut totals {
        *t /= m;
    }
    Ok(CrowdingVector {
        values: totals,
        variant: CrowdingVariant::Modified,
    })
}
