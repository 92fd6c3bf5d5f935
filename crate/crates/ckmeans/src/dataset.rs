//! Core numeric types: datasets, feature statistics, label vectors and
//! centroid sets. Everything here is immutable after construction and
//! safe to share across workers.

use crate::error::{Error, Result};

/// An n x d matrix of finite reals with an optional ground-truth labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    points: Vec<f64>, // row-major n x d
    n: usize,
    d: usize,
    truth: Option<LabelVector>,
}

impl Dataset {
    /// Build a dataset from a row-major point matrix.
    ///
    /// Every entry must be finite; `truth`, when present, must have one
    /// label per row.
    pub fn new(
        name: impl Into<String>,
        points: Vec<f64>,
        d: usize,
        truth: Option<LabelVector>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDataset("d must be >= 1".into()));
        }
        if points.is_empty() || points.len() % d != 0 {
            return Err(Error::InvalidDataset(format!(
                "point buffer of length {} is not a non-empty multiple of d={}",
                points.len(),
                d
            )));
        }
        let n = points.len() / d;
        if let Some((i, _)) = points.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite entry at row {}, column {}",
                i / d,
                i % d
            )));
        }
        if let Some(t) = &truth {
            if t.len() != n {
                return Err(Error::LengthMismatch {
                    left: t.len(),
                    right: n,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            points,
            n,
            d,
            truth,
        })
    }

    /// Convenience constructor from per-row slices.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidDataset("rows have unequal lengths".into()));
        }
        Dataset::new(name, rows.concat(), d, None)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn truth(&self) -> Option<&LabelVector> {
        self.truth.as_ref()
    }
}

/// Per-feature minima and maxima, plus the overall maximum entry.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureStats {
    pub per_feature_min: Vec<f64>,
    pub per_feature_max: Vec<f64>,
    pub global_max: f64,
}

/// Componentwise min/max over rows and the maximum of the per-feature maxima.
pub fn feature_stats(dataset: &Dataset) -> FeatureStats {
    let d = dataset.d();
    let mut min = dataset.row(0).to_vec();
    let mut max = dataset.row(0).to_vec();
    for i in 1..dataset.n() {
        let row = dataset.row(i);
        for j in 0..d {
            if row[j] < min[j] {
                min[j] = row[j];
            }
            if row[j] > max[j] {
                max[j] = row[j];
            }
        }
    }
    let global_max = max.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    FeatureStats {
        per_feature_min: min,
        per_feature_max: max,
        global_max,
    }
}

/// Map each feature to zero mean and unit standard deviation
/// (population, divide-by-n). Constant features become all zeros.
pub fn standardize(dataset: &Dataset) -> Dataset {
    let (n, d) = (dataset.n(), dataset.d());
    let nf = n as f64;
    let mut mean = vec![0.0; d];
    for i in 0..n {
        for (j, v) in dataset.row(i).iter().enumerate() {
            mean[j] += v;
        }
    }
    for m in &mut mean {
        *m /= nf;
    }
    let mut var = vec![0.0; d];
    for i in 0..n {
        for (j, v) in dataset.row(i).iter().enumerate() {
            let c = v - mean[j];
            var[j] += c * c;
        }
    }
    let std: Vec<f64> = var.iter().map(|v| (v / nf).sqrt()).collect();
    let mut out = Vec::with_capacity(n * d);
    for i in 0..n {
        for (j, v) in dataset.row(i).iter().enumerate() {
            if std[j] > 0.0 {
                out.push((v - mean[j]) / std[j]);
            } else {
                out.push(0.0);
            }
        }
    }
    Dataset {
        name: dataset.name.clone(),
        points: out,
        n,
        d,
        truth: dataset.truth.clone(),
    }
}

/// Dense 0-based cluster assignment for a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<usize>,
    k: usize,
}

impl LabelVector {
    /// Validate that every label lies in `[0, k)`.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDataset("k must be >= 1".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidDataset("label vector is empty".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidDataset(format!(
                "label {bad} out of range for k={k}"
            )));
        }
        Ok(Self { labels, k })
    }

    /// Infer k as `max(labels) + 1`.
    pub fn from_dense(labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().max().map(|m| m + 1).unwrap_or(0);
        LabelVector::new(labels, k.max(1))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Number of members per cluster.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }
}

/// A k x d centroid matrix, optionally tied to the dataset rows it was
/// seeded from.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    centers: Vec<f64>, // row-major k x d
    k: usize,
    d: usize,
    source_indices: Option<Vec<usize>>,
}

impl CentroidSet {
    /// Build a centroid set from a row-major center matrix.
    pub fn new(centers: Vec<f64>, d: usize) -> Result<Self> {
        if d == 0 || centers.is_empty() || centers.len() % d != 0 {
            return Err(Error::InvalidDataset(
                "centroid buffer shape is invalid".into(),
            ));
        }
        if centers.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(
                "centroid contains a non-finite entry".into(),
            ));
        }
        let k = centers.len() / d;
        Ok(Self {
            centers,
            k,
            d,
            source_indices: None,
        })
    }

    /// Take `indices` rows of `dataset` as centroids. Indices must be distinct.
    pub fn from_dataset_rows(dataset: &Dataset, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::BadK {
                k: 0,
                n: dataset.n(),
            });
        }
        let mut seen = vec![false; dataset.n()];
        for &i in &indices {
            if i >= dataset.n() {
                return Err(Error::InvalidDataset(format!(
                    "source index {i} out of range for n={}",
                    dataset.n()
                )));
            }
            if seen[i] {
                return Err(Error::InvalidDataset(format!(
                    "duplicate source index {i}"
                )));
            }
            seen[i] = true;
        }
        let mut centers = Vec::with_capacity(indices.len() * dataset.d());
        for &i in &indices {
            centers.extend_from_slice(dataset.row(i));
        }
        Ok(Self {
            centers,
            k: indices.len(),
            d: dataset.d(),
            source_indices: Some(indices),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn center(&self, c: usize) -> &[f64] {
        &self.centers[c * self.d..(c + 1) * self.d]
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn source_indices(&self) -> Option<&[usize]> {
        self.source_indices.as_deref()
    }
}

/// Squared Euclidean distance between two equal-length slices.
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = 0.0;
    for i in 0..a.len() {
        let c = a[i] - b[i];
        s += c * c;
    }
    s
}

/// Euclidean distance between two equal-length slices.
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}
