//! The six cluster-quality measures: inertia (IS), Rand index (RI),
//! mutual information (MI, nats), silhouette (SI), Davies-Bouldin (DB)
//! and Calinski-Harabasz (CH). All pure functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::{dist, sq_dist, CentroidSet, Dataset, LabelVector};
use crate::error::{Error, Result};

/// Whether smaller or larger metric values indicate better clusterings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "lower-better")]
    LowerBetter,
    #[serde(rename = "higher-better")]
    HigherBetter,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::LowerBetter => "lower-better",
            Direction::HigherBetter => "higher-better",
        }
    }
}

/// Metric identifiers, with their exact report/CLI names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricName {
    #[serde(rename = "IS")]
    Is,
    #[serde(rename = "RI")]
    Ri,
    #[serde(rename = "MI")]
    Mi,
    #[serde(rename = "SI")]
    Si,
    #[serde(rename = "DB")]
    Db,
    #[serde(rename = "CH")]
    Ch,
}

impl MetricName {
    pub const ALL: [MetricName; 6] = [
        MetricName::Is,
        MetricName::Ri,
        MetricName::Mi,
        MetricName::Si,
        MetricName::Db,
        MetricName::Ch,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MetricName::Is => "IS",
            MetricName::Ri => "RI",
            MetricName::Mi => "MI",
            MetricName::Si => "SI",
            MetricName::Db => "DB",
            MetricName::Ch => "CH",
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MetricName::Is | MetricName::Db => Direction::LowerBetter,
            _ => Direction::HigherBetter,
        }
    }

    /// RI and MI compare against ground truth and need truth labels.
    pub fn needs_truth(&self) -> bool {
        matches!(self, MetricName::Ri | MetricName::Mi)
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricName::ALL
            .iter()
            .find(|m| m.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// One clustering's scores. RI and MI are absent without ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    #[serde(rename = "IS")]
    pub is_: f64,
    #[serde(rename = "RI", skip_serializing_if = "Option::is_none")]
    pub ri: Option<f64>,
    #[serde(rename = "MI", skip_serializing_if = "Option::is_none")]
    pub mi: Option<f64>,
    #[serde(rename = "SI")]
    pub si: f64,
    #[serde(rename = "DB")]
    pub db: f64,
    #[serde(rename = "CH")]
    pub ch: f64,
}

/// Compute all six metrics for one clustering outcome; RI/MI only when
/// the dataset carries ground truth.
pub fn compute_report(
    dataset: &Dataset,
    labels: &LabelVector,
    centroids: &CentroidSet,
) -> Result<MetricReport> {
    let (ri, mi) = match dataset.truth() {
        Some(truth) => (
            Some(rand_index(truth, labels)?),
            Some(mutual_information(truth, labels)?),
        ),
        None => (None, None),
    };
    Ok(MetricReport {
        is_: inertia(dataset, labels, centroids)?,
        ri,
        mi,
        si: silhouette(dataset, labels)?,
        db: davies_bouldin(dataset, labels)?,
        ch: calinski_harabasz(dataset, labels)?,
    })
}

fn check_labels(dataset: &Dataset, labels: &LabelVector) -> Result<()> {
    if labels.len() != dataset.n() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: dataset.n(),
        });
    }
    Ok(())
}

/// Sum of squared distances from each point to its assigned centroid.
pub fn inertia(dataset: &Dataset, labels: &LabelVector, centroids: &CentroidSet) -> Result<f64> {
    check_labels(dataset, labels)?;
    if dataset.d() != centroids.d() {
        return Err(Error::DimensionMismatch {
            expected: dataset.d(),
            got: centroids.d(),
        });
    }
    if labels.k() > centroids.k() {
        return Err(Error::BadClusterCount {
            k: labels.k(),
            n: centroids.k(),
        });
    }
    Ok(labels
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(dataset.row(i), centroids.center(l)))
        .sum())
}

/// Joint contingency counts between two labelings.
fn contingency(a: &LabelVector, b: &LabelVector) -> Result<Vec<Vec<usize>>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut table = vec![vec![0usize; b.k()]; a.k()];
    for (&u, &v) in a.labels().iter().zip(b.labels()) {
        table[u][v] += 1;
    }
    Ok(table)
}

fn choose2(n: usize) -> u128 {
    (n as u128) * (n.saturating_sub(1) as u128) / 2
}

/// Fraction of point pairs the two partitions agree on (together in both
/// or apart in both). Plain Rand index in [0, 1].
pub fn rand_index(truth: &LabelVector, pred: &LabelVector) -> Result<f64> {
    let n = truth.len();
    if n < 2 {
        return Err(Error::TooFewPoints);
    }
    let table = contingency(truth, pred)?;
    let total = choose2(n);
    let same_both: u128 = table.iter().flatten().map(|&c| choose2(c)).sum();
    let same_truth: u128 = table
        .iter()
        .map(|row| choose2(row.iter().sum::<usize>()))
        .sum();
    let same_pred: u128 = (0..pred.k())
        .map(|v| choose2(table.iter().map(|row| row[v]).sum::<usize>()))
        .sum();
    // agree = both-same + both-apart
    let agree = total + 2 * same_both - same_truth - same_pred;
    Ok(agree as f64 / total as f64)
}

/// Mutual information between two labelings, in nats.
pub fn mutual_information(truth: &LabelVector, pred: &LabelVector) -> Result<f64> {
    let table = contingency(truth, pred)?;
    let n = truth.len() as f64;
    let row_sums: Vec<f64> = table
        .iter()
        .map(|row| row.iter().sum::<usize>() as f64)
        .collect();
    let col_sums: Vec<f64> = (0..pred.k())
        .map(|v| table.iter().map(|row| row[v]).sum::<usize>() as f64)
        .collect();
    let mut mi = 0.0;
    for (u, row) in table.iter().enumerate() {
        for (v, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p_uv = c as f64 / n;
            mi += p_uv * (p_uv * n * n / (row_sums[u] * col_sums[v])).ln();
        }
    }
    Ok(mi.max(0.0))
}

fn cluster_counts_nonempty(labels: &LabelVector) -> Result<Vec<usize>> {
    let counts = labels.counts();
    if counts.iter().any(|&c| c == 0) {
        return Err(Error::BadClusterCount {
            k: labels.k(),
            n: labels.len(),
        });
    }
    Ok(counts)
}

/// Per-cluster mean rows (k x d, row-major) computed from the labels.
fn cluster_means(dataset: &Dataset, labels: &LabelVector, counts: &[usize]) -> Vec<f64> {
    let (k, d) = (labels.k(), dataset.d());
    let mut means = vec![0.0f64; k * d];
    for (i, &l) in labels.labels().iter().enumerate() {
        let row = dataset.row(i);
        for j in 0..d {
            means[l * d + j] += row[j];
        }
    }
    for (l, &c) in counts.iter().enumerate() {
        for j in 0..d {
            means[l * d + j] /= c as f64;
        }
    }
    means
}

/// Mean silhouette coefficient: per point, (b - a) / max(a, b) with
/// a = mean distance to co-members and b = smallest mean distance to
/// another cluster. Singletons score 0.
pub fn silhouette(dataset: &Dataset, labels: &LabelVector) -> Result<f64> {
    check_labels(dataset, labels)?;
    let n = dataset.n();
    let k = labels.k();
    if k < 2 || k > n - 1 {
        return Err(Error::BadClusterCount { k, n });
    }
    let counts = cluster_counts_nonempty(labels)?;
    let lab = labels.labels();
    // cluster_dist[i*k + c] = sum of distances from point i to cluster c
    let mut cluster_dist = vec![0.0f64; n * k];
    for i in 0..n {
        let row_i = dataset.row(i);
        for j in (i + 1)..n {
            let d = dist(row_i, dataset.row(j));
            cluster_dist[i * k + lab[j]] += d;
            cluster_dist[j * k + lab[i]] += d;
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        let own = lab[i];
        if counts[own] == 1 {
            continue; // singleton contributes s = 0
        }
        let a = cluster_dist[i * k + own] / (counts[own] - 1) as f64;
        let mut b = f64::INFINITY;
        for c in 0..k {
            if c == own {
                continue;
            }
            let m = cluster_dist[i * k + c] / counts[c] as f64;
            if m < b {
                b = m;
            }
        }
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / n as f64)
}

/// Davies-Bouldin index: mean over clusters of the worst
/// (s_i + s_j) / d_ij similarity, where s is the mean member-to-centroid
/// distance and d_ij the centroid separation. Lower is better.
pub fn davies_bouldin(dataset: &Dataset, labels: &LabelVector) -> Result<f64> {
    check_labels(dataset, labels)?;
    let k = labels.k();
    if k < 2 {
        return Err(Error::BadClusterCount {
            k,
            n: dataset.n(),
        });
    }
    let counts = cluster_counts_nonempty(labels)?;
    let d = dataset.d();
    let means = cluster_means(dataset, labels, &counts);
    let mut scatter = vec![0.0f64; k];
    for (i, &l) in labels.labels().iter().enumerate() {
        scatter[l] += dist(dataset.row(i), &means[l * d..(l + 1) * d]);
    }
    for (l, &c) in counts.iter().enumerate() {
        scatter[l] /= c as f64;
    }
    let mut sum = 0.0;
    for i in 0..k {
        let mut worst = 0.0f64;
        for j in 0..k {
            if i == j {
                continue;
            }
            let sep = dist(&means[i * d..(i + 1) * d], &means[j * d..(j + 1) * d]);
            if sep == 0.0 {
                return Err(Error::IdenticalCentroids { a: i.min(j), b: i.max(j) });
            }
            let ratio = (scatter[i] + scatter[j]) / sep;
            if ratio > worst {
                worst = ratio;
            }
        }
        sum += worst;
    }
    Ok(sum / k as f64)
}

/// Calinski-Harabasz score: between-cluster over within-cluster variance,
/// degree-of-freedom normalized. All points at their centroids gives the
/// positive-infinite sentinel.
pub fn calinski_harabasz(dataset: &Dataset, labels: &LabelVector) -> Result<f64> {
    check_labels(dataset, labels)?;
    let n = dataset.n();
    let k = labels.k();
    if k < 2 || k > n - 1 {
        return Err(Error::BadClusterCount { k, n });
    }
    let counts = cluster_counts_nonempty(labels)?;
    let d = dataset.d();
    let means = cluster_means(dataset, labels, &counts);
    let mut grand = vec![0.0f64; d];
    for i in 0..n {
        for (j, v) in dataset.row(i).iter().enumerate() {
            grand[j] += v;
        }
    }
    for g in &mut grand {
        *g /= n as f64;
    }
    let between: f64 = counts
        .iter()
        .enumerate()
        .map(|(l, &c)| c as f64 * sq_dist(&means[l * d..(l + 1) * d], &grand))
        .sum();
    let within: f64 = labels
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(dataset.row(i), &means[l * d..(l + 1) * d]))
        .sum();
    if within == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((between / (k - 1) as f64) / (within / (n - k) as f64))
}
