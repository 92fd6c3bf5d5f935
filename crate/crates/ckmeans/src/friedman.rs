//! Nonparametric method comparison: per-dataset midranks and the
//! Friedman chi-square statistic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{Direction, MetricName};

/// Rank the values of one dataset's row: rank 1 is best under the given
/// direction, ties receive the average of the positions they span.
pub fn midranks(values: &[f64], direction: Direction) -> Vec<f64> {
    let key = |v: f64| match direction {
        Direction::LowerBetter => v,
        Direction::HigherBetter => -v,
    };
    let m = values.len();
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| {
        key(values[a])
            .partial_cmp(&key(values[b]))
            .expect("rank values must not be NaN")
    });
    let mut ranks = vec![0.0; m];
    let mut i = 0;
    while i < m {
        let mut j = i;
        while j + 1 < m && key(values[idx[j + 1]]) == key(values[idx[i]]) {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0; // positions are 1-based
        for &p in &idx[i..=j] {
            ranks[p] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// chi^2_F = 12N / (m(m+1)) * [ sum_j mean_rank_j^2 - m(m+1)^2 / 4 ]
pub fn friedman_statistic(mean_ranks: &[f64], n_datasets: usize) -> f64 {
    let m = mean_ranks.len() as f64;
    let n = n_datasets as f64;
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    12.0 * n / (m * (m + 1.0)) * (sum_sq - m * (m + 1.0) * (m + 1.0) / 4.0)
}

/// Friedman comparison of m methods over N datasets on one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSummary {
    pub metric: MetricName,
    pub direction: Direction,
    pub methods: Vec<String>,
    pub mean_ranks: Vec<f64>,
    pub chi_square: f64,
    pub n_datasets: usize,
}

/// Rank a dense N x m value matrix (rows = datasets, columns = methods).
pub fn rank_matrix(
    metric: MetricName,
    methods: &[String],
    per_dataset_values: &[Vec<f64>],
) -> Result<RankSummary> {
    let m = methods.len();
    if m < 2 {
        return Err(Error::TooFewMethods(m));
    }
    let n = per_dataset_values.len();
    if n < 2 {
        return Err(Error::TooFewDatasets(n));
    }
    let direction = metric.direction();
    let mut sums = vec![0.0f64; m];
    for row in per_dataset_values {
        debug_assert_eq!(row.len(), m);
        for (j, r) in midranks(row, direction).into_iter().enumerate() {
            sums[j] += r;
        }
    }
    let mean_ranks: Vec<f64> = sums.into_iter().map(|s| s / n as f64).collect();
    let chi_square = friedman_statistic(&mean_ranks, n);
    Ok(RankSummary {
        metric,
        direction,
        methods: methods.to_vec(),
        mean_ranks,
        chi_square,
        n_datasets: n,
    })
}
