//! Brute-force oracles, written independently of the library internals:
//! explicit augmented-point sorting for crowding, pair enumeration for
//! the Rand index, entropy-difference mutual information, per-point
//! silhouette, and a counting definition of midranks. Each favours the
//! most literal transcription of the definition over efficiency so that
//! agreement with the library is meaningful evidence.

use ckmeans::{Dataset, Direction, LabelVector};

/// Stable insertion sort of (key, tag) pairs by key then tag — written
/// out longhand so the oracle does not share sorting machinery with the
/// library.
fn insertion_sort_by_key(items: &mut Vec<(f64, usize)>) {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0
            && (items[j - 1].0 > items[j].0
                || (items[j - 1].0 == items[j].0 && items[j - 1].1 > items[j].1))
        {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// Standard crowding distance: per feature, the two extreme sorted
/// positions are infinite; interior points accumulate span-normalized
/// neighbour gaps; features with zero span contribute nothing to the
/// interior. Totals are averaged over the feature count.
pub fn oracle_crowding_standard(dataset: &Dataset) -> Vec<f64> {
    let (n, d) = (dataset.n(), dataset.d());
    assert!(n >= 2);
    let mut totals = vec![0.0f64; n];
    let mut infinite = vec![false; n];
    for j in 0..d {
        let mut order: Vec<(f64, usize)> = (0..n).map(|i| (dataset.row(i)[j], i)).collect();
        insertion_sort_by_key(&mut order);
        infinite[order[0].1] = true;
        infinite[order[n - 1].1] = true;
        let span = order[n - 1].0 - order[0].0;
        if span > 0.0 {
            for p in 1..n - 1 {
                totals[order[p].1] += (order[p + 1].0 - order[p - 1].0) / span;
            }
        }
    }
    (0..n)
        .map(|i| {
            if infinite[i] {
                f64::INFINITY
            } else {
                totals[i] / d as f64
            }
        })
        .collect()
}

/// Modified crowding distance, computed exactly as defined: the dataset
/// is literally augmented with the ideal point (componentwise minimum)
/// and the nadir point (componentwise maximum), those two artificial
/// rows sort to the front and back of every feature ordering (before and
/// after any real row they tie with), every real row accumulates the raw
/// gap between its sorted neighbours, and totals are averaged over the
/// feature count. The artificial rows are dropped from the result.
pub fn oracle_crowding_modified(dataset: &Dataset) -> Vec<f64> {
    let (n, d) = (dataset.n(), dataset.d());
    assert!(n >= 1);
    let mut ideal = vec![f64::INFINITY; d];
    let mut nadir = vec![f64::NEG_INFINITY; d];
    for i in 0..n {
        for j in 0..d {
            let v = dataset.row(i)[j];
            ideal[j] = ideal[j].min(v);
            nadir[j] = nadir[j].max(v);
        }
    }
    let mut totals = vec![0.0f64; n];
    for j in 0..d {
        // tags order ties: ideal (0) < real rows (1 + row index) < nadir
        let mut order: Vec<(f64, usize)> = Vec::with_capacity(n + 2);
        order.push((ideal[j], 0));
        for i in 0..n {
            order.push((dataset.row(i)[j], 1 + i));
        }
        order.push((nadir[j], 1 + n));
        insertion_sort_by_key(&mut order);
        for p in 1..=n {
            let tag = order[p].1;
            assert!(tag >= 1 && tag <= n, "artificial rows stay at the ends");
            totals[tag - 1] += order[p + 1].0 - order[p - 1].0;
        }
    }
    totals.iter().map(|t| t / d as f64).collect()
}

fn pairs(n: usize) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

/// Rand index by direct enumeration of all point pairs.
pub fn oracle_rand_index(truth: &LabelVector, pred: &LabelVector) -> f64 {
    let (t, p) = (truth.labels(), pred.labels());
    assert_eq!(t.len(), p.len());
    let n = t.len();
    let mut agree = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let together_truth = t[i] == t[j];
            let together_pred = p[i] == p[j];
            if together_truth == together_pred {
                agree += 1;
            }
        }
    }
    agree as f64 / pairs(n)
}

fn entropy(counts: &[usize], n: usize) -> f64 {
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.ln()
        })
        .sum()
}

/// Mutual information via the entropy identity MI = H(U) + H(V) − H(U,V)
/// (the library sums the joint-distribution log-ratio directly).
pub fn oracle_mutual_information(truth: &LabelVector, pred: &LabelVector) -> f64 {
    let (t, p) = (truth.labels(), pred.labels());
    assert_eq!(t.len(), p.len());
    let n = t.len();
    let (ku, kv) = (truth.k(), pred.k());
    let mut joint = vec![0usize; ku * kv];
    let mut rows = vec![0usize; ku];
    let mut cols = vec![0usize; kv];
    for i in 0..n {
        joint[t[i] * kv + p[i]] += 1;
        rows[t[i]] += 1;
        cols[p[i]] += 1;
    }
    (entropy(&rows, n) + entropy(&cols, n) - entropy(&joint, n)).max(0.0)
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Silhouette by the per-point definition: a = mean distance to
/// co-members, b = smallest mean distance to another cluster, s =
/// (b−a)/max(a,b); singletons score 0, as does a 0/0 ratio.
pub fn oracle_silhouette(dataset: &Dataset, labels: &LabelVector) -> f64 {
    let n = dataset.n();
    let k = labels.k();
    let l = labels.labels();
    let mut total = 0.0;
    for i in 0..n {
        let mine = l[i];
        let mut sums = vec![0.0f64; k];
        let mut counts = vec![0usize; k];
        for j in 0..n {
            if j != i {
                sums[l[j]] += euclid(dataset.row(i), dataset.row(j));
                counts[l[j]] += 1;
            }
        }
        // own-cluster count excludes the point itself
        if counts[mine] == 0 {
            continue; // singleton: s_i = 0
        }
        let a = sums[mine] / counts[mine] as f64;
        let mut b = f64::INFINITY;
        for c in 0..k {
            if c != mine && counts[c] > 0 {
                b = b.min(sums[c] / counts[c] as f64);
            }
        }
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    total / n as f64
}

fn centroids_of(dataset: &Dataset, labels: &LabelVector) -> Vec<Vec<f64>> {
    let (n, d, k) = (dataset.n(), dataset.d(), labels.k());
    let mut sums = vec![vec![0.0f64; d]; k];
    let mut counts = vec![0usize; k];
    for i in 0..n {
        let c = labels.labels()[i];
        counts[c] += 1;
        for j in 0..d {
            sums[c][j] += dataset.row(i)[j];
        }
    }
    for c in 0..k {
        assert!(counts[c] > 0, "oracle requires non-empty clusters");
        for j in 0..d {
            sums[c][j] /= counts[c] as f64;
        }
    }
    sums
}

/// Davies–Bouldin by the direct definition over cluster means.
pub fn oracle_davies_bouldin(dataset: &Dataset, labels: &LabelVector) -> f64 {
    let k = labels.k();
    let centers = centroids_of(dataset, labels);
    let mut scatter = vec![0.0f64; k];
    let mut counts = vec![0usize; k];
    for i in 0..dataset.n() {
        let c = labels.labels()[i];
        scatter[c] += euclid(dataset.row(i), &centers[c]);
        counts[c] += 1;
    }
    for c in 0..k {
        scatter[c] /= counts[c] as f64;
    }
    let mut total = 0.0;
    for i in 0..k {
        let mut worst = f64::NEG_INFINITY;
        for j in 0..k {
            if i != j {
                worst = worst.max((scatter[i] + scatter[j]) / euclid(&centers[i], &centers[j]));
            }
        }
        total += worst;
    }
    total / k as f64
}

/// Calinski–Harabasz from the between/within dispersion sums.
pub fn oracle_calinski_harabasz(dataset: &Dataset, labels: &LabelVector) -> f64 {
    let (n, d, k) = (dataset.n(), dataset.d(), labels.k());
    let centers = centroids_of(dataset, labels);
    let mut grand = vec![0.0f64; d];
    for i in 0..n {
        for j in 0..d {
            grand[j] += dataset.row(i)[j];
        }
    }
    for g in grand.iter_mut() {
        *g /= n as f64;
    }
    let mut counts = vec![0usize; k];
    let mut within = 0.0;
    for i in 0..n {
        let c = labels.labels()[i];
        counts[c] += 1;
        within += euclid(dataset.row(i), &centers[c]).powi(2);
    }
    let mut between = 0.0;
    for c in 0..k {
        between += counts[c] as f64 * euclid(&centers[c], &grand).powi(2);
    }
    (between / (k as f64 - 1.0)) / (within / (n as f64 - k as f64))
}

/// Within-cluster sum of squared distances to assigned centroids, where
/// the centroid set is given explicitly.
pub fn oracle_inertia(dataset: &Dataset, labels: &LabelVector, centers: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for i in 0..dataset.n() {
        total += euclid(dataset.row(i), &centers[labels.labels()[i]]).powi(2);
    }
    total
}

/// Midranks by counting: rank = (#strictly better) + (#ties + 1)/2,
/// which equals the average of the positions a tie group occupies.
pub fn oracle_midranks(values: &[f64], direction: Direction) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let mut better = 0usize;
            let mut ties = 0usize;
            for &w in values {
                let beats = match direction {
                    Direction::LowerBetter => w < v,
                    Direction::HigherBetter => w > v,
                };
                if beats {
                    better += 1;
                } else if w == v {
                    ties += 1;
                }
            }
            better as f64 + (ties as f64 + 1.0) / 2.0
        })
        .collect()
}

/// Friedman chi-square from mean ranks over N datasets of m methods.
pub fn oracle_friedman_chi_square(mean_ranks: &[f64], n_datasets: usize) -> f64 {
    let m = mean_ranks.len() as f64;
    let n = n_datasets as f64;
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    12.0 * n / (m * (m + 1.0)) * (sum_sq - m * (m + 1.0) * (m + 1.0) / 4.0)
}
