//! Seeded Gaussian-blob generator for the artificial benchmark family,
//! plus the `name,n,d,k,std,seed` manifest format that pins a suite of
//! blob configurations.

use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, LabelVector};
use crate::error::{Error, Result};

fn default_center_box() -> (f64, f64) {
    (-10.0, 10.0)
}

fn default_cluster_std() -> f64 {
    1.0
}

fn default_balanced() -> bool {
    true
}

/// Parameters of one synthetic dataset: isotropic Gaussian clusters
/// around uniformly drawn centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobSpec {
    pub name: String,
    pub n_samples: usize,
    pub n_features: usize,
    pub n_clusters: usize,
    #[serde(default = "default_center_box")]
    pub center_box: (f64, f64),
    #[serde(default = "default_cluster_std")]
    pub cluster_std: f64,
    #[serde(default = "default_balanced")]
    pub balanced: bool,
    pub rng_seed: u64,
}

impl BlobSpec {
    pub fn new(name: impl Into<String>, n: usize, d: usize, k: usize, seed: u64) -> Self {
        Self {
            name: name.into(),
            n_samples: n,
            n_features: d,
            n_clusters: k,
            center_box: default_center_box(),
            cluster_std: default_cluster_std(),
            balanced: default_balanced(),
            rng_seed: seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples < 1 || self.n_features < 1 || self.n_clusters < 1 {
            return Err(Error::BadSpec(
                "n_samples, n_features and n_clusters must all be >= 1".into(),
            ));
        }
        if self.n_clusters > self.n_samples {
            return Err(Error::BadSpec(format!(
                "n_clusters {} exceeds n_samples {}",
                self.n_clusters, self.n_samples
            )));
        }
        if !(self.cluster_std > 0.0) || !self.cluster_std.is_finite() {
            return Err(Error::BadSpec("cluster_std must be positive".into()));
        }
        let (lo, hi) = self.center_box;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::BadSpec("center_box must be a finite interval".into()));
        }
        Ok(())
    }
}

/// Generate the dataset described by `spec`. A fixed seed yields a
/// bit-identical matrix. Points are emitted cluster by cluster, so truth
/// labels come out in canonical first-appearance order.
pub fn generate_blobs(spec: &BlobSpec) -> Result<Dataset> {
    spec.validate()?;
    let (n, d, k) = (spec.n_samples, spec.n_features, spec.n_clusters);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let (lo, hi) = spec.center_box;
    let centers: Vec<f64> = (0..k * d).map(|_| rng.random_range(lo..hi)).collect();
    // balanced: sizes differ by at most one, earlier clusters get the
    // remainder; unbalanced: each point picks its cluster uniformly
    let sizes: Vec<usize> = if spec.balanced {
        let base = n / k;
        let rem = n % k;
        (0..k).map(|c| base + usize::from(c < rem)).collect()
    } else {
        let mut sizes = vec![0usize; k];
        for _ in 0..n {
            sizes[rng.random_range(0..k)] += 1;
        }
        sizes
    };
    let mut points = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for (c, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            for j in 0..d {
                let noise: f64 = rng.sample(StandardNormal);
                points.push(centers[c * d + j] + spec.cluster_std * noise);
            }
            labels.push(c);
        }
    }
    let truth = LabelVector::new(labels, k)?;
    Dataset::new(spec.name.clone(), points, d, Some(truth))
}

/// Parse a blob manifest: one `name,n,d,k,std,seed` line per dataset,
/// optional header.
pub fn load_blob_manifest(path: impl AsRef<Path>) -> Result<Vec<BlobSpec>> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)?;
    let mut specs = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if record.is_empty() || (record.len() == 1 && record[0].is_empty()) {
            continue;
        }
        if line == 0 && record.get(1).is_some_and(|f| f.parse::<usize>().is_err()) {
            continue; // header line
        }
        if record.len() != 6 {
            return Err(Error::Manifest(format!(
                "line {}: expected 6 fields `name,n,d,k,std,seed`, got {}",
                line + 1,
                record.len()
            )));
        }
        let field = |i: usize| record.get(i).unwrap_or("");
        let parse_err = |i: usize, what: &str| {
            Error::Manifest(format!(
                "line {}: cannot parse `{}` as {what}",
                line + 1,
                field(i)
            ))
        };
        specs.push(BlobSpec {
            name: field(0).to_string(),
            n_samples: field(1).parse().map_err(|_| parse_err(1, "n"))?,
            n_features: field(2).parse().map_err(|_| parse_err(2, "d"))?,
            n_clusters: field(3).parse().map_err(|_| parse_err(3, "k"))?,
            center_box: default_center_box(),
            cluster_std: field(4).parse().map_err(|_| parse_err(4, "std"))?,
            balanced: true,
            rng_seed: field(5).parse().map_err(|_| parse_err(5, "seed"))?,
        });
    }
    if specs.is_empty() {
        return Err(Error::Manifest(format!(
            "{} contains no dataset rows",
            path.display()
        )));
    }
    Ok(specs)
}
