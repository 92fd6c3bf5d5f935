//! Clustering library built around crowding-distance-based deterministic
//! k-means initialization (ckmeans, fckmeans, rckmeans) with classic
//! baselines (random, kmeans++, maxmin), a Lloyd's k-means engine with
//! empty-cluster repair, six cluster-quality metrics, dataset I/O and a
//! Friedman-rank benchmark harness.
//!
//! The crowding distance of a point is the averaged gap between its
//! sorted neighbors across feature dimensions; small values mark dense
//! regions. The modified variant used by the initializers augments the
//! dataset with an ideal (componentwise min) and nadir (componentwise
//! max) point, drops gap normalization, and keeps every real point's
//! value finite.
//!
//! ```
//! use ckmeans::{generate_blobs, init_fckmeans, run_kmeans, compute_report,
//!               BlobSpec, KmeansConfig};
//!
//! let data = generate_blobs(&BlobSpec::new("demo", 500, 2, 4, 7))?;
//! let seeds = init_fckmeans(&data, 4)?;
//! let fit = run_kmeans(&data, &seeds, &KmeansConfig::default())?;
//! let report = compute_report(&data, &fit.labels, &fit.centroids)?;
//! println!("inertia {:.3}, rand index {:?}", report.is_, report.ri);
//! # Ok::<(), ckmeans::Error>(())
//! ```

pub mod bench;
pub mod blobs;
pub mod crowding;
pub mod csvio;
pub mod dataset;
pub mod error;
pub mod friedman;
pub mod init;
pub mod lloyd;
pub mod metrics;

pub use bench::{
    cell_seed, emit_report, friedman_ranks, ranks_csv, run_grid, run_grid_with, CellRecord,
    CellValue, ExperimentGrid, GridDataset, ResultTable,
};
pub use blobs::{generate_blobs, load_blob_manifest, BlobSpec};
pub use crowding::{crowding_modified, crowding_standard, CrowdingVariant, CrowdingVector};
pub use csvio::{load_csv, save_csv, CsvSchema, LabelColumn};
pub use dataset::{feature_stats, standardize, CentroidSet, Dataset, FeatureStats, LabelVector};
pub use error::{Error, Result};
pub use friedman::{midranks, rank_matrix, RankSummary};
pub use init::{
    init_ckmeans, init_fckmeans, init_kmeanspp, init_maxmin, init_random, init_rckmeans,
    initialize, InitMethod, SeedRequest,
};
pub use lloyd::{assign_points, run_kmeans, run_kmeans_traced, update_centroids, KmeansConfig,
    KmeansResult};
pub use metrics::{
    calinski_harabasz, compute_report, davies_bouldin, inertia, mutual_information, rand_index,
    silhouette, Direction, MetricName, MetricReport,
};
