//! Benchmark harness: run a methods x datasets x restarts grid, aggregate
//! metric means, rank methods per metric, and emit report files.
//!
//! Every cell owns an RNG stream derived from
//! `sha256(master_seed_le . 0x1f . dataset . 0x1f . method . 0x1f . restart_le)`,
//! so results are independent of execution order and worker count: serial
//! and parallel runs of the same grid serialize to byte-identical JSON.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::csvio::{load_csv, CsvSchema, LabelColumn};
use crate::blobs::{generate_blobs, BlobSpec};
use crate::dataset::{standardize, Dataset};
use crate::error::{Error, Result};
use crate::friedman::{rank_matrix, RankSummary};
use crate::init::{initialize, InitMethod, SeedRequest};
use crate::lloyd::{run_kmeans, KmeansConfig};
use crate::metrics::{
    calinski_harabasz, davies_bouldin, inertia, mutual_information, rand_index, silhouette,
    Direction, MetricName,
};

pub const SEED_SCHEME: &str =
    "sha256(master_seed_le . 0x1f . dataset . 0x1f . method . 0x1f . restart_le)[0..8] as u64_le";

/// Derive the RNG seed for one (dataset, method, restart) cell.
pub fn cell_seed(master_seed: u64, dataset: &str, method: &str, restart: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update([0x1f]);
    h.update(dataset.as_bytes());
    h.update([0x1f]);
    h.update(method.as_bytes());
    h.update([0x1f]);
    h.update(restart.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// One dataset of the grid together with the k it is clustered at.
#[derive(Debug, Clone)]
pub struct GridDataset {
    pub dataset: Dataset,
    pub k: usize,
}

/// A fully resolved experimental grid.
#[derive(Debug, Clone)]
pub struct ExperimentGrid {
    pub datasets: Vec<GridDataset>,
    pub methods: Vec<InitMethod>,
    pub restarts: usize,
    pub kmeans_config: KmeansConfig,
    pub master_seed: u64,
}

fn default_restarts() -> usize {
    25
}

fn default_std() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridManifest {
    #[serde(default)]
    master_seed: u64,
    #[serde(default = "default_restarts")]
    restarts: usize,
    #[serde(default)]
    methods: Option<Vec<String>>,
    #[serde(default)]
    kmeans: Option<KmeansConfig>,
    datasets: Vec<ManifestDataset>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ManifestDataset {
    Blob {
        name: String,
        n: usize,
        d: usize,
        k: usize,
        #[serde(default = "default_std")]
        std: f64,
        seed: u64,
    },
    Csv {
        path: String,
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        k: Option<usize>,
        #[serde(default)]
        label_col: Option<String>,
        #[serde(default = "default_true")]
        has_header: bool,
        #[serde(default)]
        delimiter: Option<char>,
    },
}

impl ExperimentGrid {
    /// Load a grid from a TOML manifest. CSV paths are resolved relative
    /// to the manifest's directory.
    pub fn from_manifest(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let manifest: GridManifest =
            toml::from_str(&text).map_err(|e| Error::Manifest(e.to_string()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        ExperimentGrid::from_parts(manifest, &base)
    }

    fn from_parts(manifest: GridManifest, base: &Path) -> Result<Self> {
        if manifest.restarts < 1 {
            return Err(Error::Manifest("restarts must be >= 1".into()));
        }
        let methods: Vec<InitMethod> = match manifest.methods {
            None => InitMethod::ALL.to_vec(),
            Some(names) => {
                if names.is_empty() {
                    return Err(Error::Manifest("methods must be non-empty".into()));
                }
                names
                    .iter()
                    .map(|n| n.parse())
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let mut datasets = Vec::with_capacity(manifest.datasets.len());
        for entry in manifest.datasets {
            let gd = match entry {
                ManifestDataset::Blob {
                    name,
                    n,
                    d,
                    k,
                    std,
                    seed,
                } => {
                    let mut spec = BlobSpec::new(name, n, d, k, seed);
                    spec.cluster_std = std;
                    GridDataset {
                        dataset: generate_blobs(&spec)?,
                        k,
                    }
                }
                ManifestDataset::Csv {
                    path,
                    name,
                    k,
                    label_col,
                    has_header,
                    delimiter,
                } => {
                    let mut file = PathBuf::from(&path);
                    if file.is_relative() {
                        file = base.join(file);
                    }
                    let mut schema = CsvSchema {
                        has_header,
                        ..CsvSchema::default()
                    };
                    if let Some(d) = delimiter {
                        schema.delimiter = d as u8;
                    }
                    if let Some(col) = &label_col {
                        schema.label_column = Some(col.parse::<LabelColumn>()?);
                    }
                    let mut dataset = load_csv(&file, &schema)?;
                    if let Some(name) = name {
                        dataset = dataset.with_name(name);
                    }
                    let k = match (k, dataset.truth()) {
                        (Some(k), _) => k,
                        (None, Some(truth)) => truth.k(),
                        (None, None) => {
                            return Err(Error::Manifest(format!(
                                "dataset `{}` needs an explicit k or a label column",
                                dataset.name()
                            )))
                        }
                    };
                    GridDataset { dataset, k }
                }
            };
            if gd.k < 1 || gd.k > gd.dataset.n() {
                return Err(Error::BadK {
                    k: gd.k,
                    n: gd.dataset.n(),
                });
            }
            if datasets
                .iter()
                .any(|other: &GridDataset| other.dataset.name() == gd.dataset.name())
            {
                return Err(Error::Manifest(format!(
                    "duplicate dataset name `{}`",
                    gd.dataset.name()
                )));
            }
            datasets.push(gd);
        }
        if datasets.is_empty() {
            return Err(Error::Manifest("datasets must be non-empty".into()));
        }
        Ok(ExperimentGrid {
            datasets,
            methods,
            restarts: manifest.restarts,
            kmeans_config: manifest.kmeans.unwrap_or_default(),
            master_seed: manifest.master_seed,
        })
    }
}

/// A metric value or an explicit failure marker carrying the error name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    Value(f64),
    Failed { failed: String },
}

impl CellValue {
    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) if v.is_finite() => CellValue::Value(v),
            Ok(_) => CellValue::Failed {
                failed: "NonFinite".into(),
            },
            Err(e) => CellValue::Failed {
                failed: e.name().into(),
            },
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            CellValue::Value(v) => Some(*v),
            CellValue::Failed { .. } => None,
        }
    }
}

/// One (dataset, method, restart) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub dataset: String,
    pub method: String,
    pub restart: u64,
    pub seed: u64,
    pub iterations: usize,
    pub converged: bool,
    pub metrics: BTreeMap<String, CellValue>,
}

/// Per-(dataset, method) metric means over restarts. A mean is marked
/// failed as soon as any restart failed that metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub dataset: String,
    pub method: String,
    pub k: usize,
    pub runs: usize,
    pub mean_iterations: f64,
    pub means: BTreeMap<String, CellValue>,
}

/// Shape notes for each dataset of the grid, recorded in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
}

/// Everything a grid run produced. Serializes to the results JSON; the
/// wall time is kept out of it so that serial and parallel executions
/// emit identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub seed_scheme: String,
    pub master_seed: u64,
    pub restarts: usize,
    pub kmeans: KmeansConfig,
    pub methods: Vec<String>,
    pub datasets: Vec<DatasetSummary>,
    pub rows: Vec<AggregateRow>,
    pub cells: Vec<CellRecord>,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

fn applicable_metrics(dataset: &Dataset) -> Vec<MetricName> {
    MetricName::ALL
        .iter()
        .copied()
        .filter(|m| !m.needs_truth() || dataset.truth().is_some())
        .collect()
}

fn run_cell(
    dataset: &Dataset,
    k: usize,
    method: InitMethod,
    restart: u64,
    seed: u64,
    config: &KmeansConfig,
) -> CellRecord {
    let mut record = CellRecord {
        dataset: dataset.name().to_string(),
        method: method.as_str().to_string(),
        restart,
        seed,
        iterations: 0,
        converged: false,
        metrics: BTreeMap::new(),
    };
    let standardized;
    let working = if config.standardize_first {
        standardized = standardize(dataset);
        &standardized
    } else {
        dataset
    };
    let fail_all = |record: &mut CellRecord, e: &Error| {
        for m in applicable_metrics(working) {
            record.metrics.insert(
                m.as_str().to_string(),
                CellValue::Failed {
                    failed: e.name().into(),
                },
            );
        }
    };
    let req = SeedRequest {
        method,
        k,
        rng_seed: seed,
    };
    let seeds = match initialize(working, &req) {
        Ok(c) => c,
        Err(e) => {
            fail_all(&mut record, &e);
            return record;
        }
    };
    let result = match run_kmeans(working, &seeds, config) {
        Ok(r) => r,
        Err(e) => {
            fail_all(&mut record, &e);
            return record;
        }
    };
    record.iterations = result.iterations;
    record.converged = result.converged;
    let mut put = |name: MetricName, value: Result<f64>| {
        record
            .metrics
            .insert(name.as_str().to_string(), CellValue::from_result(value));
    };
    put(
        MetricName::Is,
        inertia(working, &result.labels, &result.centroids),
    );
    if let Some(truth) = working.truth() {
        put(MetricName::Ri, rand_index(truth, &result.labels));
        put(MetricName::Mi, mutual_information(truth, &result.labels));
    }
    put(MetricName::Si, silhouette(working, &result.labels));
    put(MetricName::Db, davies_bouldin(working, &result.labels));
    put(MetricName::Ch, calinski_harabasz(working, &result.labels));
    record
}

fn aggregate(cells: &[CellRecord], dataset: &GridDataset, method: InitMethod) -> AggregateRow {
    let runs = cells.len();
    let mut means = BTreeMap::new();
    for metric in applicable_metrics(&dataset.dataset) {
        let key = metric.as_str();
        let mut sum = 0.0;
        let mut failed: Option<String> = None;
        for cell in cells {
            match cell.metrics.get(key) {
                Some(CellValue::Value(v)) => sum += v,
                Some(CellValue::Failed { failed: name }) => {
                    failed.get_or_insert_with(|| name.clone());
                }
                None => {
                    failed.get_or_insert_with(|| "MissingCell".to_string());
                }
            }
        }
        let value = match failed {
            Some(name) => CellValue::Failed { failed: name },
            None => {
                let mean = sum / runs as f64;
                if mean.is_finite() {
                    CellValue::Value(mean)
                } else {
                    CellValue::Failed {
                        failed: "NonFinite".into(),
                    }
                }
            }
        };
        means.insert(key.to_string(), value);
    }
    let mean_iterations = cells.iter().map(|c| c.iterations as f64).sum::<f64>() / runs as f64;
    AggregateRow {
        dataset: dataset.dataset.name().to_string(),
        method: method.as_str().to_string(),
        k: dataset.k,
        runs,
        mean_iterations,
        means,
    }
}

/// Run the whole grid with rayon-parallel cells.
pub fn run_grid(grid: &ExperimentGrid) -> ResultTable {
    run_grid_with(grid, true)
}

/// Run the whole grid; `parallel = false` forces serial execution. Both
/// modes produce identical tables.
pub fn run_grid_with(grid: &ExperimentGrid, parallel: bool) -> ResultTable {
    let started = Instant::now();
    // deterministic task order: dataset-major, then method, then restart
    let mut tasks: Vec<(usize, InitMethod, u64)> = Vec::new();
    for (di, _) in grid.datasets.iter().enumerate() {
        for &method in &grid.methods {
            let restarts = if method.is_deterministic() {
                1
            } else {
                grid.restarts
            };
            for restart in 0..restarts as u64 {
                tasks.push((di, method, restart));
            }
        }
    }
    let run_one = |&(di, method, restart): &(usize, InitMethod, u64)| -> CellRecord {
        let gd = &grid.datasets[di];
        let seed = cell_seed(
            grid.master_seed,
            gd.dataset.name(),
            method.as_str(),
            restart,
        );
        run_cell(
            &gd.dataset,
            gd.k,
            method,
            restart,
            seed,
            &grid.kmeans_config,
        )
    };
    let cells: Vec<CellRecord> = if parallel {
        tasks.par_iter().map(run_one).collect()
    } else {
        tasks.iter().map(run_one).collect()
    };
    let mut rows = Vec::with_capacity(grid.datasets.len() * grid.methods.len());
    for gd in &grid.datasets {
        for &method in &grid.methods {
            let group: Vec<CellRecord> = cells
                .iter()
                .filter(|c| c.dataset == gd.dataset.name() && c.method == method.as_str())
                .cloned()
                .collect();
            rows.push(aggregate(&group, gd, method));
        }
    }
    ResultTable {
        seed_scheme: SEED_SCHEME.to_string(),
        master_seed: grid.master_seed,
        restarts: grid.restarts,
        kmeans: grid.kmeans_config,
        methods: grid.methods.iter().map(|m| m.as_str().to_string()).collect(),
        datasets: grid
            .datasets
            .iter()
            .map(|gd| DatasetSummary {
                name: gd.dataset.name().to_string(),
                n: gd.dataset.n(),
                d: gd.dataset.d(),
                k: gd.k,
            })
            .collect(),
        rows,
        cells,
        wall_time_ms: started.elapsed().as_secs_f64() * 1000.0,
    }
}

impl ResultTable {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Manifest(format!("results JSON: {e}")))
    }

    fn row(&self, dataset: &str, method: &str) -> Option<&AggregateRow> {
        self.rows
            .iter()
            .find(|r| r.dataset == dataset && r.method == method)
    }

    /// Metrics that have a mean recorded in at least one row.
    pub fn metrics_present(&self) -> Vec<MetricName> {
        MetricName::ALL
            .iter()
            .copied()
            .filter(|m| self.rows.iter().any(|r| r.means.contains_key(m.as_str())))
            .collect()
    }
}

/// Friedman-rank the methods of a result table on one metric.
pub fn friedman_ranks(table: &ResultTable, metric: MetricName) -> Result<RankSummary> {
    if table.methods.len() < 2 {
        return Err(Error::TooFewMethods(table.methods.len()));
    }
    if table.datasets.len() < 2 {
        return Err(Error::TooFewDatasets(table.datasets.len()));
    }
    let mut matrix = Vec::with_capacity(table.datasets.len());
    for ds in &table.datasets {
        let mut row = Vec::with_capacity(table.methods.len());
        for method in &table.methods {
            let missing = || Error::MissingCell {
                dataset: ds.name.clone(),
                method: method.clone(),
                metric: metric.as_str().to_string(),
            };
            let value = table
                .row(&ds.name, method)
                .and_then(|r| r.means.get(metric.as_str()))
                .ok_or_else(missing)?
                .value()
                .ok_or_else(missing)?;
            row.push(value);
        }
        matrix.push(row);
    }
    rank_matrix(metric, &table.methods, &matrix)
}

/// RI means are reported as percentages in the per-metric tables.
fn table_scale(metric: MetricName) -> f64 {
    if metric == MetricName::Ri {
        100.0
    } else {
        1.0
    }
}

fn format_cell(value: &CellValue, metric: MetricName) -> (String, Option<f64>) {
    match value {
        CellValue::Value(v) => {
            let scaled = v * table_scale(metric);
            let rounded = (scaled * 1000.0).round() / 1000.0;
            (format!("{scaled:.3}"), Some(rounded))
        }
        CellValue::Failed { failed } => (format!("failed:{failed}"), None),
    }
}

/// Write one `table_<METRIC>.csv`: rows = datasets, columns = methods,
/// the first cell attaining the best rounded value flagged with `*`.
fn write_metric_table(table: &ResultTable, metric: MetricName, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["dataset".to_string()];
    header.extend(table.methods.iter().cloned());
    w.write_record(&header)?;
    for ds in &table.datasets {
        let cells: Vec<(String, Option<f64>)> = table
            .methods
            .iter()
            .map(|method| {
                table
                    .row(&ds.name, method)
                    .and_then(|r| r.means.get(metric.as_str()))
                    .map(|v| format_cell(v, metric))
                    .unwrap_or_else(|| ("failed:MissingCell".to_string(), None))
            })
            .collect();
        let best = cells
            .iter()
            .filter_map(|(_, rounded)| *rounded)
            .reduce(|a, b| match metric.direction() {
                Direction::LowerBetter => a.min(b),
                Direction::HigherBetter => a.max(b),
            });
        let mut record = vec![ds.name.clone()];
        let mut flagged = false;
        for (text, rounded) in cells {
            if !flagged && best.is_some() && rounded == best {
                record.push(format!("{text}*"));
                flagged = true;
            } else {
                record.push(text);
            }
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Render a rank summary as CSV text (also used by the CLI `rank` command).
pub fn ranks_csv(summary: &RankSummary) -> String {
    let mut out = String::from("metric,method,mean_rank,chi_square,n_datasets,direction\n");
    for (method, rank) in summary.methods.iter().zip(&summary.mean_ranks) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            summary.metric.as_str(),
            method,
            rank,
            summary.chi_square,
            summary.n_datasets,
            summary.direction.as_str()
        ));
    }
    out
}

/// Write `results.json`, one mean table per metric, and one ranks CSV per
/// provided summary into `out_dir`.
pub fn emit_report(
    table: &ResultTable,
    summaries: &[RankSummary],
    out_dir: impl AsRef<Path>,
) -> Result<()> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir)?;
    table.save(out_dir.join("results.json"))?;
    for metric in table.metrics_present() {
        write_metric_table(
            table,
            metric,
            &out_dir.join(format!("table_{}.csv", metric.as_str())),
        )?;
    }
    for summary in summaries {
        std::fs::write(
            out_dir.join(format!("ranks_{}.csv", summary.metric.as_str())),
            ranks_csv(summary),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tiny_grid() -> ExperimentGrid {
        let mk = |name: &str, seed: u64| {
            let mut spec = BlobSpec::new(name, 42, 2, 3, seed);
            spec.cluster_std = 0.6;
            GridDataset {
                dataset: generate_blobs(&spec).unwrap(),
                k: 3,
            }
        };
        ExperimentGrid {
            datasets: vec![mk("blob_a", 1), mk("blob_b", 2)],
            methods: vec![InitMethod::Random, InitMethod::Ckmeans, InitMethod::Rckmeans],
            restarts: 3,
            kmeans_config: KmeansConfig::default(),
            master_seed: 99,
        }
    }

    #[test]
    fn grid_shape() {
        let table = run_grid_with(&tiny_grid(), false);
        assert_eq!(table.rows.len(), 6);
        // deterministic methods run once, stochastic ones `restarts` times
        assert_eq!(table.cells.len(), 2 * (3 + 1 + 3));
        let ck = table.row("blob_a", "ckmeans").unwrap();
        assert_eq!(ck.runs, 1);
        let rand = table.row("blob_a", "random").unwrap();
        assert_eq!(rand.runs, 3);
    }

    #[test]
    fn deterministic_method_mean_equals_single_run() {
        let table = run_grid_with(&tiny_grid(), false);
        let row = table.row("blob_b", "ckmeans").unwrap();
        let cell = table
            .cells
            .iter()
            .find(|c| c.dataset == "blob_b" && c.method == "ckmeans")
            .unwrap();
        for (key, mean) in &row.means {
            assert_eq!(mean, cell.metrics.get(key).unwrap());
        }
    }

    #[test]
    fn serial_and_parallel_runs_are_byte_identical() {
        let grid = tiny_grid();
        let serial = run_grid_with(&grid, false).to_json();
        let parallel = run_grid_with(&grid, true).to_json();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn rerun_same_master_seed_identical() {
        let grid = tiny_grid();
        let a = run_grid_with(&grid, false).to_json();
        let b = run_grid_with(&grid, false).to_json();
        assert_eq!(a, b);
        let mut other = tiny_grid();
        other.master_seed = 100;
        assert_ne!(a, run_grid_with(&other, false).to_json());
    }

    #[test]
    fn cell_seeds_are_distinct_per_coordinate() {
        let base = cell_seed(7, "iris", "random", 0);
        assert_eq!(base, cell_seed(7, "iris", "random", 0));
        assert_ne!(base, cell_seed(8, "iris", "random", 0));
        assert_ne!(base, cell_seed(7, "wine", "random", 0));
        assert_ne!(base, cell_seed(7, "iris", "kmeanspp", 0));
        assert_ne!(base, cell_seed(7, "iris", "random", 1));
    }

    fn manual_table(values: &[(&str, &str, f64)]) -> ResultTable {
        let mut datasets: Vec<String> = Vec::new();
        let mut methods: Vec<String> = Vec::new();
        for (d, m, _) in values {
            if !datasets.contains(&d.to_string()) {
                datasets.push(d.to_string());
            }
            if !methods.contains(&m.to_string()) {
                methods.push(m.to_string());
            }
        }
        let rows = values
            .iter()
            .map(|(d, m, v)| AggregateRow {
                dataset: d.to_string(),
                method: m.to_string(),
                k: 2,
                runs: 1,
                mean_iterations: 1.0,
                means: BTreeMap::from([("IS".to_string(), CellValue::Value(*v))]),
            })
            .collect();
        ResultTable {
            seed_scheme: SEED_SCHEME.to_string(),
            master_seed: 0,
            restarts: 1,
            kmeans: KmeansConfig::default(),
            methods,
            datasets: datasets
                .into_iter()
                .map(|name| DatasetSummary {
                    name,
                    n: 4,
                    d: 1,
                    k: 2,
                })
                .collect(),
            rows,
            cells: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    #[test]
    fn friedman_hand_example() {
        let table = manual_table(&[
            ("d1", "a", 1.0),
            ("d1", "b", 2.0),
            ("d2", "a", 3.0),
            ("d2", "b", 4.0),
            ("d3", "a", 5.0),
            ("d3", "b", 6.0),
        ]);
        let s = friedman_ranks(&table, MetricName::Is).unwrap();
        assert_eq!(s.mean_ranks, vec![1.0, 2.0]);
        assert_relative_eq!(s.chi_square, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn friedman_missing_cell() {
        let mut table = manual_table(&[
            ("d1", "a", 1.0),
            ("d1", "b", 2.0),
            ("d2", "a", 3.0),
            ("d2", "b", 4.0),
        ]);
        table.rows[3].means.insert(
            "IS".to_string(),
            CellValue::Failed {
                failed: "EmptyCluster".into(),
            },
        );
        let err = friedman_ranks(&table, MetricName::Is).unwrap_err();
        assert_eq!(err.name(), "MissingCell");
    }

    #[test]
    fn report_files_round_trip() {
        let grid = tiny_grid();
        let table = run_grid_with(&grid, false);
        let summaries: Vec<RankSummary> = table
            .metrics_present()
            .into_iter()
            .map(|m| friedman_ranks(&table, m).unwrap())
            .collect();
        let dir = tempfile::tempdir().unwrap();
        emit_report(&table, &summaries, dir.path()).unwrap();

        let reloaded = ResultTable::load(dir.path().join("results.json")).unwrap();
        assert_eq!(reloaded.to_json(), table.to_json());
        for summary in &summaries {
            let again = friedman_ranks(&reloaded, summary.metric).unwrap();
            assert_eq!(&again, summary);
        }
        for metric in table.metrics_present() {
            let path = dir.path().join(format!("table_{}.csv", metric.as_str()));
            let text = std::fs::read_to_string(&path).unwrap();
            let mut lines = text.lines();
            assert_eq!(
                lines.next().unwrap(),
                "dataset,random,ckmeans,rckmeans"
            );
            for line in lines {
                assert_eq!(
                    line.matches('*').count(),
                    1,
                    "expected exactly one best flag in {line}"
                );
            }
            let ranks = dir.path().join(format!("ranks_{}.csv", metric.as_str()));
            assert!(ranks.exists());
        }
    }

    #[test]
    fn empty_summaries_skip_rank_files() {
        let table = run_grid_with(&tiny_grid(), false);
        let dir = tempfile::tempdir().unwrap();
        emit_report(&table, &[], dir.path()).unwrap();
        assert!(dir.path().join("results.json").exists());
        assert!(dir.path().join("table_IS.csv").exists());
        assert!(!dir.path().join("ranks_IS.csv").exists());
    }

    #[test]
    fn ri_table_is_percent_scaled() {
        let table = manual_table(&[
            ("d1", "a", 0.5),
            ("d1", "b", 0.25),
            ("d2", "a", 1.0),
            ("d2", "b", 0.75),
        ]);
        let mut table = table;
        for row in &mut table.rows {
            let v = row.means.get("IS").unwrap().clone();
            row.means.insert("RI".to_string(), v);
        }
        let dir = tempfile::tempdir().unwrap();
        emit_report(&table, &[], dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("table_RI.csv")).unwrap();
        assert!(text.contains("50.000"), "{text}");
        assert!(text.contains("100.000*"), "{text}");
    }

    #[test]
    fn manifest_loads_blobs_and_validates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.toml");
        std::fs::write(
            &path,
            r#"
master_seed = 5
restarts = 2
methods = ["ckmeans", "random"]

[kmeans]
max_iter = 50
tol = 1e-5

[[datasets]]
kind = "blob"
name = "b1"
n = 30
d = 2
k = 3
seed = 1

[[datasets]]
kind = "blob"
name = "b2"
n = 20
d = 2
k = 2
std = 0.5
seed = 2
"#,
        )
        .unwrap();
        let grid = ExperimentGrid::from_manifest(&path).unwrap();
        assert_eq!(grid.master_seed, 5);
        assert_eq!(grid.restarts, 2);
        assert_eq!(grid.methods, vec![InitMethod::Ckmeans, InitMethod::Random]);
        assert_eq!(grid.kmeans_config.max_iter, 50);
        assert!(!grid.kmeans_config.standardize_first);
        assert_eq!(grid.datasets.len(), 2);
        assert_eq!(grid.datasets[1].dataset.n(), 20);
    }

    #[test]
    fn manifest_csv_dataset_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("pts.csv"),
            "x,y,cls\n0.0,0.0,a\n0.5,0.5,a\n9.0,9.0,b\n9.5,9.5,b\n",
        )
        .unwrap();
        let path = dir.path().join("grid.toml");
        std::fs::write(
            &path,
            r#"
[[datasets]]
kind = "csv"
path = "pts.csv"
label_col = "cls"

[[datasets]]
kind = "blob"
name = "b"
n = 10
d = 1
k = 2
seed = 0
"#,
        )
        .unwrap();
        let grid = ExperimentGrid::from_manifest(&path).unwrap();
        assert_eq!(grid.datasets[0].k, 2); // from truth labels
        assert_eq!(grid.datasets[0].dataset.name(), "pts");
        assert_eq!(grid.restarts, 25);
        assert_eq!(grid.methods.len(), 6);

        std::fs::write(&path, "restarts = 0\n[[datasets]]\nkind = \"blob\"\nname = \"x\"\nn = 5\nd = 1\nk = 2\nseed = 0\n").unwrap();
        assert_eq!(
            ExperimentGrid::from_manifest(&path).unwrap_err().name(),
            "Manifest"
        );
    }
}
