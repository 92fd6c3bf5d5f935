//! CSV ingestion and export. Feature cells must parse as finite reals;
//! an optional label column carries ground truth, remapped to dense
//! 0-based indices in first-appearance order on load.

use std::path::Path;
use std::str::FromStr;

use crate::dataset::{Dataset, LabelVector};
use crate::error::{Error, Result};

/// Which column holds ground-truth labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Name(String),
    Index(usize),
}

impl FromStr for LabelColumn {
    type Err = Error;

    // a purely numeric argument is a 0-based index, anything else a name
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.to_string()),
        })
    }
}

/// Shape of a CSV file: delimiter, header presence, optional label column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    pub delimiter: u8,
    pub has_header: bool,
    pub label_column: Option<LabelColumn>,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            delimiter: b',',
            has_header: true,
            label_column: None,
        }
    }
}

impl CsvSchema {
    pub fn with_label(mut self, col: LabelColumn) -> Self {
        self.label_column = Some(col);
        self
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Load a dataset from CSV. Row/column positions in errors are 1-based
/// over data rows.
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .has_headers(schema.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;

    let header: Option<Vec<String>> = if schema.has_header {
        Some(
            reader
                .headers()?
                .iter()
                .map(|h| h.trim().to_string())
                .collect(),
        )
    } else {
        None
    };

    let label_idx: Option<usize> = match &schema.label_column {
        None => None,
        Some(LabelColumn::Index(i)) => Some(*i),
        Some(LabelColumn::Name(name)) => {
            let header = header.as_ref().ok_or_else(|| {
                Error::BadSpec(format!(
                    "label column `{name}` given by name, but the file has no header"
                ))
            })?;
            Some(
                header
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::BadSpec(format!("no column named `{name}`")))?,
            )
        }
    };

    let mut width: Option<usize> = None;
    let mut points: Vec<f64> = Vec::new();
    let mut raw_labels: Vec<String> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record?;
        if record.len() == 1 && record[0].is_empty() {
            continue; // blank line
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                row,
                expected,
                got: record.len(),
            });
        }
        if let Some(l) = label_idx {
            if l >= expected {
                return Err(Error::BadSpec(format!(
                    "label column index {l} out of range for {expected} columns"
                )));
            }
        }
        for (col, cell) in record.iter().enumerate() {
            if Some(col) == label_idx {
                raw_labels.push(cell.to_string());
                continue;
            }
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or(Error::Parse { row, cell: col + 1 })?;
            points.push(value);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyFile);
    }
    let d = width.unwrap() - usize::from(label_idx.is_some());
    if d == 0 {
        return Err(Error::BadSpec("file has no feature columns".into()));
    }

    // remap raw labels to dense 0-based ids in first-appearance order
    let truth = if label_idx.is_some() {
        let mut ids: Vec<String> = Vec::new();
        let labels: Vec<usize> = raw_labels
            .iter()
            .map(|raw| match ids.iter().position(|x| x == raw) {
                Some(i) => i,
                None => {
                    ids.push(raw.clone());
                    ids.len() - 1
                }
            })
            .collect();
        Some(LabelVector::new(labels, ids.len())?)
    } else {
        None
    };

    Dataset::new(dataset_name(path), points, d, truth)
}

/// Write a dataset as CSV. Features are rendered with shortest
/// round-trip formatting so `load_csv` reproduces them bit-exactly;
/// truth labels (written as their dense integer ids, in a trailing
/// column) survive the round trip whenever they are in first-appearance
/// order, which holds for every dataset this crate produces.
pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>, schema: &CsvSchema) -> Result<()> {
    let path = path.as_ref();
    let mut writer = csv::WriterBuilder::new()
        .delimiter(schema.delimiter)
        .from_path(path)?;
    let label_name = match &schema.label_column {
        Some(LabelColumn::Name(name)) => name.clone(),
        _ => "label".to_string(),
    };
    if schema.has_header {
        let mut header: Vec<String> = (0..dataset.d()).map(|j| format!("f{j}")).collect();
        if dataset.truth().is_some() {
            header.push(label_name);
        }
        writer.write_record(&header)?;
    }
    for i in 0..dataset.n() {
        let mut record: Vec<String> = dataset.row(i).iter().map(|v| format!("{v}")).collect();
        if let Some(truth) = dataset.truth() {
            record.push(truth.labels()[i].to_string());
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}
