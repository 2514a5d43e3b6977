use std::io::Read;

use csv::{ReaderBuilder, Trim};

use super::{DataError, Result};
use crate::homology::PointCloud;
use crate::mlp::{Dataset, Matrix};
use crate::scalar::Scalar;

/// Points with an optional trailing integer label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledPoints<T> {
    pub rows: Vec<Vec<T>>,
    pub labels: Option<Vec<usize>>,
}

impl<T: Scalar> LabelledPoints<T> {
    pub fn into_point_cloud(self) -> Result<PointCloud<T>> {
        Ok(PointCloud::new(self.rows)?)
    }

    /// Requires labels; classes are inferred as `max label + 1`.
    pub fn into_dataset(self) -> Result<Dataset<T>> {
        let labels = self.labels.ok_or(DataError::Csv {
            line: 1,
            reason: "no label column".into(),
        })?;
        Ok(Dataset::from_labels(Matrix::from_rows(&self.rows), labels)?)
    }
}

/// Reads one point per line of comma-separated floats. With `label_column`, the
/// last field of every row is a nonnegative integer class label.
pub fn read_labelled_points<T: Scalar, R: Read>(reader: R, label_column: bool) -> Result<LabelledPoints<T>> {
    let mut csv = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;
    for record in csv.records() {
        let record = record.map_err(|e| DataError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |reason: String| DataError::Csv { line, reason };
        let mut fields: Vec<&str> = record.iter().collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if label_column {
            let raw = fields.pop().unwrap_or_default();
            labels.push(
                raw.parse::<usize>()
                    .map_err(|_| err(format!("label `{raw}` is not a nonnegative integer")))?,
            );
        }
        if fields.is_empty() {
            return Err(err("row has no coordinates".into()));
        }
        let expected = *width.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(err(format!("expected {expected} coordinates, found {}", fields.len())));
        }
        let mut row = Vec::with_capacity(fields.len());
        for f in fields {
            let v: f64 = f.parse().map_err(|_| err(format!("`{f}` is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("`{f}` is not finite")));
            }
            row.push(T::lit(v));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(DataError::Empty);
    }
    Ok(LabelledPoints {
        rows,
        labels: label_column.then_some(labels),
    })
}

/// Reads an unlabelled CSV point cloud.
pub fn read_points<T: Scalar, R: Read>(reader: R) -> Result<PointCloud<T>> {
    read_labelled_points(reader, false)?.into_point_cloud()
}
