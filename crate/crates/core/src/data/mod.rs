//! Dataset ingestion: MNIST IDX files (optionally gzip-compressed) and CSV point clouds.

mod csv_points;
mod idx;

pub use csv_points::{read_labelled_points, read_points, LabelledPoints};
pub use idx::{load_mnist_dir, parse_idx_images, parse_idx_labels, read_idx_images, read_idx_labels, Split};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("IDX format error: expected magic {expected:#010x}, found {found:#010x}")]
    BadMagic { expected: u32, found: u32 },
    #[error("IDX format error: {0}")]
    Idx(String),
    #[error("line {line}: {reason}")]
    Csv { line: u64, reason: String },
    #[error("no data rows")]
    Empty,
    #[error("no MNIST {split} files in {dir}")]
    MissingMnist { dir: PathBuf, split: &'static str },
    #[error(transparent)]
    Dataset(#[from] crate::mlp::MlpError),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}

pub type Result<T, E = DataError> = std::result::Result<T, E>;
