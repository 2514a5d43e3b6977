use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;

use super::{DataError, Result};
use crate::mlp::{Dataset, Matrix};
use crate::scalar::Scalar;

const IMAGE_MAGIC: u32 = 0x0000_0803;
const LABEL_MAGIC: u32 = 0x0000_0801;

fn be_u32(bytes: &[u8], at: usize) -> Result<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| DataError::Idx(format!("header truncated at byte {at}")))
}

fn check_magic(bytes: &[u8], expected: u32) -> Result<()> {
    let found = be_u32(bytes, 0)?;
    if found != expected {
        return Err(DataError::BadMagic { expected, found });
    }
    Ok(())
}

/// Parses an IDX image file (`u8`, 3 dimensions) into one row per image with
/// pixels scaled to `[0, 1]`.
pub fn parse_idx_images<T: Scalar>(bytes: &[u8]) -> Result<Matrix<T>> {
    check_magic(bytes, IMAGE_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let rows = be_u32(bytes, 8)? as usize;
    let cols = be_u32(bytes, 12)? as usize;
    let pixels = rows * cols;
    let body = &bytes[16..];
    if body.len() != count * pixels {
        return Err(DataError::Idx(format!(
            "expected {count} images of {rows}x{cols} ({} bytes), found {} bytes",
            count * pixels,
            body.len()
        )));
    }
    let scale = T::lit(1.0 / 255.0);
    let data = body.iter().map(|&b| T::lit(b as f64) * scale).collect();
    Ok(Matrix::from_vec(count, pixels, data))
}

/// Parses an IDX label file (`u8`, 1 dimension).
pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<usize>> {
    check_magic(bytes, LABEL_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let body = &bytes[8..];
    if body.len() != count {
        return Err(DataError::Idx(format!("expected {count} labels, found {} bytes", body.len())));
    }
    Ok(body.iter().map(|&b| b as usize).collect())
}

/// Reads a file, transparently gunzipping names ending in `.gz`.
fn read_maybe_gz(path: &Path) -> Result<Vec<u8>> {
    let io = |source| DataError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = BufReader::new(File::open(path).map_err(io)?);
    let mut bytes = Vec::new();
    if path.extension().is_some_and(|e| e == "gz") {
        GzDecoder::new(file).read_to_end(&mut bytes).map_err(io)?;
    } else {
        let mut file = file;
        file.read_to_end(&mut bytes).map_err(io)?;
    }
    Ok(bytes)
}

pub fn read_idx_images<T: Scalar>(path: &Path) -> Result<Matrix<T>> {
    parse_idx_images(&read_maybe_gz(path)?)
}

pub fn read_idx_labels(path: &Path) -> Result<Vec<usize>> {
    parse_idx_labels(&read_maybe_gz(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    fn prefix(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "t10k",
        }
    }
}

fn find(dir: &Path, stem: &str) -> Option<PathBuf> {
    [stem.to_string(), format!("{stem}.gz")]
        .into_iter()
        .map(|name| dir.join(name))
        .find(|p| p.is_file())
}

/// Loads `train-*` or `t10k-*` IDX files from `dir`, keeping the first `limit` samples.
pub fn load_mnist_dir<T: Scalar>(dir: &Path, split: Split, limit: Option<usize>) -> Result<Dataset<T>> {
    let prefix = split.prefix();
    let missing = || DataError::MissingMnist {
        dir: dir.to_path_buf(),
        split: prefix,
    };
    let images = find(dir, &format!("{prefix}-images-idx3-ubyte")).ok_or_else(missing)?;
    let labels = find(dir, &format!("{prefix}-labels-idx1-ubyte")).ok_or_else(missing)?;
    let mut features = read_idx_images::<T>(&images)?;
    let mut labels = read_idx_labels(&labels)?;
    if features.rows() != labels.len() {
        return Err(DataError::Idx(format!(
            "{} images but {} labels",
            features.rows(),
            labels.len()
        )));
    }
    if let Some(n) = limit.filter(|&n| n < labels.len()) {
        let keep: Vec<usize> = (0..n).collect();
        features = features.select_rows(&keep);
        labels.truncate(n);
    }
    let classes = labels.iter().max().map_or(0, |&m| m + 1).max(10);
    Ok(Dataset::new(features, labels, classes)?)
}
