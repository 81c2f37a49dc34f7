//! Readers and writers for feature matrices and precomputed kernels.
//!
//! CSV: one row per point, no header. Binary: little-endian `u64` rows,
//! `u64` dims, then `rows * dims` `f64` values in row-major order. A
//! precomputed dense kernel uses the binary layout with `rows == dims`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

use super::{FeatureMatrix, SimilarityKernel};

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), message: message.into() }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

pub fn read_feature_csv(path: &Path) -> Result<FeatureMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse_err(path, e.to_string()))?;
    let mut values = Vec::new();
    let mut dims = None;
    let mut rows = 0usize;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, format!("row {row}: {e}")))?;
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        match dims {
            None => dims = Some(record.len()),
            Some(d) if d != record.len() => {
                return Err(parse_err(
                    path,
                    format!("row {row}: expected {d} columns, found {}", record.len()),
                ))
            }
            Some(_) => {}
        }
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(path, format!("row {row}, column {col}: `{field}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(path, format!("row {row}, column {col}: non-finite value")));
            }
            values.push(v);
        }
        rows += 1;
    }
    let dims = dims.ok_or_else(|| parse_err(path, "no rows"))?;
    FeatureMatrix::new(rows, dims, values).map_err(|e| parse_err(path, e.to_string()))
}

fn read_binary_matrix(path: &Path) -> Result<(usize, usize, Vec<f64>)> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    if bytes.len() < 16 {
        return Err(parse_err(path, "truncated header"));
    }
    let rows = u64::from_le_bytes(bytes[0..8].try_into().unwrap()) as usize;
    let dims = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let expected = rows
        .checked_mul(dims)
        .and_then(|c| c.checked_mul(8))
        .ok_or_else(|| parse_err(path, "header sizes overflow"))?;
    let body = &bytes[16..];
    if body.len() != expected {
        return Err(parse_err(
            path,
            format!("expected {expected} payload bytes for {rows}x{dims}, found {}", body.len()),
        ));
    }
    let mut values = Vec::with_capacity(rows * dims);
    for (k, chunk) in body.chunks_exact(8).enumerate() {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(parse_err(
                path,
                format!("row {}, column {}: non-finite value", k / dims.max(1), k % dims.max(1)),
            ));
        }
        values.push(v);
    }
    Ok((rows, dims, values))
}

pub fn read_feature_binary(path: &Path) -> Result<FeatureMatrix> {
    let (rows, dims, values) = read_binary_matrix(path)?;
    FeatureMatrix::new(rows, dims, values).map_err(|e| parse_err(path, e.to_string()))
}

/// Dispatch on extension: `.csv` is text, anything else binary.
pub fn read_features(path: &Path) -> Result<FeatureMatrix> {
    let is_csv = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        read_feature_csv(path)
    } else {
        read_feature_binary(path)
    }
}

pub fn write_feature_binary(path: &Path, data: &FeatureMatrix) -> Result<()> {
    write_binary(path, data.rows(), data.dims(), data.values())
}

pub fn read_dense_kernel_binary(path: &Path) -> Result<SimilarityKernel> {
    let (rows, dims, values) = read_binary_matrix(path)?;
    if rows != dims {
        return Err(parse_err(path, format!("kernel must be square, got {rows}x{dims}")));
    }
    SimilarityKernel::from_dense(rows, values).map_err(|e| parse_err(path, e.to_string()))
}

pub fn write_dense_kernel_binary(path: &Path, kernel: &SimilarityKernel) -> Result<()> {
    write_binary(path, kernel.n(), kernel.n(), &kernel.to_dense())
}

fn write_binary(path: &Path, rows: usize, dims: usize, values: &[f64]) -> Result<()> {
    let mut buf = Vec::with_capacity(16 + values.len() * 8);
    buf.extend_from_slice(&(rows as u64).to_le_bytes());
    buf.extend_from_slice(&(dims as u64).to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut f = fs::File::create(path).map_err(|e| io_err(path, e))?;
    f.write_all(&buf).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        fs::write(&p, "0,0\n3, 4\n").unwrap();
        let m = read_features(&p).unwrap();
        assert_eq!((m.rows(), m.dims()), (2, 2));
        assert_eq!(m.row(1), &[3.0, 4.0]);

        fs::write(&p, "0,0\n3,x\n").unwrap();
        let msg = read_features(&p).unwrap_err().to_string();
        assert!(msg.contains("x.csv") && msg.contains("row 1"), "{msg}");

        fs::write(&p, "0,0\n3\n").unwrap();
        assert!(read_features(&p).is_err());
    }

    #[test]
    fn binary_layout_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.bin");
        let m = FeatureMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.5]).unwrap();
        write_feature_binary(&p, &m).unwrap();
        let bytes = fs::read(&p).unwrap();
        assert_eq!(bytes.len(), 16 + 48);
        assert_eq!(&bytes[0..8], &2u64.to_le_bytes());
        assert_eq!(&bytes[8..16], &3u64.to_le_bytes());
        assert_eq!(&bytes[56..64], &6.5f64.to_le_bytes());
        assert_eq!(read_features(&p).unwrap(), m);

        fs::write(&p, &bytes[..40]).unwrap();
        assert!(read_feature_binary(&p).is_err());
    }

    #[test]
    fn kernel_binary_must_be_square() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("k.bin");
        let k = SimilarityKernel::from_rows(&[[1.0, 0.25], [0.25, 1.0]]).unwrap();
        write_dense_kernel_binary(&p, &k).unwrap();
        assert_eq!(read_dense_kernel_binary(&p).unwrap().to_dense(), k.to_dense());

        let m = FeatureMatrix::new(1, 2, vec![1.0, 0.0]).unwrap();
        write_feature_binary(&p, &m).unwrap();
        assert!(read_dense_kernel_binary(&p).is_err());
    }
}
