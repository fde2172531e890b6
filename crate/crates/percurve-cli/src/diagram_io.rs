//! CSV serialization for diagrams, curves, and feature tables.
//!
//! Diagrams use `dim,birth,death` rows with `inf` for essential classes;
//! the shortest round-trip float formatting keeps read(write(x)) == x.
//! Curves use `t,value` rows plus a JSON sidecar describing how the curve
//! was built. Feature tables put the label first, then the vector, with a
//! JSON sidecar holding the block layout.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use percurve::curves::PersistenceCurve;
use percurve::persistence::PersistenceDiagram;
use thiserror::Error;

use crate::features::{FeatureVector, LayoutBlock};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv error on {path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("bad record on {path}: {reason}")]
    BadRecord { path: String, reason: String },
    #[error("json error on {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> IoError + '_ {
    move |source| IoError::Csv {
        path: path.display().to_string(),
        source,
    }
}

fn format_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

fn parse_value(path: &Path, s: &str) -> Result<f64, IoError> {
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    s.parse().map_err(|_| IoError::BadRecord {
        path: path.display().to_string(),
        reason: format!("bad float {s:?}"),
    })
}

/// Write diagrams as `dim,birth,death` rows.
pub fn write_diagrams_csv(path: &Path, diagrams: &[&PersistenceDiagram]) -> Result<(), IoError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(["dim", "birth", "death"]).map_err(csv_err(path))?;
    for d in diagrams {
        for &(b, death) in d.pairs() {
            w.write_record([
                d.dimension().to_string(),
                format_value(b),
                format_value(death),
            ])
            .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// Read diagrams back, one per homology dimension present in the file,
/// sorted by dimension.
pub fn read_diagrams_csv(path: &Path) -> Result<Vec<PersistenceDiagram>, IoError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut r = csv::Reader::from_reader(BufReader::new(file));
    let mut by_dim: Vec<(u8, Vec<(f64, f64)>)> = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err(path))?;
        if record.len() != 3 {
            return Err(IoError::BadRecord {
                path: path.display().to_string(),
                reason: format!("expected 3 fields, got {}", record.len()),
            });
        }
        let dim: u8 = record[0].parse().map_err(|_| IoError::BadRecord {
            path: path.display().to_string(),
            reason: format!("bad dimension {:?}", &record[0]),
        })?;
        let b = parse_value(path, &record[1])?;
        let d = parse_value(path, &record[2])?;
        match by_dim.iter_mut().find(|(k, _)| *k == dim) {
            Some((_, pairs)) => pairs.push((b, d)),
            None => by_dim.push((dim, vec![(b, d)])),
        }
    }
    by_dim.sort_by_key(|(k, _)| *k);
    Ok(by_dim
        .into_iter()
        .map(|(dim, pairs)| PersistenceDiagram::new(dim, pairs))
        .collect())
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

/// Write a curve as `t,value` rows and a JSON sidecar with its provenance.
pub fn write_curve_csv(path: &Path, curve: &PersistenceCurve) -> Result<(), IoError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(["t", "value"]).map_err(csv_err(path))?;
    for (t, v) in curve.grid.iter().zip(&curve.values) {
        w.write_record([format_value(*t), format_value(*v)])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))?;

    let meta = serde_json::json!({
        "diagram_dimension": curve.provenance.diagram_dimension,
        "psi": curve.provenance.psi,
        "statistic": curve.provenance.statistic,
        "points": curve.grid.len(),
    });
    let sidecar = sidecar_path(path);
    let mut f = File::create(&sidecar).map_err(io_err(&sidecar))?;
    serde_json::to_writer_pretty(&mut f, &meta).map_err(|source| IoError::Json {
        path: sidecar.display().to_string(),
        source,
    })?;
    f.write_all(b"\n").map_err(io_err(&sidecar))?;
    Ok(())
}

/// Write labelled feature vectors, label first, and a layout sidecar.
pub fn write_features_csv(
    path: &Path,
    rows: &[(String, FeatureVector)],
) -> Result<(), IoError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for (label, fv) in rows {
        let mut record = vec![label.clone()];
        record.extend(fv.values.iter().map(|v| format_value(*v)));
        w.write_record(&record).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))?;

    if let Some((_, first)) = rows.first() {
        let sidecar = sidecar_path(path);
        let mut f = File::create(&sidecar).map_err(io_err(&sidecar))?;
        serde_json::to_writer_pretty(&mut f, &first.layout).map_err(|source| IoError::Json {
            path: sidecar.display().to_string(),
            source,
        })?;
        f.write_all(b"\n").map_err(io_err(&sidecar))?;
    }
    Ok(())
}

/// Read labelled feature vectors written by [`write_features_csv`].
pub fn read_features_csv(path: &Path) -> Result<Vec<(String, Vec<f64>)>, IoError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(BufReader::new(file));
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err(path))?;
        if record.is_empty() {
            continue;
        }
        let label = record[0].to_string();
        let values = record
            .iter()
            .skip(1)
            .map(|s| parse_value(path, s))
            .collect::<Result<Vec<f64>, _>>()?;
        out.push((label, values));
    }
    Ok(out)
}

/// Read the layout sidecar written next to a feature table.
pub fn read_layout_sidecar(path: &Path) -> Result<Vec<LayoutBlock>, IoError> {
    let sidecar = sidecar_path(path);
    let file = File::open(&sidecar).map_err(io_err(&sidecar))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|source| IoError::Json {
        path: sidecar.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use percurve::curves::{betti_curve, grid_0_255};

    #[test]
    fn diagram_roundtrip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let d0 = PersistenceDiagram::new(
            0,
            vec![(0.0, f64::INFINITY), (0.1 + 0.2, 97.3), (5.0, 6.0)],
        );
        let d1 = PersistenceDiagram::new(1, vec![(1.0 / 3.0, 2.0 / 7.0 + 1.0)]);
        write_diagrams_csv(&path, &[&d0, &d1]).unwrap();
        let back = read_diagrams_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].pairs(), d0.pairs());
        assert_eq!(back[0].dimension(), 0);
        assert_eq!(back[1].pairs(), d1.pairs());
    }

    #[test]
    fn curve_csv_and_sidecar_written() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let d = PersistenceDiagram::new(0, vec![(0.0, 10.0)]);
        let curve = betti_curve(&d, &grid_0_255());
        write_curve_csv(&path, &curve).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("t,value\n0,1\n"));
        let meta: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(sidecar_path(&path)).unwrap()).unwrap();
        assert_eq!(meta["points"], 256);
        assert_eq!(meta["diagram_dimension"], 0);
    }

    #[test]
    fn features_roundtrip_with_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let fv = FeatureVector {
            values: vec![1.5, 0.25, 3.0],
            layout: vec![LayoutBlock {
                start: 0,
                len: 3,
                channel: 0,
                complement: false,
                dimension: Some(0),
                kind: "betti".into(),
            }],
        };
        write_features_csv(&path, &[("blobs".into(), fv.clone())]).unwrap();
        let rows = read_features_csv(&path).unwrap();
        assert_eq!(rows, vec![("blobs".to_string(), vec![1.5, 0.25, 3.0])]);
        assert_eq!(read_layout_sidecar(&path).unwrap(), fv.layout);
    }
}
