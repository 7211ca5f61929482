//! File formats shared by the command-line tool and the plotting scripts.
//!
//! Every CSV starts with one `#` comment line carrying the tool version and
//! run metadata as JSON, followed by the header row. Floats are written with
//! 17 significant digits (`{:.16e}`), which round-trips any `f64`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::curves::CurveTable;
use crate::degree_rips::HilbertGrid;
use crate::sampler::PointCloud;

pub const TOOL: &str = concat!("dra ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },

    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn comment_line<M: Serialize>(meta: &M) -> String {
    let json = serde_json::to_string(meta).expect("metadata serialises");
    format!("# {TOOL} {json}\n")
}

pub fn points_csv<M: Serialize>(cloud: &PointCloud, meta: &M) -> String {
    let mut out = comment_line(meta);
    out.push_str("x,y\n");
    for p in &cloud.points {
        out.push_str(&fmt_f64(p[0]));
        out.push(',');
        out.push_str(&fmt_f64(p[1]));
        out.push('\n');
    }
    out
}

/// Rows `s,k,h0,h1`, with `s` as the outer loop.
pub fn hilbert_csv<M: Serialize>(grid: &HilbertGrid, meta: &M) -> String {
    let mut out = comment_line(meta);
    out.push_str("s,k,h0,h1\n");
    for (si, &s) in grid.s_values.iter().enumerate() {
        for (ki, &k) in grid.k_values.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(s),
                fmt_f64(k),
                grid.h0[si][ki],
                grid.h1[si][ki]
            ));
        }
    }
    out
}

/// Rows `s,ell,phi` sorted by `ell` (with `inf` last), then `s`.
pub fn curves_csv<M: Serialize>(table: &CurveTable, meta: &M) -> String {
    let mut order: Vec<usize> = (0..table.ells.len()).collect();
    order.sort_by_key(|&i| table.ells[i]);
    let mut out = comment_line(meta);
    out.push_str("s,ell,phi\n");
    for i in order {
        for (j, &s) in table.s_grid.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", fmt_f64(s), table.ells[i], fmt_f64(table.values[i][j])));
        }
    }
    out
}

/// Reads a points CSV with an `x,y` header; `#` lines are skipped.
pub fn read_points_csv(path: &Path) -> Result<PointCloud, IoError> {
    let file = fs::File::open(path).map_err(|source| IoError::File { path: path.into(), source })?;
    let parse_err = |line: u64, message: String| IoError::Parse { path: path.into(), line, message };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        let line = headers.position().map_or(1, |p| p.line());
        return Err(parse_err(line, format!("expected header `x,y`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, found {}", record.len())));
        }
        let mut xy = [0.0; 2];
        for (slot, field) in xy.iter_mut().zip(record.iter()) {
            *slot = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("invalid coordinate `{field}`")))?;
        }
        points.push(xy);
    }
    Ok(PointCloud::from_points(points))
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), IoError> {
    match path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| IoError::File { path: "<stdout>".into(), source })
        }
        Some(path) => {
            let file_err = |source| IoError::File { path: path.into(), source };
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(file_err)?;
            tmp.write_all(contents.as_bytes()).map_err(file_err)?;
            tmp.persist(path).map_err(|e| file_err(e.error))?;
            Ok(())
        }
    }
}
