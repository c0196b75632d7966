//! CSV emission. Numbers carry 17 significant digits so that every `f64`
//! survives a text round trip.

use std::fs::File;
use std::path::{Path, PathBuf};

use crate::model::{Grid1D, VectorField};
use crate::schemes::{Snapshot, Trajectory};

use super::{ConvergenceReport, HarnessError};

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(path: &Path, e: impl ToString) -> HarnessError {
    HarnessError::Io { path: path.display().to_string(), message: e.to_string() }
}

fn writer(path: &Path) -> Result<csv::Writer<File>, HarnessError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

/// `x,u1,…,un,r` rows for one snapshot.
pub fn write_snapshot(snapshot: &Snapshot, grid: &Grid1D, path: &Path) -> Result<(), HarnessError> {
    let n = snapshot.u.n();
    let mut w = writer(path)?;
    let mut header = vec!["x".to_string()];
    header.extend((1..=n).map(|i| format!("u{i}")));
    header.push("r".into());
    w.write_record(&header).map_err(|e| io_err(path, e))?;
    for j in 0..snapshot.u.num_cells() {
        let mut row = vec![fmt_num(grid.center(j))];
        row.extend(snapshot.u.cell(j).iter().map(|&v| fmt_num(v)));
        row.push(fmt_num(snapshot.r[j]));
        w.write_record(&row).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// File name for the snapshot at time `t`: `<prefix>_t<t>.csv`.
pub fn snapshot_path(prefix: &Path, t: f64) -> PathBuf {
    let mut name = prefix.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    name.push_str(&format!("_t{t}.csv"));
    prefix.with_file_name(name)
}

/// One file per recorded snapshot; returns the paths written.
pub fn write_trajectory(traj: &Trajectory, grid: &Grid1D, prefix: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    traj.snapshots
        .iter()
        .map(|s| {
            let path = snapshot_path(prefix, s.time);
            write_snapshot(s, grid, &path)?;
            Ok(path)
        })
        .collect()
}

/// `N,dx,E,rate` rows; missing values are empty fields.
pub fn write_report(report: &ConvergenceReport, path: &Path) -> Result<(), HarnessError> {
    let mut w = writer(path)?;
    w.write_record(["N", "dx", "E", "rate"]).map_err(|e| io_err(path, e))?;
    for row in &report.rows {
        let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
        w.write_record([row.level.to_string(), fmt_num(row.dx), opt(row.error), opt(row.rate)])
            .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Cell centres, vector values and radius column of a snapshot file.
pub fn read_snapshot(path: &Path) -> Result<(Vec<f64>, VectorField, Vec<f64>), HarnessError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let columns = rdr.headers().map_err(|e| io_err(path, e))?.len();
    if columns < 3 {
        return Err(io_err(path, "snapshot needs x, at least one component and r"));
    }
    let n = columns - 2;
    let (mut xs, mut data, mut rs) = (Vec::new(), Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let vals: Vec<f64> =
            rec.iter().map(|s| s.parse::<f64>()).collect::<Result<_, _>>().map_err(|e| io_err(path, e))?;
        xs.push(vals[0]);
        data.extend_from_slice(&vals[1..=n]);
        rs.push(vals[n + 1]);
    }
    Ok((xs, VectorField::from_flat(n, data)?, rs))
}
