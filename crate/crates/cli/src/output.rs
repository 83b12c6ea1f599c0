//! CSV writers. Floats are printed with 17 significant digits.

use std::fs;
use std::path::Path;

use quinpi_core::Grid;

use crate::error::CliError;
use crate::runner::DiagRow;
use crate::studies::{ConvergenceRow, TimingRow};

/// `x` with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn write_table(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err(path))?;
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e.into() })?;
    let csv_err = |e: csv::Error| CliError::Io { path: path.to_path_buf(), source: e.into() };
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err(path))
}

/// `x,u` per cell.
pub fn write_solution(path: &Path, grid: &Grid, values: &[f64]) -> Result<(), CliError> {
    let rows = values.iter().enumerate().map(|(j, &u)| vec![fmt_float(grid.center(j)), fmt_float(u)]);
    write_table(path, &["x", "u"], rows)
}

pub fn write_diagnostics(path: &Path, rows: &[DiagRow]) -> Result<(), CliError> {
    let rows = rows.iter().map(|r| {
        vec![
            fmt_float(r.t),
            fmt_float(r.mass_dev),
            fmt_float(r.tv),
            r.newton_total.to_string(),
            fmt_float(r.step_seconds),
        ]
    });
    write_table(path, &["t", "mass_dev", "tv", "newton_total", "step_seconds"], rows)
}

pub fn write_convergence(path: &Path, rows: &[ConvergenceRow]) -> Result<(), CliError> {
    let rows = rows.iter().map(|r| {
        vec![r.n.to_string(), fmt_float(r.l1), fmt_opt(r.l1_rate), fmt_float(r.linf), fmt_opt(r.linf_rate)]
    });
    write_table(path, &["N", "L1", "rate", "Linf", "rate"], rows)
}

pub fn write_timing(path: &Path, rows: &[TimingRow]) -> Result<(), CliError> {
    let rows = rows
        .iter()
        .map(|r| vec![r.n.to_string(), fmt_float(r.explicit), fmt_float(r.implicit), fmt_float(r.ratio)]);
    write_table(path, &["N", "explicit", "implicit", "ratio"], rows)
}

/// `step,total_iterations`, steps numbered from 1.
pub fn write_newton_log(path: &Path, totals: &[usize]) -> Result<(), CliError> {
    let rows = totals.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.to_string()]);
    write_table(path, &["step", "total_iterations"], rows)
}
