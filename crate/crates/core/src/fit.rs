//! Experiment series handling and power-log model fitting.
//!
//! Measured growth series are modelled as `value ≈ C · n^a · (ln n)^b`.
//! Over desk-scale ranges `ln n` and `ln ln n` are nearly collinear, so a
//! joint continuous fit of `(a, b)` is ill-conditioned; instead `b` is
//! scanned over a small integer grid and `(a, ln C)` is solved by least
//! squares in log space for each candidate.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One measured row of an experiment series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub family: String,
    pub statistic: String,
    pub n: u64,
    pub value: f64,
    pub runtime_s: f64,
}

/// Reads a series table in the canonical CSV layout
/// `family,statistic,n,value,runtime_s`.
pub fn read_series<R: Read>(reader: R) -> Result<Vec<SeriesPoint>> {
    let mut rows = Vec::new();
    let mut csv_reader = csv::Reader::from_reader(reader);
    for row in csv_reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Writes a series table with the canonical header.
pub fn write_series<W: Write>(writer: W, rows: &[SeriesPoint]) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    for row in rows {
        csv_writer.serialize(row)?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// Groups rows by `(family, statistic)` preserving row order inside each
/// group.
pub fn group_series(rows: &[SeriesPoint]) -> BTreeMap<(String, String), Vec<(u64, f64)>> {
    let mut groups: BTreeMap<(String, String), Vec<(u64, f64)>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.family.clone(), row.statistic.clone()))
            .or_default()
            .push((row.n, row.value));
    }
    groups
}

/// A fitted `C · n^a · (ln n)^b` model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    /// Fitted continuous exponent `a`.
    pub exponent: f64,
    /// Selected integer log-power `b`.
    pub log_exponent: i32,
    /// Fitted constant `C`.
    pub coefficient: f64,
    /// Root-mean-square error of `ln value` against the fitted model.
    pub residual: f64,
    /// Human-readable rendering of the model.
    pub model: String,
}

const LOG_EXPONENT_GRID: [i32; 7] = [0, 1, -1, 2, -2, 3, -3];

/// Fits `value ≈ C · n^a · (ln n)^b` to the series.
///
/// For each integer `b` in `−3..=3`, `ln value − b·ln ln n` is regressed
/// against `ln n`; the `b` with strictly smallest RMS residual wins, with
/// ties resolved toward `b = 0` (the grid is scanned outward from 0).
/// Requires at least 4 points with distinct `n ≥ 2` and positive values.
pub fn fit_power_log(points: &[(u64, f64)]) -> Result<FitResult> {
    if points.len() < 4 {
        return Err(Error::DegenerateSeries(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for &(n, value) in points {
        if n < 2 {
            return Err(Error::DegenerateSeries(format!(
                "point with n = {n}; the model needs n ≥ 2"
            )));
        }
        if !seen.insert(n) {
            return Err(Error::DegenerateSeries(format!("duplicate n = {n}")));
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::DegenerateSeries(format!(
                "non-positive or non-finite value {value} at n = {n}"
            )));
        }
    }

    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let log_values: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let loglogs: Vec<f64> = points
        .iter()
        .map(|&(n, _)| (n as f64).ln().ln())
        .collect();

    let mut best: Option<FitResult> = None;
    for b in LOG_EXPONENT_GRID {
        let ys: Vec<f64> = log_values
            .iter()
            .zip(&loglogs)
            .map(|(&lv, &ll)| lv - (b as f64) * ll)
            .collect();
        let (slope, intercept, rms) = linear_fit(&xs, &ys);
        if best.as_ref().map_or(true, |cur| rms < cur.residual) {
            let coefficient = intercept.exp();
            best = Some(FitResult {
                exponent: slope,
                log_exponent: b,
                coefficient,
                residual: rms,
                model: format!("{coefficient:.6e} * n^{slope:.4} * (ln n)^{b}"),
            });
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Ordinary least squares of `y` on `x`; returns `(slope, intercept, rms)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    // sxx > 0: callers guarantee at least two distinct n.
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    (slope, intercept, (rss / count).sqrt())
}
