use serde::Serialize;

use super::grid::DensityGrid;
use crate::error::{Error, Result};
use crate::grid::parabolic_vertex;
use crate::spectral::Parity;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceDiagnostics {
    pub t: f64,
    /// Grid position of the largest density in the slice.
    pub argmax_x: f64,
    pub peak: f64,
    /// Parabola-refined peak positions on the negative and positive `x` sides
    /// (nodal branch only).
    pub nodal_peaks: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationReport {
    pub branch: Parity,
    pub tau: f64,
    pub slices: Vec<SliceDiagnostics>,
    /// `(x, t)` of the global maximum.
    pub global_argmax: (f64, f64),
    /// Index of the slice closest to `t = τ`.
    pub tau_slice: usize,
    /// Nodal branch: slice where the refined peaks come closest to `x = 0`.
    pub closest_approach: Option<usize>,
}

impl LocalizationReport {
    /// Nodal branch: whether the closest approach of the two peaks to the
    /// origin happens on the slice at `t = τ`.
    pub fn nodal_minimum_at_tau(&self) -> Option<bool> {
        self.closest_approach.map(|i| i == self.tau_slice)
    }
}

fn refined_peak(x: &[f64], y: &[f64], lo: usize, hi: usize) -> Option<f64> {
    if hi <= lo {
        return None;
    }
    let mut best = lo;
    for i in lo..hi {
        if y[i] > y[best] {
            best = i;
        }
    }
    if best == 0 || best + 1 >= x.len() {
        return Some(x[best]);
    }
    Some(parabolic_vertex(
        [x[best - 1], x[best], x[best + 1]],
        [y[best - 1], y[best], y[best + 1]],
    ))
}

pub fn localization_report(grid: &DensityGrid) -> Result<LocalizationReport> {
    let (t0, t1) = (grid.t[0], grid.t[grid.nt() - 1]);
    if !(grid.tau >= t0 && grid.tau <= t1) {
        return Err(Error::Domain(format!(
            "time window [{t0}, {t1}] does not contain tau = {}",
            grid.tau
        )));
    }
    let x = &grid.x;
    let first_pos = x.iter().position(|&v| v > 0.0).unwrap_or(x.len());
    let last_neg = x.iter().rposition(|&v| v < 0.0).map_or(0, |i| i + 1);
    let slices: Vec<SliceDiagnostics> = (0..grid.nt())
        .map(|it| {
            let row = grid.row(it);
            let mut best = 0;
            for (i, v) in row.iter().enumerate() {
                if *v > row[best] {
                    best = i;
                }
            }
            let nodal_peaks = match grid.branch {
                Parity::Nodal => {
                    refined_peak(x, row, 0, last_neg).zip(refined_peak(x, row, first_pos, x.len()))
                }
                Parity::Nonnodal => None,
            };
            SliceDiagnostics {
                t: grid.t[it],
                argmax_x: x[best],
                peak: row[best],
                nodal_peaks,
            }
        })
        .collect();
    let (it, ix) = grid.argmax();
    let tau_slice = crate::grid::nearest_index(&grid.t, grid.tau);
    let closest_approach = match grid.branch {
        Parity::Nodal => slices
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.nodal_peaks.map(|(l, r)| (i, 0.5 * (r - l))))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i),
        Parity::Nonnodal => None,
    };
    Ok(LocalizationReport {
        branch: grid.branch,
        tau: grid.tau,
        slices,
        global_argmax: (x[ix], grid.t[it]),
        tau_slice,
        closest_approach,
    })
}
