use serde::Serialize;

use super::{density_prefactor, f_integrals_at, f_integrals_extrapolated, QuadratureConfig};
use crate::constants::PhysConstants;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid as sample;
use crate::spectral::Parity;

/// Ranges and sizes of a space-time mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAxes {
    pub x_range: (f64, f64),
    pub t_range: (f64, f64),
    pub nx: usize,
    pub nt: usize,
}

/// Density on a mesh, stored row-major with `t` as the slow index:
/// `values[it * nx + ix]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub branch: Parity,
    pub tau: f64,
    pub x: Vec<f64>,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    /// Quadrature (or extrapolation) error estimate of `f1 − i f2` per cell.
    pub errors: Vec<f64>,
    /// Cells whose quadrature did not reach tolerance; the value is the best
    /// estimate.
    pub flagged: Vec<bool>,
    pub extrapolated: bool,
    pub config: QuadratureConfig,
}

impl DensityGrid {
    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn nt(&self) -> usize {
        self.t.len()
    }

    pub fn at(&self, it: usize, ix: usize) -> f64 {
        self.values[it * self.nx() + ix]
    }

    pub fn row(&self, it: usize) -> &[f64] {
        &self.values[it * self.nx()..(it + 1) * self.nx()]
    }

    pub fn any_flagged(&self) -> bool {
        self.flagged.iter().any(|&f| f)
    }

    /// Trapezoidal `∫ P dx` per time slice.
    pub fn x_integrals(&self) -> Vec<f64> {
        (0..self.nt())
            .map(|it| sample::trapezoid(&self.x, self.row(it)))
            .collect()
    }

    /// `(it, ix)` of the largest value (first in row-major order on ties).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        (best / self.nx(), best % self.nx())
    }
}

pub fn density_grid(
    branch: Parity,
    tau: f64,
    axes: GridAxes,
    k: &PhysConstants,
    q: &QuadratureConfig,
    extrapolate: bool,
) -> Result<DensityGrid> {
    density_grid_with(branch, tau, axes, k, q, extrapolate, Execution::default())
}

/// Evaluates the density on every mesh cell. Cells are independent work
/// items; the output order does not depend on `exec`.
pub fn density_grid_with(
    branch: Parity,
    tau: f64,
    axes: GridAxes,
    k: &PhysConstants,
    q: &QuadratureConfig,
    extrapolate: bool,
    exec: Execution,
) -> Result<DensityGrid> {
    k.validate()?;
    q.validate()?;
    if axes.nx < 2 || axes.nt < 2 {
        return Err(Error::InvalidGrid(format!(
            "density grid needs nx, nt >= 2 (got {}, {})",
            axes.nx, axes.nt
        )));
    }
    if !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be finite, got {tau}")));
    }
    let x = sample::uniform(axes.x_range.0, axes.x_range.1, axes.nx)?;
    let t = sample::uniform(axes.t_range.0, axes.t_range.1, axes.nt)?;
    let nx = axes.nx;
    let pref = density_prefactor(k);
    let cells = exec.try_map(axes.nx * axes.nt, |i| {
        let (xi, ti) = (x[i % nx], t[i / nx]);
        let r = if extrapolate {
            f_integrals_extrapolated(branch, tau, xi, ti, k, q)
        } else {
            f_integrals_at(branch, tau, xi, ti, q.epsilon, k, q)
        };
        match r {
            Ok(f) => Ok((pref * f.modulus_sqr(), f.error, false)),
            Err(Error::Convergence {
                value, estimate, ..
            }) => Ok((pref * value.norm_sqr(), estimate, true)),
            Err(e) => Err(e),
        }
    })?;
    let mut values = Vec::with_capacity(cells.len());
    let mut errors = Vec::with_capacity(cells.len());
    let mut flagged = Vec::with_capacity(cells.len());
    for (v, e, f) in cells {
        values.push(v);
        errors.push(e);
        flagged.push(f);
    }
    Ok(DensityGrid {
        branch,
        tau,
        x,
        t,
        values,
        errors,
        flagged,
        extrapolated: extrapolate,
        config: q.clone(),
    })
}
