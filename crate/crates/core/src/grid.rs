//! Explicit one-dimensional sample grids and composite trapezoidal sums.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn validate(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("non-finite sample point".into()));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// `n` equally spaced points on `[a, b]`, both ends included.
pub fn uniform(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(b > a) {
        return Err(Error::InvalidGrid(format!(
            "uniform grid needs n >= 2 and b > a (n = {n}, a = {a}, b = {b})"
        )));
    }
    let h = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
        .collect())
}

/// Uniform grid centered at `center` with the given half width. When a node
/// would land on `p = 0` the whole grid is shifted by half a step so that the
/// origin is straddled instead.
pub fn straddling_uniform(center: f64, half_width: f64, n: usize) -> Result<Vec<f64>> {
    let mut grid = uniform(center - half_width, center + half_width, n)?;
    let h = grid[1] - grid[0];
    if grid.iter().any(|p| p.abs() < 1e-9 * h) {
        grid.iter_mut().for_each(|p| *p += 0.5 * h);
    }
    Ok(grid)
}

/// Symmetric grid on `[-p_max, p_max]` with geometric spacing that becomes
/// dense towards the origin. The innermost pair sits at `±p_min`.
pub fn log_dense_symmetric(p_min: f64, p_max: f64, points_per_side: usize) -> Result<Vec<f64>> {
    if !(p_min > 0.0 && p_max > p_min) || points_per_side < 2 {
        return Err(Error::InvalidGrid(format!(
            "log-dense grid needs 0 < p_min < p_max and >= 2 points per side \
             (p_min = {p_min}, p_max = {p_max}, n = {points_per_side})"
        )));
    }
    let ratio = (p_max / p_min).ln() / (points_per_side - 1) as f64;
    let side: Vec<f64> = (0..points_per_side)
        .map(|i| p_min * (ratio * i as f64).exp())
        .collect();
    Ok(side
        .iter()
        .rev()
        .map(|p| -p)
        .chain(side.iter().copied())
        .collect())
}

pub fn is_uniform(grid: &[f64], rel_tol: f64) -> bool {
    if grid.len() < 3 {
        return true;
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    grid.windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= rel_tol * h.abs())
}

/// Trapezoidal weights for an arbitrary (validated) grid.
pub fn trapezoid_weights(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = 0.5 * (grid[i + 1] - grid[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    debug_assert_eq!(grid.len(), values.len());
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

pub fn trapezoid_complex(grid: &[f64], values: &[Complex64]) -> Complex64 {
    debug_assert_eq!(grid.len(), values.len());
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| (y[0] + y[1]) * (0.5 * (x[1] - x[0])))
        .sum()
}

/// Index of the grid point closest to `x`.
pub fn nearest_index(grid: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (i, g) in grid.iter().enumerate() {
        if (g - x).abs() < (grid[best] - x).abs() {
            best = i;
        }
    }
    best
}

/// Vertex abscissa of the parabola through three points, clamped to the
/// outer two. Falls back to the middle point for degenerate data.
pub fn parabolic_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curvature = (d2 - d1) / (x[2] - x[0]);
    if curvature == 0.0 || !curvature.is_finite() {
        return x[1];
    }
    let vertex = 0.5 * (x[0] + x[1]) - d1 / (2.0 * curvature);
    vertex.clamp(x[0], x[2])
}
