use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeScheme {
    /// Five-point stencils (centered in the interior, one-sided at the two
    /// outermost points on each side); fourth order on smooth data.
    #[default]
    FiniteDifference4,
    /// FFT differentiation; needs a uniform grid and data that is effectively
    /// periodic (decayed at both ends).
    Spectral,
}

/// Fornberg's recursion for the weights of the first derivative at `x0` from
/// the nodes `xs`.
pub fn fornberg_first_derivative(x0: f64, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    // c[j][k]: weight of node j for derivative order k (k = 0, 1)
    let mut c = vec![[0.0f64; 2]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|w| w[1]).collect()
}

/// Precomputed five-point first-derivative stencils for one grid.
#[derive(Debug, Clone)]
pub struct Stencils {
    start: Vec<usize>,
    weights: Vec<[f64; 5]>,
}

impl Stencils {
    pub fn new(grid: &[f64]) -> Result<Self> {
        grid::validate(grid)?;
        let n = grid.len();
        if n < 5 {
            return Err(Error::InvalidGrid(format!(
                "five-point stencils need at least 5 points, got {n}"
            )));
        }
        let mut start = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let s = i.saturating_sub(2).min(n - 5);
            let w = fornberg_first_derivative(grid[i], &grid[s..s + 5]);
            start.push(s);
            weights.push([w[0], w[1], w[2], w[3], w[4]]);
        }
        Ok(Self { start, weights })
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.start
            .iter()
            .zip(&self.weights)
            .map(|(&s, w)| (0..5).map(|j| f[s + j] * w[j]).sum())
            .collect()
    }
}

/// FFT derivative on a uniform grid.
pub fn spectral_derivative(grid_pts: &[f64], f: &[Complex64]) -> Result<Vec<Complex64>> {
    grid::validate(grid_pts)?;
    if !grid::is_uniform(grid_pts, 1e-9) {
        return Err(Error::InvalidGrid(
            "spectral differentiation needs a uniform grid".into(),
        ));
    }
    let n = f.len();
    let h = grid_pts[1] - grid_pts[0];
    let period = h * n as f64;
    let mut planner = FftPlanner::<f64>::new();
    let mut buf = f.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    for (j, v) in buf.iter_mut().enumerate() {
        let kj = if 2 * j < n {
            j as f64
        } else if 2 * j == n {
            0.0
        } else {
            j as f64 - n as f64
        };
        *v *= Complex64::new(0.0, 2.0 * std::f64::consts::PI * kj / period);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(buf.into_iter().map(|v| v * scale).collect())
}
