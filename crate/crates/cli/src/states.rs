//! Smooth test states for the momentum-space checks.

use num_complex::Complex64;
use rtoa::{grid, PhysConstants, Result, SpinorField};

/// Lower and upper edge of the test support, in units of `m0 c`.
pub const SUPPORT: (f64, f64) = (0.5, 5.0);

fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

/// `exp(−1/(1−u²)) e^{i κ p}` with `u = (p − centre)/width`, on a uniform
/// grid over the test support. Both charge components are populated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpState {
    pub centre: f64,
    pub width: f64,
    pub wavenumber: f64,
}

impl BumpState {
    pub const fn new(centre: f64, width: f64, wavenumber: f64) -> Self {
        Self {
            centre,
            width,
            wavenumber,
        }
    }

    pub fn sample(&self, points: usize, k: &PhysConstants) -> Result<SpinorField> {
        let mc = k.compton_momentum();
        let g = grid::uniform(SUPPORT.0 * mc, SUPPORT.1 * mc, points)?;
        SpinorField::phi_momentum(g, |p| {
            let u = (p / mc - self.centre) / self.width;
            let v = Complex64::from_polar(bump(u), self.wavenumber * p / mc);
            (v * 0.5, v.conj())
        })
    }
}

/// The three states used for the conjugacy check.
pub const CONJUGACY_STATES: [BumpState; 3] = [
    BumpState::new(2.75, 2.2, 12.0),
    BumpState::new(2.0, 1.4, -16.0),
    BumpState::new(3.2, 1.7, 20.0),
];
