//! Position-space evolution of the TOA eigenfunctions.
//!
//! The Fourier integrals of the eigenfunctions diverge and are defined only
//! through a damping factor `exp(−ε q)` with `q = p/(m0 c)`. Every result
//! carries the `ε` it was computed at, and an extrapolation mode fits the
//! integrals along a decreasing ladder of `ε` values.

mod grid;
mod localization;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{ChargeSign, PhysConstants};
use crate::error::{Error, Result};
use crate::quad::{integrate, neville_to_zero, AdaptiveConfig, Integral, Panel};
use crate::spectral::{EigenSpec, Parity};

pub use self::grid::{density_grid, density_grid_with, DensityGrid, GridAxes};
pub use localization::{localization_report, LocalizationReport, SliceDiagnostics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub epsilon: f64,
    pub epsilon_ladder: Vec<f64>,
    /// Upper limit of the `q` integration; `None` means `max(50, 30/ε)`.
    pub q_max: Option<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.3,
            epsilon_ladder: vec![0.3, 0.15, 0.075],
            q_max: None,
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            max_subdivisions: 20_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.epsilon_ladder.is_empty()
            || self
                .epsilon_ladder
                .iter()
                .any(|e| !(*e > 0.0 && e.is_finite()))
            || self.epsilon_ladder.windows(2).any(|w| w[1] >= w[0])
        {
            return bad(format!(
                "epsilon ladder must be positive and strictly decreasing, got {:?}",
                self.epsilon_ladder
            ));
        }
        for &eps in std::iter::once(&self.epsilon).chain(&self.epsilon_ladder) {
            if (-eps * self.q_max_for(eps)).exp() >= 1e-12 {
                return bad(format!(
                    "q_max = {} leaves exp(-eps q_max) >= 1e-12 for eps = {eps}",
                    self.q_max_for(eps)
                ));
            }
        }
        if !(self.abs_tol > 0.0 && self.rel_tol >= 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be at least 1".into());
        }
        Ok(())
    }

    pub fn q_max_for(&self, eps: f64) -> f64 {
        self.q_max.unwrap_or_else(|| (30.0 / eps).max(50.0))
    }

    fn adaptive(&self) -> AdaptiveConfig {
        AdaptiveConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// The two real integrals of one branch; the position-space eigenfunction is
/// proportional to `f1 − i λ f2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FIntegrals {
    pub f1: f64,
    pub f2: f64,
    /// Adaptive quadrature error estimate of `f1 − i f2`.
    pub error: f64,
}

impl FIntegrals {
    fn from_complex(g: Complex64, error: f64) -> Self {
        Self {
            f1: g.re,
            f2: -g.im,
            error,
        }
    }

    pub fn modulus_sqr(&self) -> f64 {
        self.f1 * self.f1 + self.f2 * self.f2
    }
}

/// `m0²c³/(2π²ħ²)`.
pub fn density_prefactor(k: &PhysConstants) -> f64 {
    k.m0 * k.m0 * k.c.powi(3) / (2.0 * PI * PI * k.hbar * k.hbar)
}

/// `∫_0^{q_max} K(α x q) sqrt(q) w(q) exp(−i s sqrt(1+q²)) exp(−ε q) dq`
/// with `K = cos` (nonnodal) or `sin` (nodal), `α = m0c/ħ`.
pub(crate) fn damped_integral<W>(
    parity: Parity,
    x: f64,
    s: f64,
    eps: f64,
    weight: W,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<Integral>
where
    W: Fn(f64) -> f64,
{
    let alpha = k.compton_momentum() / k.hbar;
    let ax = alpha * x;
    let integrand = |qq: f64| {
        let kern = match parity {
            Parity::Nonnodal => (ax * qq).cos(),
            Parity::Nodal => (ax * qq).sin(),
        };
        let root = (1.0 + qq * qq).sqrt();
        let modulus = kern * qq.sqrt() * weight(qq) * (-eps * qq).exp();
        Complex64::from_polar(1.0, -s * root) * modulus
    };
    let q_max = q.q_max_for(eps);
    let freq = ax.abs() + s.abs();
    let width = if freq > 0.0 {
        (PI / freq).min(2.0)
    } else {
        2.0
    };
    let first = width.min(1.0);
    let mut panels = vec![Panel::SqrtLeft { a: 0.0, b: first }];
    let rest = q_max - first;
    let n = (rest / width).ceil().max(1.0) as usize;
    panels.extend((0..n).map(|i| Panel::Plain {
        a: first + rest * i as f64 / n as f64,
        b: first + rest * (i + 1) as f64 / n as f64,
    }));
    integrate(&integrand, &panels, &q.adaptive())
}

fn time_phase(tau: f64, t: f64, k: &PhysConstants) -> f64 {
    k.rest_energy() / k.hbar * (t - tau)
}

/// `f1`, `f2` at the damping `eps`.
pub fn f_integrals_at(
    branch: Parity,
    tau: f64,
    x: f64,
    t: f64,
    eps: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<FIntegrals> {
    if branch == Parity::Nodal && x == 0.0 {
        return Ok(FIntegrals {
            f1: 0.0,
            f2: 0.0,
            error: 0.0,
        });
    }
    let r = damped_integral(
        branch,
        x,
        time_phase(tau, t, k),
        eps,
        |qq| (1.0 + qq * qq).powf(-0.25),
        k,
        q,
    )?;
    Ok(FIntegrals::from_complex(r.value, r.error))
}

/// `f1`, `f2` at the configured `ε`.
pub fn f_integrals(
    branch: Parity,
    tau: f64,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<FIntegrals> {
    q.validate()?;
    k.validate()?;
    f_integrals_at(branch, tau, x, t, q.epsilon, k, q)
}

/// `f1`, `f2` extrapolated to `ε → 0` along the ladder. The error field is
/// the extrapolation error estimate.
pub fn f_integrals_extrapolated(
    branch: Parity,
    tau: f64,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<FIntegrals> {
    q.validate()?;
    k.validate()?;
    let values = q
        .epsilon_ladder
        .iter()
        .map(|&eps| {
            f_integrals_at(branch, tau, x, t, eps, k, q).map(|f| Complex64::new(f.f1, -f.f2))
        })
        .collect::<Result<Vec<_>>>()?;
    let ext = neville_to_zero(&q.epsilon_ladder, &values);
    Ok(FIntegrals::from_complex(ext.value, ext.error))
}

/// `P_τ(x, t) = m0²c³/(2π²ħ²) (f1² + f2²)` at the configured `ε`.
pub fn density(
    branch: Parity,
    tau: f64,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<f64> {
    Ok(density_prefactor(k) * f_integrals(branch, tau, x, t, k, q)?.modulus_sqr())
}

/// Density from the `ε`-extrapolated integrals.
pub fn density_extrapolated(
    branch: Parity,
    tau: f64,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<f64> {
    Ok(density_prefactor(k) * f_integrals_extrapolated(branch, tau, x, t, k, q)?.modulus_sqr())
}

/// Φ-representation eigenfunction in position space at the configured `ε`:
/// `(m0c/πħ) sqrt(c/2) (f1 − i λ f2)`, times `i` on the nodal branch.
pub fn phi_position_eigenfunction(
    spec: &EigenSpec,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let f = f_integrals(spec.parity, spec.tau, x, t, k, q)?;
    let mut pref = Complex64::new(
        k.compton_momentum() / (PI * k.hbar) * (k.c / 2.0).sqrt(),
        0.0,
    );
    if spec.parity == Parity::Nodal {
        pref *= Complex64::new(0.0, 1.0);
    }
    let v = pref * Complex64::new(f.f1, -spec.lambda.value() * f.f2);
    let zero = Complex64::new(0.0, 0.0);
    Ok(match spec.lambda {
        ChargeSign::Positive => (v, zero),
        ChargeSign::Negative => (zero, v),
    })
}

/// Ψ-representation (Schrödinger form) eigenfunction in position space at
/// the configured `ε`, with component weights `(1+q²)^{−1/2} ± λ` and
/// prefactor `m0 c^{3/2}/(2^{3/2} π ħ)`.
pub fn psi_representation_eigenfunction(
    spec: &EigenSpec,
    x: f64,
    t: f64,
    k: &PhysConstants,
    q: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    q.validate()?;
    k.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    if spec.parity == Parity::Nodal && x == 0.0 {
        return Ok((zero, zero));
    }
    let lam = spec.lambda.value();
    let s = lam * time_phase(spec.tau, t, k);
    let component = |sign: f64| {
        damped_integral(
            spec.parity,
            x,
            s,
            q.epsilon,
            |qq| 1.0 / (1.0 + qq * qq).sqrt() + sign * lam,
            k,
            q,
        )
        .map(|r| r.value)
    };
    let mut pref = Complex64::new(k.m0 * k.c.powf(1.5) / (2.0f64.powf(1.5) * PI * k.hbar), 0.0);
    if spec.parity == Parity::Nodal {
        pref *= Complex64::new(0.0, 1.0);
    }
    Ok((pref * component(1.0)?, pref * component(-1.0)?))
}
