use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::EigenSpec;
use crate::constants::{energy, PhysConstants};
use crate::error::{Error, Result};
use crate::quad::{integrate, neville_to_zero, AdaptiveConfig, Panel};

/// `⟨Φ_{s1}|Φ_{s2}⟩_Φ = distributional_part · δ(τ2 − τ1) + regular_part`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapResult {
    pub distributional_part: f64,
    /// Not finite when `τ1 = τ2`.
    pub regular_part: Complex64,
}

impl OverlapResult {
    pub fn zero() -> Self {
        Self {
            distributional_part: 0.0,
            regular_part: Complex64::new(0.0, 0.0),
        }
    }
}

fn same_block(s1: &EigenSpec, s2: &EigenSpec) -> bool {
    s1.lambda == s2.lambda && s1.parity == s2.parity
}

/// Closed form of the σ3-weighted overlap, `s1` in the bra and `s2` in the
/// ket: `λ (δ/2 + λ i e^{λ i Δ m0c²/ħ} / (2πΔ))` with `Δ = τ2 − τ1`, and
/// exact zeros across charge or parity blocks.
pub fn overlap(s1: &EigenSpec, s2: &EigenSpec, k: &PhysConstants) -> OverlapResult {
    if !same_block(s1, s2) {
        return OverlapResult::zero();
    }
    let lam = s1.lambda.value();
    let delta = s2.tau - s1.tau;
    let regular = if delta == 0.0 {
        Complex64::new(f64::NAN, f64::NAN)
    } else {
        Complex64::new(0.0, lam)
            * Complex64::from_polar(1.0, lam * delta * k.rest_energy() / k.hbar)
            / (2.0 * PI * delta)
            * lam
    };
    OverlapResult {
        distributional_part: 0.5 * lam,
        regular_part: regular,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapConfig {
    /// Damping `exp(−ε E_p / m0c²)` strengths, decreasing.
    pub epsilon_ladder: Vec<f64>,
    #[serde(skip)]
    pub quadrature: AdaptiveConfig,
}

impl Default for OverlapConfig {
    fn default() -> Self {
        Self {
            epsilon_ladder: vec![0.2, 0.1, 0.05, 0.025, 0.0125],
            quadrature: AdaptiveConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-11,
                max_subdivisions: 50_000,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericOverlap {
    /// Extrapolated `ε → 0` value of the regular part.
    pub value: Complex64,
    pub extrapolation_error: f64,
    /// `(ε, damped integral)` along the ladder.
    pub ladder: Vec<(f64, Complex64)>,
}

/// Regularized momentum-space quadrature of the overlap, extrapolated to
/// `ε → 0` along the configured ladder.
pub fn overlap_numeric(
    s1: &EigenSpec,
    s2: &EigenSpec,
    k: &PhysConstants,
    cfg: &OverlapConfig,
) -> Result<NumericOverlap> {
    k.validate()?;
    if !same_block(s1, s2) {
        return Ok(NumericOverlap {
            value: Complex64::new(0.0, 0.0),
            extrapolation_error: 0.0,
            ladder: Vec::new(),
        });
    }
    let delta = s2.tau - s1.tau;
    if delta == 0.0 {
        return Err(Error::DivergentOverlap);
    }
    let ladder = &cfg.epsilon_ladder;
    if ladder.is_empty()
        || ladder.iter().any(|e| !(*e > 0.0))
        || ladder.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::InvalidConfig(
            "overlap epsilon ladder must be positive and strictly decreasing".into(),
        ));
    }
    let lam = s1.lambda.value();
    let mc2 = k.rest_energy();
    let mc = k.compton_momentum();
    let norm = k.c / (4.0 * PI * k.hbar);
    // the p-frequency of the phase is at most |Δ| c / ħ
    let half_period = PI * k.hbar / (delta.abs() * k.c);

    let mut values = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let e_max = mc2 * 40.0 / eps;
        let p_max = (e_max * e_max - mc2 * mc2).sqrt() / k.c;
        let integrand = |p: f64| {
            let e = energy(p, k);
            // both signs of p contribute equally, and sgn(p)² = 1
            let modulus = 2.0 * norm * p * k.c / e * (-eps * e / mc2).exp();
            Complex64::from_polar(modulus, lam * delta * e / k.hbar)
        };
        let width = half_period.min(mc);
        let n_panels = (p_max / width).ceil().max(1.0) as usize;
        let panels: Vec<Panel> = (0..n_panels)
            .map(|i| Panel::Plain {
                a: p_max * i as f64 / n_panels as f64,
                b: p_max * (i + 1) as f64 / n_panels as f64,
            })
            .collect();
        let r = integrate(&integrand, &panels, &cfg.quadrature)?;
        values.push(r.value * lam);
    }
    let ext = neville_to_zero(ladder, &values);
    Ok(NumericOverlap {
        value: ext.value,
        extrapolation_error: ext.error,
        ladder: ladder.iter().copied().zip(values).collect(),
    })
}
