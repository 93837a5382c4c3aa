//! TOA eigenfunctions in the Feshbach–Villars momentum representation, the
//! even (charge-preserving) part of the TOA operator acting on sampled
//! fields, and the completeness and non-orthogonality identities.

mod derivative;
mod even_op;
mod overlap;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{energy, ChargeSign, PhysConstants};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Basis, Representation, SpinorField};
use crate::grid;

pub use derivative::{fornberg_first_derivative, spectral_derivative, DerivativeScheme, Stencils};
pub use even_op::{
    apply_even_toa, apply_even_toa_with, apply_hamiltonian, commutator_residual, eigen_residual,
    even_operator_coefficients, EvenToaOptions,
};
pub use overlap::{overlap, overlap_numeric, NumericOverlap, OverlapConfig, OverlapResult};

/// Momentum parity of an eigenfunction branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Even in `p`; its position density peaks at the origin at `t = τ`.
    Nonnodal,
    /// Odd in `p` through a `sgn(p)` factor; its density vanishes at `x = 0`.
    Nodal,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Nonnodal, Parity::Nodal];

    /// The branch factor: 1 or `sgn(p)` with `sgn(0) = 0`.
    pub fn factor(self, p: f64) -> f64 {
        match self {
            Parity::Nonnodal => 1.0,
            Parity::Nodal => sgn(p),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Nonnodal => "nonnodal",
            Parity::Nodal => "nodal",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonnodal" | "+" => Ok(Parity::Nonnodal),
            "nodal" | "-" => Ok(Parity::Nodal),
            other => Err(Error::InvalidConfig(format!(
                "unknown branch `{other}` (expected nonnodal or nodal)"
            ))),
        }
    }
}

pub fn sgn(p: f64) -> f64 {
    if p > 0.0 {
        1.0
    } else if p < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Identifies one eigenfunction: charge sign, branch and eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSpec {
    pub lambda: ChargeSign,
    pub parity: Parity,
    pub tau: f64,
}

impl EigenSpec {
    pub fn new(lambda: ChargeSign, parity: Parity, tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::Domain(format!(
                "eigenvalue tau must be finite, got {tau}"
            )));
        }
        Ok(Self {
            lambda,
            parity,
            tau,
        })
    }
}

/// The non-vanishing component of the eigenfunction, evolved to time `t`:
/// `sqrt(c/4πħ) sqrt(|p|c/E_p) exp(−λ i (t−τ) E_p/ħ)`, times `sgn(p)` on the
/// nodal branch.
pub fn eigen_amplitude(s: &EigenSpec, t: f64, p: f64, k: &PhysConstants) -> Complex64 {
    let e = energy(p, k);
    let modulus = (k.c / (4.0 * std::f64::consts::PI * k.hbar)).sqrt()
        * (p.abs() * k.c / e).sqrt()
        * s.parity.factor(p);
    let phase = -s.lambda.value() * (t - s.tau) * e / k.hbar;
    Complex64::from_polar(modulus, phase)
}

/// `(upper, lower)` of the eigenfunction; the component of the other charge
/// sign is exactly zero.
pub fn eigenfunction_momentum(
    s: &EigenSpec,
    t: f64,
    p: f64,
    k: &PhysConstants,
) -> (Complex64, Complex64) {
    let a = eigen_amplitude(s, t, p, k);
    let zero = Complex64::new(0.0, 0.0);
    match s.lambda {
        ChargeSign::Positive => (a, zero),
        ChargeSign::Negative => (zero, a),
    }
}

/// The eigenfunction sampled on `grid` as a Φ-representation momentum field.
pub fn eigenfunction_field(
    s: &EigenSpec,
    t: f64,
    grid: Vec<f64>,
    k: &PhysConstants,
) -> Result<SpinorField> {
    SpinorField::phi_momentum(grid, |p| eigenfunction_momentum(s, t, p, k))
}

/// Phase-stripped comparison with the non-relativistic eigenfunction
/// `sqrt(|p|/(4π m0 ħ)) exp(λ i τ p²/(2 m0 ħ))` (times `sgn(p)` when nodal).
/// Returns `(c, |deviation|)` for each speed in `c_ladder`, keeping `ħ` and
/// `m0` from `k`.
pub fn nonrel_limit_check(
    s: &EigenSpec,
    p: f64,
    c_ladder: &[f64],
    k: &PhysConstants,
) -> Result<Vec<(f64, f64)>> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::Domain(format!(
            "non-relativistic comparison needs finite p != 0, got {p}"
        )));
    }
    c_ladder
        .iter()
        .map(|&c| {
            let kc = k.with_c(c);
            kc.validate()?;
            let strip =
                Complex64::from_polar(1.0, -s.lambda.value() * s.tau * kc.rest_energy() / kc.hbar);
            let rel = eigen_amplitude(s, 0.0, p, &kc) * strip;
            let nonrel = Complex64::from_polar(
                (p.abs() / (4.0 * std::f64::consts::PI * kc.m0 * kc.hbar)).sqrt()
                    * s.parity.factor(p),
                s.lambda.value() * s.tau * p * p / (2.0 * kc.m0 * kc.hbar),
            );
            Ok((c, (rel - nonrel).norm()))
        })
        .collect()
}

/// Projects `test_fn` onto every eigenfunction with `τ` on a trapezoidal grid
/// over `[−T, T]` with spacing `tau_step`, resums, and returns the relative
/// L² error of the reconstruction.
pub fn completeness_check(
    test_fn: &SpinorField,
    tau_window: f64,
    tau_step: f64,
    k: &PhysConstants,
) -> Result<f64> {
    completeness_check_with(test_fn, tau_window, tau_step, k, Execution::default())
}

pub fn completeness_check_with(
    test_fn: &SpinorField,
    tau_window: f64,
    tau_step: f64,
    k: &PhysConstants,
    exec: Execution,
) -> Result<f64> {
    let rec = reconstruct(test_fn, tau_window, tau_step, k, exec)?;
    let norm = test_fn.l2_norm();
    if norm == 0.0 {
        return Err(Error::Domain("test function is identically zero".into()));
    }
    Ok(rec.sub(test_fn)?.l2_norm() / norm)
}

/// Resolution of the identity truncated to `|τ| ≤ tau_window`.
pub fn reconstruct(
    test_fn: &SpinorField,
    tau_window: f64,
    tau_step: f64,
    k: &PhysConstants,
    exec: Execution,
) -> Result<SpinorField> {
    k.validate()?;
    if test_fn.representation() != Representation::FeshbachVillarsPhi
        || test_fn.basis() != Basis::Momentum
    {
        return Err(Error::Domain(
            "completeness needs a Φ-representation momentum field".into(),
        ));
    }
    if !(tau_window > 0.0 && tau_step > 0.0 && tau_step <= tau_window) {
        return Err(Error::Domain(format!(
            "need 0 < tau_step <= tau_window (got {tau_step}, {tau_window})"
        )));
    }
    let n_tau = (2.0 * tau_window / tau_step).round() as usize + 1;
    let taus = grid::uniform(-tau_window, tau_window, n_tau)?;
    let w_tau = grid::trapezoid_weights(&taus);
    let p = test_fn.grid();
    let w_p = grid::trapezoid_weights(p);
    let norm = (k.c / (4.0 * std::f64::consts::PI * k.hbar)).sqrt();
    let energies: Vec<f64> = p.iter().map(|&x| energy(x, k)).collect();
    let amp: Vec<f64> = p
        .iter()
        .zip(&energies)
        .map(|(&x, &e)| norm * (x.abs() * k.c / e).sqrt())
        .collect();
    let signs: Vec<f64> = p.iter().map(|&x| sgn(x)).collect();

    // coefficients[τ] = [(upper even, upper odd), (lower even, lower odd)]
    let coefficients: Vec<[Complex64; 4]> = exec.map(n_tau, |j| {
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for i in 0..p.len() {
            // conj(e^{iτE/ħ}) for λ = +1, conj(e^{−iτE/ħ}) for λ = −1
            let ph = Complex64::from_polar(amp[i] * w_p[i], -taus[j] * energies[i] / k.hbar);
            let up = ph * test_fn.upper()[i];
            let lo = ph.conj() * test_fn.lower()[i];
            acc[0] += up;
            acc[1] += up * signs[i];
            acc[2] += lo;
            acc[3] += lo * signs[i];
        }
        acc
    });

    let values: Vec<(Complex64, Complex64)> = exec.map(p.len(), |i| {
        let mut up = Complex64::new(0.0, 0.0);
        let mut lo = Complex64::new(0.0, 0.0);
        for j in 0..n_tau {
            let ph = Complex64::from_polar(amp[i] * w_tau[j], taus[j] * energies[i] / k.hbar);
            let c = &coefficients[j];
            up += ph * (c[0] + c[1] * signs[i]);
            lo += ph.conj() * (c[2] + c[3] * signs[i]);
        }
        (up, lo)
    });
    let (upper, lower) = values.into_iter().unzip();
    test_fn.with_components(upper, lower)
}
