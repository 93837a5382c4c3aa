use num_complex::Complex64;

use super::derivative::{spectral_derivative, DerivativeScheme, Stencils};
use crate::constants::{energy, PhysConstants};
use crate::error::{Error, Result};
use crate::field::{Basis, Representation, SpinorField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenToaOptions {
    pub scheme: DerivativeScheme,
    /// Half-width of the excluded neighbourhood of `p = 0`, in units of `m0 c`.
    pub singular_radius: f64,
    /// Inside the excluded neighbourhood the field must stay below this
    /// fraction of its maximum modulus.
    pub vanish_tol: f64,
}

impl Default for EvenToaOptions {
    fn default() -> Self {
        Self {
            scheme: DerivativeScheme::FiniteDifference4,
            singular_radius: 0.05,
            vanish_tol: 1e-10,
        }
    }
}

/// `(a(p), b(p))` in
/// `T f = σ3 (−iħ/2) [a (2p f' + f) + b (2f'/p − f/p²)]`, i.e.
/// `a = 1/(2E_p)` and `b = m0²c²/(2E_p) + E_p/(2c²)`.
pub fn even_operator_coefficients(p: f64, k: &PhysConstants) -> (f64, f64) {
    let e = energy(p, k);
    let a = 0.5 / e;
    let b = k.m0 * k.m0 * k.c * k.c / (2.0 * e) + e / (2.0 * k.c * k.c);
    (a, b)
}

pub fn apply_even_toa(f: &SpinorField, k: &PhysConstants) -> Result<SpinorField> {
    apply_even_toa_with(f, k, &EvenToaOptions::default())
}

/// Discretized action of the even TOA operator on a Φ-representation
/// momentum field.
pub fn apply_even_toa_with(
    f: &SpinorField,
    k: &PhysConstants,
    opts: &EvenToaOptions,
) -> Result<SpinorField> {
    k.validate()?;
    if f.representation() != Representation::FeshbachVillarsPhi || f.basis() != Basis::Momentum {
        return Err(Error::Domain(
            "the even TOA operator acts on Φ-representation momentum fields".into(),
        ));
    }
    let p = f.grid();
    let radius = opts.singular_radius * k.compton_momentum();
    let scale = f
        .upper()
        .iter()
        .chain(f.lower())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let mut excluded = vec![false; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        if pi.abs() < radius || pi == 0.0 {
            let m = f.upper()[i].norm().max(f.lower()[i].norm());
            if m > opts.vanish_tol * scale {
                return Err(Error::SingularPoint {
                    p: pi,
                    magnitude: m,
                });
            }
            excluded[i] = true;
        }
    }

    let derivative = |v: &[Complex64]| -> Result<Vec<Complex64>> {
        match opts.scheme {
            DerivativeScheme::FiniteDifference4 => Ok(Stencils::new(p)?.apply(v)),
            DerivativeScheme::Spectral => spectral_derivative(p, v),
        }
    };
    let du = derivative(f.upper())?;
    let dl = derivative(f.lower())?;

    let act = |i: usize, v: Complex64, dv: Complex64| -> Complex64 {
        if excluded[i] {
            return Complex64::new(0.0, 0.0);
        }
        let pi = p[i];
        let (a, b) = even_operator_coefficients(pi, k);
        let inner = (dv * (2.0 * pi) + v) * a + (dv * (2.0 / pi) - v / (pi * pi)) * b;
        inner * Complex64::new(0.0, -0.5 * k.hbar)
    };
    let upper = (0..p.len()).map(|i| act(i, f.upper()[i], du[i])).collect();
    let lower = (0..p.len()).map(|i| -act(i, f.lower()[i], dl[i])).collect();
    f.with_components(upper, lower)
}

/// `H_Φ f = E_p σ3 f`.
pub fn apply_hamiltonian(f: &SpinorField, k: &PhysConstants) -> SpinorField {
    f.map_components(|p, u, l| {
        let e = energy(p, k);
        (u * e, -l * e)
    })
}

/// `‖(HT − TH) f − iħ f‖ / ‖f‖` over the points `margin..len−margin`.
pub fn commutator_residual(
    f: &SpinorField,
    k: &PhysConstants,
    opts: &EvenToaOptions,
    margin: usize,
) -> Result<f64> {
    let ht = apply_hamiltonian(&apply_even_toa_with(f, k, opts)?, k);
    let th = apply_even_toa_with(&apply_hamiltonian(f, k), k, opts)?;
    let target = f.scale(Complex64::new(0.0, k.hbar));
    let diff = ht.sub(&th)?.sub(&target)?;
    relative_interior(&diff, f, margin)
}

/// `‖T f − τ f‖ / ‖f‖` over the points `margin..len−margin`.
pub fn eigen_residual(
    f: &SpinorField,
    tau: f64,
    k: &PhysConstants,
    opts: &EvenToaOptions,
    margin: usize,
) -> Result<f64> {
    let tf = apply_even_toa_with(f, k, opts)?;
    let diff = tf.sub(&f.scale(Complex64::new(tau, 0.0)))?;
    relative_interior(&diff, f, margin)
}

fn relative_interior(diff: &SpinorField, f: &SpinorField, margin: usize) -> Result<f64> {
    let n = f.len();
    if 2 * margin + 2 > n {
        return Err(Error::InvalidGrid(format!(
            "margin {margin} leaves too few of {n} points"
        )));
    }
    let lo = margin;
    let hi = n - margin;
    let denom = f.l2_norm_range(lo, hi);
    if denom == 0.0 {
        return Err(Error::Domain("field vanishes on the interior".into()));
    }
    Ok(diff.l2_norm_range(lo, hi) / denom)
}
