//! Time-of-arrival distributions for one-particle states, with the Gaussian
//! wavepacket as the worked example and the classical and photon arrival
//! times as references.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{energy, ChargeSign, PhysConstants};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::SpinorField;
use crate::grid;
use crate::spectral::{eigen_amplitude, sgn, EigenSpec, Parity};

/// Edge intensity allowed relative to the peak intensity of a state.
pub const EDGE_DECAY: f64 = 1e-12;

pub const DEFAULT_GRID_POINTS: usize = 4097;
pub const DEFAULT_TAU_POINTS: usize = 2001;

/// `φ̄(p) = (m0c sqrt(π/2))^{−1/2} exp(−(p−p0)²/(m0c)² − i x0 p/ħ)`, a
/// minimum-uncertainty packet with `Δp = m0c/2` and `Δx = ħ/(m0c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    pub p0: f64,
    pub x0: f64,
    pub k: PhysConstants,
    grid: Vec<f64>,
    samples: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub norm: f64,
    pub mean_p: f64,
    pub mean_x: f64,
    pub delta_p: f64,
    pub delta_x: f64,
}

/// The Gaussian on the standard grid: uniform, centred at `p0`, half-width
/// `4 m0c` (eight momentum spreads), 4097 points, shifted by half a step when
/// a node would fall on `p = 0`.
pub fn gaussian_state(p0: f64, x0: f64, k: &PhysConstants) -> Result<GaussianState> {
    GaussianState::on_grid(p0, x0, k, standard_grid(p0, k, DEFAULT_GRID_POINTS)?)
}

pub fn standard_grid(p0: f64, k: &PhysConstants, points: usize) -> Result<Vec<f64>> {
    grid::straddling_uniform(p0, 4.0 * k.compton_momentum(), points)
}

impl GaussianState {
    pub fn on_grid(p0: f64, x0: f64, k: &PhysConstants, grid: Vec<f64>) -> Result<Self> {
        k.validate()?;
        if !(p0.is_finite() && x0.is_finite()) {
            return Err(Error::Domain(format!(
                "p0 and x0 must be finite (got {p0}, {x0})"
            )));
        }
        grid::validate(&grid)?;
        let mut s = Self {
            p0,
            x0,
            k: *k,
            grid,
            samples: Vec::new(),
        };
        s.samples = s.grid.iter().map(|&p| s.amplitude(p)).collect();
        Ok(s)
    }

    pub fn amplitude(&self, p: f64) -> Complex64 {
        let mc = self.k.compton_momentum();
        let norm = (mc * (PI / 2.0).sqrt()).powf(-0.5);
        let u = (p - self.p0) / mc;
        Complex64::from_polar(norm * (-u * u).exp(), -self.x0 * p / self.k.hbar)
    }

    pub fn derivative(&self, p: f64) -> Complex64 {
        let mc = self.k.compton_momentum();
        let slope = Complex64::new(-2.0 * (p - self.p0) / (mc * mc), -self.x0 / self.k.hbar);
        slope * self.amplitude(p)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `(Θ(λ), Θ(−λ)) φ̄` as a Φ-representation momentum field.
    pub fn field(&self, lambda: ChargeSign) -> Result<SpinorField> {
        let zero = Complex64::new(0.0, 0.0);
        let (upper, lower) = self
            .samples
            .iter()
            .map(|&v| match lambda {
                ChargeSign::Positive => (v, zero),
                ChargeSign::Negative => (zero, v),
            })
            .unzip();
        SpinorField::new(
            crate::field::Representation::FeshbachVillarsPhi,
            crate::field::Basis::Momentum,
            self.grid.clone(),
            upper,
            lower,
        )
    }

    /// Moments by trapezoidal quadrature on the sample grid, with
    /// `x = iħ ∂/∂p` applied to the analytic derivative.
    pub fn moments(&self) -> Moments {
        let g = &self.grid;
        let dens: Vec<f64> = self.samples.iter().map(|v| v.norm_sqr()).collect();
        let norm = grid::trapezoid(g, &dens);
        let p1: Vec<f64> = g.iter().zip(&dens).map(|(p, d)| p * d).collect();
        let p2: Vec<f64> = g.iter().zip(&dens).map(|(p, d)| p * p * d).collect();
        let deriv: Vec<Complex64> = g.iter().map(|&p| self.derivative(p)).collect();
        let x1: Vec<Complex64> = self
            .samples
            .iter()
            .zip(&deriv)
            .map(|(v, d)| v.conj() * d * Complex64::new(0.0, self.k.hbar))
            .collect();
        let x2: Vec<f64> = deriv
            .iter()
            .map(|d| d.norm_sqr() * self.k.hbar * self.k.hbar)
            .collect();
        let mean_p = grid::trapezoid(g, &p1) / norm;
        let mean_x = grid::trapezoid_complex(g, &x1).re / norm;
        let var_p = grid::trapezoid(g, &p2) / norm - mean_p * mean_p;
        let var_x = grid::trapezoid(g, &x2) / norm - mean_x * mean_x;
        Moments {
            norm,
            mean_p,
            mean_x,
            delta_p: var_p.max(0.0).sqrt(),
            delta_x: var_x.max(0.0).sqrt(),
        }
    }
}

fn charge_component(state: &SpinorField, lambda: ChargeSign) -> &[Complex64] {
    match lambda {
        ChargeSign::Positive => state.upper(),
        ChargeSign::Negative => state.lower(),
    }
}

fn check_decay(component: &[Complex64]) -> Result<()> {
    let peak = component.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    let edge = component[0]
        .norm_sqr()
        .max(component[component.len() - 1].norm_sqr());
    if edge > EDGE_DECAY * peak {
        return Err(Error::Truncation {
            edge: edge / peak,
            limit: EDGE_DECAY,
        });
    }
    Ok(())
}

/// `∫ φ̄*(p) φ_τ(p) dp` by the trapezoidal rule on the state's grid, where
/// `φ̄` is the component of `state` with the eigenfunction's charge sign. A
/// state with no such component gives exactly zero.
pub fn toa_overlap(state: &SpinorField, spec: &EigenSpec, k: &PhysConstants) -> Result<Complex64> {
    let comp = charge_component(state, spec.lambda);
    if comp.iter().all(|v| v.norm_sqr() == 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    check_decay(comp)?;
    let values: Vec<Complex64> = state
        .grid()
        .iter()
        .zip(comp)
        .map(|(&p, v)| v.conj() * eigen_amplitude(spec, 0.0, p, k))
        .collect();
    Ok(grid::trapezoid_complex(state.grid(), &values))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateDescriptor {
    pub p0: f64,
    pub x0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToaDistribution {
    pub tau: Vec<f64>,
    pub pi_total: Vec<f64>,
    pub pi_nonnodal: Vec<f64>,
    pub pi_nodal: Vec<f64>,
    pub lambda: ChargeSign,
    pub state: Option<StateDescriptor>,
    pub momentum_points: usize,
}

impl ToaDistribution {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Trapezoidal `∫ Π dτ` over the sampled window. Not normalized.
    pub fn total_probability(&self) -> f64 {
        if self.len() < 2 {
            return 0.0;
        }
        grid::trapezoid(&self.tau, &self.pi_total)
    }

    /// Trapezoidal mass of `Π` on `τ < t` within the window.
    pub fn mass_below(&self, t: f64) -> f64 {
        let mut mass = 0.0;
        for i in 0..self.len().saturating_sub(1) {
            let (a, b) = (self.tau[i], self.tau[i + 1]);
            if a >= t {
                break;
            }
            let (ya, yb) = (self.pi_total[i], self.pi_total[i + 1]);
            if b <= t {
                mass += 0.5 * (b - a) * (ya + yb);
            } else {
                let yt = ya + (yb - ya) * (t - a) / (b - a);
                mass += 0.5 * (t - a) * (ya + yt);
            }
        }
        mass
    }

    /// τ at which the trapezoidal CDF, normalized to the window's total,
    /// reaches `fraction`.
    pub fn quantile(&self, fraction: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::Domain(format!(
                "quantile fraction {fraction} outside [0, 1]"
            )));
        }
        let total = self.total_probability();
        if !(total > 0.0) {
            return Err(Error::Domain(
                "distribution has no mass on its window".into(),
            ));
        }
        let target = fraction * total;
        let mut acc = 0.0;
        for i in 0..self.len() - 1 {
            let (a, b) = (self.tau[i], self.tau[i + 1]);
            let (ya, yb) = (self.pi_total[i], self.pi_total[i + 1]);
            let seg = 0.5 * (b - a) * (ya + yb);
            if acc + seg >= target && seg > 0.0 {
                // invert the quadratic CDF of the linear interpolant on [a, b]
                let need = target - acc;
                let h = b - a;
                let slope = (yb - ya) / h;
                let s = if slope.abs() < 1e-300 {
                    need / ya
                } else {
                    (-ya + (ya * ya + 2.0 * slope * need).max(0.0).sqrt()) / slope
                };
                return Ok(a + s.clamp(0.0, h));
            }
            acc += seg;
        }
        Ok(self.tau[self.len() - 1])
    }

    pub fn interquartile_range(&self) -> Result<f64> {
        Ok(self.quantile(0.75)? - self.quantile(0.25)?)
    }

    pub fn peak_height(&self) -> f64 {
        self.pi_total.iter().copied().fold(0.0, f64::max)
    }
}

pub fn toa_distribution(
    state: &GaussianState,
    lambda: ChargeSign,
    tau_range: (f64, f64),
    n_tau: usize,
) -> Result<ToaDistribution> {
    toa_distribution_with(state, lambda, tau_range, n_tau, Execution::default())
}

pub fn toa_distribution_with(
    state: &GaussianState,
    lambda: ChargeSign,
    tau_range: (f64, f64),
    n_tau: usize,
    exec: Execution,
) -> Result<ToaDistribution> {
    if n_tau < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 tau samples, got {n_tau}"
        )));
    }
    let taus = grid::uniform(tau_range.0, tau_range.1, n_tau)?;
    let mut d = toa_distribution_on(&state.field(lambda)?, lambda, &taus, &state.k, exec)?;
    d.state = Some(StateDescriptor {
        p0: state.p0,
        x0: state.x0,
    });
    Ok(d)
}

/// `Π^{(n)}(τ) = |∫ φ̄* φ_τ^{(n)} dp|²` on explicit τ samples for any
/// sampled state.
pub fn toa_distribution_on(
    state: &SpinorField,
    lambda: ChargeSign,
    taus: &[f64],
    k: &PhysConstants,
    exec: Execution,
) -> Result<ToaDistribution> {
    k.validate()?;
    if taus.is_empty() || taus.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid(
            "tau samples must be finite and nonempty".into(),
        ));
    }
    let comp = charge_component(state, lambda);
    let empty = comp.iter().all(|v| v.norm_sqr() == 0.0);
    if !empty {
        check_decay(comp)?;
    }
    let p = state.grid();
    let w = grid::trapezoid_weights(p);
    let norm = (k.c / (4.0 * PI * k.hbar)).sqrt();
    let energies: Vec<f64> = p.iter().map(|&x| energy(x, k)).collect();
    let weighted: Vec<Complex64> = (0..p.len())
        .map(|i| comp[i].conj() * (w[i] * norm * (p[i].abs() * k.c / energies[i]).sqrt()))
        .collect();
    let signs: Vec<f64> = p.iter().map(|&x| sgn(x)).collect();
    let lam = lambda.value();
    let pairs = exec.map(taus.len(), |j| {
        if empty {
            return (0.0, 0.0);
        }
        let mut even = Complex64::new(0.0, 0.0);
        let mut odd = Complex64::new(0.0, 0.0);
        for i in 0..p.len() {
            let v = weighted[i] * Complex64::from_polar(1.0, lam * taus[j] * energies[i] / k.hbar);
            even += v;
            odd += v * signs[i];
        }
        (even.norm_sqr(), odd.norm_sqr())
    });
    let (pi_nonnodal, pi_nodal): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let pi_total = pi_nonnodal
        .iter()
        .zip(&pi_nodal)
        .map(|(a, b)| a + b)
        .collect();
    Ok(ToaDistribution {
        tau: taus.to_vec(),
        pi_total,
        pi_nonnodal,
        pi_nodal,
        lambda,
        state: None,
        momentum_points: p.len(),
    })
}

/// Photon arrival time at the origin, `−x0/c`.
pub fn photon_time(x0: f64, k: &PhysConstants) -> f64 {
    -x0 / k.c
}

/// `(t_class, t_ph)` with `t_class = −x0 sqrt(p0² + m0²c²)/(p0 c)`.
pub fn classical_references(p0: f64, x0: f64, k: &PhysConstants) -> Result<(f64, f64)> {
    let t_ph = photon_time(x0, k);
    if p0 == 0.0 {
        return Err(Error::UndefinedClassicalTime { t_ph });
    }
    let t_class = -x0 * p0.hypot(k.compton_momentum()) / (p0 * k.c);
    Ok((t_class, t_ph))
}

/// Window `[t_ph − 5, t_class + 5 (t_class − t_ph) + 10]` (in units of
/// `ħ/m0c²`) for a packet heading to the origin; otherwise a symmetric
/// window about zero.
pub fn default_tau_range(p0: f64, x0: f64, k: &PhysConstants) -> (f64, f64) {
    let unit = k.compton_time();
    match classical_references(p0, x0, k) {
        Ok((t_class, t_ph)) if t_class > 0.0 && t_ph >= 0.0 => (
            t_ph - 5.0 * unit,
            t_class + 5.0 * (t_class - t_ph) + 10.0 * unit,
        ),
        Ok((t_class, _)) => {
            let r = (10.0 * t_class.abs()).max(20.0 * unit);
            (-r, r)
        }
        Err(Error::UndefinedClassicalTime { t_ph }) => {
            let r = (10.0 * t_ph.abs()).max(20.0 * unit);
            (-r, r)
        }
        Err(_) => (-20.0 * unit, 20.0 * unit),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MostProbable {
    pub tau: f64,
    /// The sampled maximum sits on the first or last τ: widen the window.
    pub at_boundary: bool,
}

/// Grid argmax of `Π`, refined by a parabola through the neighbouring
/// samples.
pub fn most_probable_tau(d: &ToaDistribution) -> Result<MostProbable> {
    if d.is_empty() {
        return Err(Error::Domain("empty distribution".into()));
    }
    let y = &d.pi_total;
    let mut best = 0;
    for (i, v) in y.iter().enumerate() {
        if *v > y[best] {
            best = i;
        }
    }
    if d.len() == 1 {
        return Ok(MostProbable {
            tau: d.tau[0],
            at_boundary: false,
        });
    }
    if best == 0 || best == d.len() - 1 {
        return Ok(MostProbable {
            tau: d.tau[best],
            at_boundary: true,
        });
    }
    let tau = grid::parabolic_vertex(
        [d.tau[best - 1], d.tau[best], d.tau[best + 1]],
        [y[best - 1], y[best], y[best + 1]],
    );
    Ok(MostProbable {
        tau,
        at_boundary: false,
    })
}

/// The per-branch contribution to `Π`.
pub fn branch_values(d: &ToaDistribution, branch: Parity) -> &[f64] {
    match branch {
        Parity::Nonnodal => &d.pi_nonnodal,
        Parity::Nodal => &d.pi_nodal,
    }
}
