//! Two-component fields of the one-particle Klein-Gordon theory.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    /// `Ψ = (φ, χ)`: the Schrödinger-like form of the Klein-Gordon equation.
    SchrodingerPsi,
    /// `Φ = UΨ = (φ₊, φ₋)`: the Feshbach-Villars form with diagonal Hamiltonian.
    FeshbachVillarsPhi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Momentum,
    Position,
}

/// A two-component complex field sampled on an explicit, strictly increasing
/// grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    representation: Representation,
    basis: Basis,
    grid: Vec<f64>,
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

impl SpinorField {
    pub fn new(
        representation: Representation,
        basis: Basis,
        grid: Vec<f64>,
        upper: Vec<Complex64>,
        lower: Vec<Complex64>,
    ) -> Result<Self> {
        grid::validate(&grid)?;
        if upper.len() != grid.len() || lower.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "component lengths ({}, {}) do not match grid length {}",
                upper.len(),
                lower.len(),
                grid.len()
            )));
        }
        Ok(Self {
            representation,
            basis,
            grid,
            upper,
            lower,
        })
    }

    /// Φ-representation momentum field built from a sampler returning
    /// `(upper, lower)` at each grid point.
    pub fn phi_momentum<F>(grid: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> (Complex64, Complex64),
    {
        let (upper, lower) = grid.iter().map(|&p| f(p)).unzip();
        Self::new(
            Representation::FeshbachVillarsPhi,
            Basis::Momentum,
            grid,
            upper,
            lower,
        )
    }

    pub fn zeros_like(other: &SpinorField) -> Self {
        let n = other.len();
        Self {
            representation: other.representation,
            basis: other.basis,
            grid: other.grid.clone(),
            upper: vec![Complex64::new(0.0, 0.0); n],
            lower: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Same grid and tags, new component values.
    pub fn with_components(&self, upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        Self::new(
            self.representation,
            self.basis,
            self.grid.clone(),
            upper,
            lower,
        )
    }

    pub fn map_components<F>(&self, f: F) -> Self
    where
        F: Fn(f64, Complex64, Complex64) -> (Complex64, Complex64),
    {
        let (upper, lower) = self
            .grid
            .iter()
            .zip(self.upper.iter().zip(&self.lower))
            .map(|(&p, (&u, &l))| f(p, u, l))
            .unzip();
        Self {
            representation: self.representation,
            basis: self.basis,
            grid: self.grid.clone(),
            upper,
            lower,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_components(|_, u, l| (u * s, l * s))
    }

    pub fn sub(&self, other: &SpinorField) -> Result<Self> {
        self.check_compatible(other)?;
        let upper = self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| a - b)
            .collect();
        let lower = self
            .lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| a - b)
            .collect();
        self.with_components(upper, lower)
    }

    /// Positive-definite L² norm `sqrt(∫ |upper|² + |lower|² dp)`.
    pub fn l2_norm(&self) -> f64 {
        let dens: Vec<f64> = self
            .upper
            .iter()
            .zip(&self.lower)
            .map(|(u, l)| u.norm_sqr() + l.norm_sqr())
            .collect();
        grid::trapezoid(&self.grid, &dens).sqrt()
    }

    /// L² norm restricted to the index range `lo..hi`.
    pub fn l2_norm_range(&self, lo: usize, hi: usize) -> f64 {
        let dens: Vec<f64> = (lo..hi)
            .map(|i| self.upper[i].norm_sqr() + self.lower[i].norm_sqr())
            .collect();
        grid::trapezoid(&self.grid[lo..hi], &dens).sqrt()
    }

    fn check_compatible(&self, other: &SpinorField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.representation != other.representation || self.basis != other.basis {
            return Err(Error::Domain(
                "fields carry different representation or basis tags".into(),
            ));
        }
        Ok(())
    }
}

/// `⟨a|b⟩_Φ = ∫ a† σ₃ b dp`, the indefinite inner product of the
/// Feshbach-Villars representation, by the trapezoidal rule on the shared grid.
pub fn inner_product_phi(a: &SpinorField, b: &SpinorField) -> Result<Complex64> {
    a.check_compatible(b)?;
    let integrand: Vec<Complex64> = a
        .upper
        .iter()
        .zip(&a.lower)
        .zip(b.upper.iter().zip(&b.lower))
        .map(|((au, al), (bu, bl))| au.conj() * bu - al.conj() * bl)
        .collect();
    Ok(grid::trapezoid_complex(&a.grid, &integrand))
}

/// Charge density in units of the elementary charge: `|upper|² - |lower|²`.
pub fn charge_density(f: &SpinorField) -> Vec<f64> {
    f.upper
        .iter()
        .zip(&f.lower)
        .map(|(u, l)| u.norm_sqr() - l.norm_sqr())
        .collect()
}
