//! Time-of-arrival operator for a free, charged, spin-0 relativistic particle
//! in one spatial dimension.
//!
//! The crate is organized around the pieces of the construction:
//!
//! * [`constants`], [`field`], [`grid`]: units, the relativistic dispersion and
//!   two-component fields sampled on explicit grids.
//! * [`algebra`]: exact Pauli / Bender-Dunne operator algebra used to solve the
//!   canonical commutation relation for the minimal time operator.
//! * [`spectral`]: eigenfunctions of the one-particle (even) operator in the
//!   Feshbach-Villars momentum representation and their identities.
//! * [`dynamics`]: regularized position-space evolution of the eigenfunctions.
//! * [`toa`]: arrival-time distributions of Gaussian initial states.
//! * [`quad`]: adaptive Gauss-Kronrod quadrature and extrapolation.
//! * [`exec`]: data-parallel evaluation with a sequential fallback.

pub mod algebra;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod field;
pub mod grid;
pub mod quad;
pub mod spectral;
pub mod toa;

pub use constants::{energy, ChargeSign, PhysConstants};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{charge_density, inner_product_phi, Basis, Representation, SpinorField};
