//! Adaptive Gauss–Kronrod quadrature and polynomial extrapolation to zero.

mod extrap;
mod gk;

pub use extrap::{neville_to_zero, Extrapolated};
pub use gk::{
    gk21, integrate, AdaptiveConfig, Integral, Panel, GK21_GAUSS_WEIGHTS, GK21_NODES, GK21_WEIGHTS,
};
