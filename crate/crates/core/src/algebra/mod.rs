//! Exact operator algebra over the Pauli matrices and the Bender–Dunne basis
//! `T_{m,n}`, the Weyl-ordered quantizations of `p^m q^n`.
//!
//! All arithmetic is in complex rationals, so commutator identities hold with
//! zero residual rather than to a tolerance.

mod ansatz;
mod bender_dunne;
mod pauli;
mod scalar;
pub mod words;

pub use ansatz::{solve_conjugate_ansatz, solve_conjugate_ansatz_in, AnsatzWindow};
pub use bender_dunne::{
    commutator_with_h, minimal_toa_operator, p2_left, p2_right, BDOperator, BDTerm, ExactConstants,
};
pub use pauli::{pauli_mul, PauliCoeff};
pub use scalar::{format_scalar, rational, Scalar};
