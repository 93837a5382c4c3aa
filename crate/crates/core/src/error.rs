use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid physical constants: {0}")]
    InvalidConstants(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields are sampled on different grids")]
    GridMismatch,

    #[error(
        "field does not vanish near the singular point p = 0 (|f| = {magnitude:e} at p = {p:e})"
    )]
    SingularPoint { p: f64, magnitude: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e} (value {value})")]
    Convergence {
        value: num_complex::Complex64,
        estimate: f64,
        tolerance: f64,
    },

    #[error(
        "overlap at coincident eigenvalues is a delta distribution and has no numerical value"
    )]
    DivergentOverlap,

    #[error("ansatz window cannot support a conjugate operator: {0}")]
    Infeasible(String),

    #[error("classical arrival time is undefined for p0 = 0 (photon time is {t_ph})")]
    UndefinedClassicalTime { t_ph: f64 },

    #[error("state amplitude at the grid edge ({edge:e}) has not decayed below {limit:e}")]
    Truncation { edge: f64, limit: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}
