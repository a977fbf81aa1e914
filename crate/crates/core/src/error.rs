use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("argument outside the domain of {function}: {value}")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{function} did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence {
        function: &'static str,
        residual: f64,
        iterations: usize,
    },

    #[error(
        "quadrature did not reach tolerance after {subdivisions} subdivisions \
         (best value {value:e}, error estimate {error_estimate:e})"
    )]
    Quadrature {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("no interior minimum of the energy curve in R ∈ [{r_lo}, {r_hi}] a.u.")]
    NoBracket { r_lo: f64, r_hi: f64 },

    #[error("dissociation plateau not reached: {0}")]
    PlateauNotReached(String),

    #[error("non-monotone stability classification over Z: {0}")]
    NonMonotone(String),

    #[error("no bound state on the finite-difference grid (lowest eigenvalue {0:e})")]
    NoBoundState(f64),
}
