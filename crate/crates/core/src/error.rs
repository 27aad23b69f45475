//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors surfaced by kernel evaluation, quadrature, and fitting.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation requested exactly on a kernel singularity (x = y, or a
    /// coordinate at the origin where the kernel carries 1/|x|).
    #[error("singular evaluation: {0}")]
    Singular(String),

    /// Evaluation requested at a resolvent pole λ = −iμ.
    #[error("resolvent pole at lambda = {0}")]
    Pole(num_complex::Complex<f64>),

    /// A quadrature failed to reach the requested tolerance within its
    /// subdivision budget, or the integrand is not integrable.
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    /// The requested quantity does not exist for the given parameter
    /// (e.g. eigendata for μ ≥ 0, where L^μ has no eigenvalue).
    #[error("no such spectral data: {0}")]
    NoSuchSpectralData(String),

    /// An input violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A least-squares fit had a degenerate design (too few radii, or
    /// coincident radii).
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
