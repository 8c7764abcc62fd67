//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series failed to meet its tolerance within the iteration cap.
    #[error("series did not converge after {terms} terms (last term {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    /// A sampling grid exceeds the hard limit on points.
    #[error("grid too large: {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: usize, limit: usize },

    /// Neither circulant embedding nor jittered Cholesky produced a usable factorization.
    #[error("covariance factorization failed: {0}")]
    Factorization(String),

    /// A time grid does not cover the interval a transform needs.
    #[error("t-grid [{have_lo}, {have_hi}] does not cover required [{need_lo}, {need_hi}]")]
    Coverage {
        have_lo: f64,
        have_hi: f64,
        need_lo: f64,
        need_hi: f64,
    },

    /// A fit or estimate was requested with too little usable data.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The Monte-Carlo budget cannot resolve the requested quantity.
    #[error("budget infeasible: {0}")]
    BudgetInfeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
