//! Numerical laboratory for persistence probabilities of Gaussian
//! stationary processes arising as Lamperti transforms of integrated
//! fractional Brownian motion and Riemann-Liouville processes.
//!
//! The crate provides:
//!
//! * exact evaluators for the stationary correlation functions of these
//!   processes, built on a self-contained special-function kernel
//!   ([`specialfn`], [`correlation`]);
//! * exact Gaussian path sampling from any such correlation via circulant
//!   embedding with a Cholesky fallback, plus direct path simulation of
//!   the underlying self-similar processes for cross-validation
//!   ([`sampler`]);
//! * Monte-Carlo persistence-probability estimation and exponent
//!   extraction by weighted regression ([`persistence`]);
//! * a deterministic identity suite over the correlation kernel
//!   ([`checks`]).

pub mod checks;
pub mod correlation;
pub mod error;
pub mod persistence;
pub mod quadrature;
pub mod sampler;
pub mod specialfn;

pub use error::{Error, Result};
