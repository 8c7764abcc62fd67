//! Self-contained special-function kernel: log-gamma, digamma, and the
//! Gauss hypergeometric function over the parameter ranges the correlation
//! formulas require. All functions are pure.

mod gamma;
mod hyp2f1;

pub use gamma::{digamma, log_gamma};
pub use hyp2f1::hyp2f1;
pub(crate) use hyp2f1::hyp2f1_with_complement;
