//! Numerical cross-checks: Haar-random unitaries and Monte-Carlo estimates of
//! monomial integrals at fixed integer `n`.

mod haar;
mod mc;

pub use haar::{sample_haar, Matrix};
pub use mc::{check_suite, mc_estimate, Estimate, McReport, SuiteEntry, CHUNK, DEFAULT_THRESHOLD};
