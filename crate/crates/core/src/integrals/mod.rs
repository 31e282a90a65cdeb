//! The group-theoretical engine: raw monomial integrals are reduced to
//! `⟨IJ|IJ_Q⟩` and evaluated as `Σ_c N[c] ξ[c]` over the classes of `S_p`.

mod canonical;
mod counts;
mod spec;
mod xi;

pub use canonical::{canonicalize, Canonical, CanonicalIntegral, Orderliness, ZeroReason};
pub use counts::{class_counts, ClassCounts};
pub use spec::{Factor, IntegralSpec};
pub use xi::{evaluate, evaluate_gtm, primitive_spec, xi};

use crate::symgroup::DEFAULT_DEGREE_CAP;

/// Work limits for evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest degree `p` accepted.
    pub max_degree: usize,
    /// Largest `|G_I|·|G_{J_Q}|` enumerated when no shortcut applies.
    pub max_products: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: DEFAULT_DEGREE_CAP,
            max_products: 400_000_000,
        }
    }
}
