//! Exact monomial integrals over the unitary group U(n) with Haar measure.
//!
//! Every integral `∫ dU  U*_{i1 j1} … U*_{ip jp} U_{k1 l1} … U_{kq lq}` is
//! returned as an exact rational function of the symbolic dimension `n`.
//!
//! The crate is layered bottom-up:
//!
//! * [`ratfield`]: integer polynomials and rational functions in `n`.
//! * [`symgroup`]: permutations, partitions, cycle types and Young subgroups.
//! * [`reptheory`]: characters of `S_p` (Murnaghan–Nakayama) and `U(n)` dimensions.
//! * [`integrals`]: the group-theoretical engine `Σ_c N[c] ξ[c]`.
//! * [`closedforms`]: fan, Z, stack and double-fan closed forms and the
//!   reduction of opened double-fans.
//! * [`verify`]: Haar sampling and Monte-Carlo estimates for cross-checking.

pub mod closedforms;
pub mod error;
pub mod integrals;
pub mod ratfield;
pub mod reptheory;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};
pub use integrals::{Canonical, CanonicalIntegral, IntegralSpec, Limits};
pub use ratfield::{Polynomial, RationalFunction};
pub use symgroup::{Partition, Permutation};
