//! Exact arithmetic on polynomials and rational functions in one
//! indeterminate `n` over arbitrary-precision integers.

mod poly;
mod ratfunc;

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
