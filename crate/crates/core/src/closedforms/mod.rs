//! Closed-form families and the double-fan reduction.
//!
//! Everything here is independent of the class-counting engine in
//! [`crate::integrals`] except for the primitive integrals `ξ[c]`, so the two
//! can be used to check each other.

mod diagrams;
mod doublefan;
mod expr;

pub use diagrams::{
    double_fan_spec, fan_spec, opened_spec, partial_fan_spec, sigma_spec, special_double_fan_spec,
    stack_spec, z_spec,
};
pub use doublefan::{
    double_fan_expand, double_fan_value, reduce_opened, reduce_opened_terms, DoubleFanClosed,
    OpenedMonomial,
};
pub use expr::ClosedExpr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::integrals::xi;
use crate::ratfield::RationalFunction;
use crate::reptheory::CHARACTER_TABLE_CAP;
use crate::symgroup::{class_size, partitions_of, Partition};

/// Largest total degree accepted by the closed forms that sum over classes.
pub const CLOSED_FORM_CAP: usize = CHARACTER_TABLE_CAP;

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn check_degree(p: usize) -> Result<()> {
    if p > CLOSED_FORM_CAP {
        return Err(Error::DegreeTooLarge {
            degree: p,
            cap: CLOSED_FORM_CAP,
        });
    }
    Ok(())
}

/// The closed fan `∫|U_{ac}|^{2m} = m! / (n (n+1) ⋯ (n+m-1))`.
pub fn fan_integral(m: u32) -> RationalFunction {
    RationalFunction::factorial_ratio(-1, m as i64 - 1).scale_int(&factorial(m))
}

/// `∫ |U_{ij}|^{2 m1} |U_{il}|^{2 m2} |U_{kl}|^{2 m3}`.
pub fn z_integral(m1: u32, m2: u32, m3: u32) -> RationalFunction {
    let (m1, m2, m3) = (m1 as i64, m2 as i64, m3 as i64);
    let k = factorial(m1 as u32) * factorial(m2 as u32) * factorial(m3 as u32);
    let shape = &(&RationalFunction::factorial_ratio(m1 + m3 - 2, m1 - 2)
        * &RationalFunction::factorial_ratio(-2, m3 - 2))
        * &RationalFunction::factorial_ratio(-1, m1 + m2 + m3 - 1);
    shape.scale_int(&k)
}

/// The stack integral `Ξ(p_1, …, p_t) = ∫ ∏ |U_{r_i c_i}|^{2 p_i}` with distinct
/// rows and columns.
pub fn stack_integral(parts: &[u32]) -> Result<RationalFunction> {
    if parts.contains(&0) {
        return Err(Error::InvalidArgument(
            "stack multiplicities must be positive".into(),
        ));
    }
    check_degree(parts.iter().map(|&x| x as usize).sum())?;
    // every tuple of classes (c_1, …, c_t) with weight c_i = p_i
    let mut tuples: Vec<(BigInt, Partition)> = vec![(BigInt::from(1), Partition::empty())];
    for &p in parts {
        let pf = factorial(p);
        let mut next = Vec::new();
        for (k, joined) in &tuples {
            for c in partitions_of(p as usize) {
                let weight = k * &pf * BigInt::from(class_size(&c));
                next.push((weight, joined.join(&c)));
            }
        }
        tuples = next;
    }
    Ok(RationalFunction::sum(
        tuples.into_iter().map(|(k, c)| xi(&c).scale_int(&k)),
    ))
}

/// The fully opened `[A_a]^α [A_b]^α`: a sum over cycle types `λ ⊢ α`, each
/// contributing `α! · |class λ|` exchange elements of class `2λ` in `S_{2α}`.
pub fn special_double_fan(alpha: u32) -> Result<RationalFunction> {
    check_degree(2 * alpha as usize)?;
    let af = factorial(alpha);
    Ok(RationalFunction::sum(
        partitions_of(alpha as usize).into_iter().map(|lambda| {
            let doubled = Partition::from_parts(lambda.parts().iter().map(|&x| 2 * x).collect());
            let count: BigUint = class_size(&lambda);
            xi(&doubled).scale_int(&(&af * BigInt::from(count)))
        }),
    ))
}

/// `(∏ m_j!) / m! · F(m)`, the partially opened fan with branch multiplicities `m_j`.
pub fn partial_fan_integral(parts: &[u32]) -> RationalFunction {
    let m: u32 = parts.iter().sum();
    let num: BigInt = parts.iter().map(|&x| factorial(x)).product();
    fan_integral(m).scale(&BigRational::new(num, factorial(m)))
}
