use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use super::canonical::{canonicalize, Canonical, CanonicalIntegral};
use super::counts::class_counts;
use super::spec::{Factor, IntegralSpec};
use super::Limits;
use crate::error::Result;
use crate::ratfield::RationalFunction;
use crate::reptheory::{character, dim_sp, dim_un};
use crate::symgroup::{partitions_of, Partition};

fn cache() -> &'static RwLock<HashMap<Partition, RationalFunction>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, RationalFunction>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The primitive integral `ξ[c] = Σ_f d_f² χ_f(c) / ((p!)² d̃_f)`.
pub fn xi(c: &Partition) -> RationalFunction {
    if let Some(v) = cache().read().unwrap().get(c) {
        return v.clone();
    }
    let p = c.weight();
    let fact: BigInt = (1..=p).map(BigInt::from).product();
    let terms = partitions_of(p).into_iter().map(|f| {
        let d = BigInt::from(dim_sp(&f));
        let chi = character(&f, c).expect("same weight");
        let weight = &d * &d * chi;
        dim_un(&f)
            .recip()
            .expect("dimension polynomial is nonzero")
            .scale_int(&weight)
    });
    let value = RationalFunction::sum(terms)
        .scale(&num_rational::BigRational::new(1.into(), &fact * &fact));
    cache().write().unwrap().insert(c.clone(), value.clone());
    value
}

/// `Σ_c N[c] ξ[c]`.
pub fn evaluate_gtm(ci: &CanonicalIntegral, limits: &Limits) -> Result<RationalFunction> {
    let counts = class_counts(ci, limits)?;
    Ok(RationalFunction::sum(
        counts
            .nonzero()
            .map(|(c, k)| xi(c).scale_int(&BigInt::from(k))),
    ))
}

/// Canonicalizes and evaluates; vanishing integrals give zero.
pub fn evaluate(spec: &IntegralSpec, limits: &Limits) -> Result<RationalFunction> {
    match canonicalize(spec, limits)? {
        Canonical::Zero(_) => Ok(RationalFunction::zero()),
        Canonical::Integral(ci) => evaluate_gtm(&ci, limits),
    }
}

/// The primitive integral of class `c` as a raw spec: all row and column labels
/// distinct, with the plain columns exchanged by a representative of `c`.
pub fn primitive_spec(c: &Partition) -> IntegralSpec {
    let q = c.representative();
    let p = c.weight();
    let conj = (1..=p).map(|a| Factor::new(a, a, 1)).collect();
    let plain = (1..=p)
        .map(|a| Factor::new(a, q.apply(a - 1) + 1, 1))
        .collect();
    IntegralSpec::new(conj, plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rf(k: i64, roots: &[(i64, i32)]) -> RationalFunction {
        RationalFunction::from_factored(&BigRational::from_integer(k.into()), roots)
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(&part("1")), rf(1, &[(0, -1)]));
        assert_eq!(
            xi(&part("3")),
            rf(2, &[(0, -1), (1, -1), (-1, -1), (2, -1), (-2, -1)])
        );
        assert_eq!(
            xi(&part("4")),
            rf(
                -5,
                &[
                    (0, -1),
                    (1, -1),
                    (-1, -1),
                    (2, -1),
                    (-2, -1),
                    (3, -1),
                    (-3, -1)
                ]
            )
        );
        assert_eq!(xi(&Partition::empty()), RationalFunction::one());
    }

    #[test]
    fn worked_values() {
        let limits = Limits::default();
        let eval = |s: &str| evaluate(&s.parse().unwrap(), &limits).unwrap();
        assert_eq!(
            eval("conj: 1,1; 2,2; plain: 1,2; 2,1"),
            rf(-1, &[(0, -1), (1, -1), (-1, -1)])
        );
        assert_eq!(
            eval("conj: b,d; b,c; a,c; plain: b,d; b,c; a,c"),
            rf(1, &[(1, -1), (-1, -1), (2, -1)])
        );
        assert_eq!(
            eval("conj: b,e; b,d; a,d; a,c; plain: b,e; b,d; a,d; a,c"),
            rf(1, &[(1, 1), (-1, -1), (0, -2), (2, -1), (3, -1)])
        );
        assert!(eval("conj: 1,1; plain: 1,2").is_zero());
    }

    #[test]
    fn primitive_spec_reproduces_xi() {
        let limits = Limits::default();
        for p in 1..=4 {
            for c in partitions_of(p) {
                assert_eq!(
                    evaluate(&primitive_spec(&c), &limits).unwrap(),
                    xi(&c),
                    "{c:?}"
                );
            }
        }
    }
}
