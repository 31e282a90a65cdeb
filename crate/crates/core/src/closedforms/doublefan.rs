use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{factorial, special_double_fan};
use crate::error::{Error, Result};
use crate::ratfield::RationalFunction;

/// One branch of a double-fan: `m_a` solid and `n_a` dotted lines from L-dot
/// `a`, `m_b` and `n_b` from L-dot `b`, all landing on one R-dot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DoubleFanClosed {
    pub m_a: u32,
    pub n_a: u32,
    pub m_b: u32,
    pub n_b: u32,
}

impl DoubleFanClosed {
    pub fn new(m_a: u32, n_a: u32, m_b: u32, n_b: u32) -> Result<Self> {
        if m_a + m_b != n_a + n_b {
            return Err(Error::InvalidClosedGraph { m_a, n_a, m_b, n_b });
        }
        Ok(DoubleFanClosed { m_a, n_a, m_b, n_b })
    }

    /// The branch `[α_a A_a + α_b A_b + β_a B_a + β_b B_b]`.
    pub fn from_patterns(mono: OpenedMonomial) -> Self {
        DoubleFanClosed {
            m_a: mono.alpha_a + mono.beta_a,
            n_a: mono.alpha_b + mono.beta_a,
            m_b: mono.alpha_b + mono.beta_b,
            n_b: mono.alpha_a + mono.beta_b,
        }
    }

    /// Number of solid/dotted line pairs.
    pub fn pairs(&self) -> u32 {
        self.m_a + self.m_b
    }
}

/// `[A_a]^{α_a} [A_b]^{α_b} [B_a]^{β_a} [B_b]^{β_b}`, one R-dot per pattern.
///
/// `[A_a] = U*_{ac} U_{bc}`, `[A_b] = U*_{bc} U_{ac}`, `[B_a] = |U_{ac}|²`,
/// `[B_b] = |U_{bc}|²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OpenedMonomial {
    pub alpha_a: u32,
    pub alpha_b: u32,
    pub beta_a: u32,
    pub beta_b: u32,
}

impl OpenedMonomial {
    pub fn new(alpha_a: u32, alpha_b: u32, beta_a: u32, beta_b: u32) -> Self {
        OpenedMonomial {
            alpha_a,
            alpha_b,
            beta_a,
            beta_b,
        }
    }

    pub fn degree(&self) -> u32 {
        self.alpha_a + self.alpha_b + self.beta_a + self.beta_b
    }
}

impl Add for OpenedMonomial {
    type Output = OpenedMonomial;

    fn add(self, o: OpenedMonomial) -> OpenedMonomial {
        OpenedMonomial::new(
            self.alpha_a + o.alpha_a,
            self.alpha_b + o.alpha_b,
            self.beta_a + o.beta_a,
            self.beta_b + o.beta_b,
        )
    }
}

impl fmt::Display for OpenedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (name, e) in [
            ("A_a", self.alpha_a),
            ("A_b", self.alpha_b),
            ("B_a", self.beta_a),
            ("B_b", self.beta_b),
        ] {
            match e {
                0 => {}
                1 => out.push_str(&format!("[{name}]")),
                _ => out.push_str(&format!("[{name}]^{e}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        write!(f, "{out}")
    }
}

/// Opens a closed branch into fully opened monomials with their multiplicities.
///
/// The solutions are indexed by `t = β_a`; the remaining counts follow from
/// the line totals, and each carries `m_a! n_a! m_b! n_b! / (α_a! α_b! β_a! β_b!)`.
pub fn double_fan_expand(closed: &DoubleFanClosed) -> Result<Vec<(BigInt, OpenedMonomial)>> {
    let DoubleFanClosed { m_a, n_a, m_b, n_b } = *closed;
    if m_a + m_b != n_a + n_b {
        return Err(Error::InvalidClosedGraph { m_a, n_a, m_b, n_b });
    }
    let top = factorial(m_a) * factorial(n_a) * factorial(m_b) * factorial(n_b);
    let lo = n_a.saturating_sub(m_b);
    let hi = m_a.min(n_a);
    Ok((lo..=hi)
        .map(|t| {
            let mono = OpenedMonomial::new(m_a - t, n_a - t, t, m_b + t - n_a);
            let den = factorial(mono.alpha_a)
                * factorial(mono.alpha_b)
                * factorial(mono.beta_a)
                * factorial(mono.beta_b);
            (&top / den, mono)
        })
        .collect())
}

/// The expansion of an opened monomial in terms of `[A_a]^k [A_b]^k`: pairs of
/// coefficient and `k`. Empty when `α_a ≠ α_b` (the integral vanishes).
pub fn reduce_opened_terms(mono: &OpenedMonomial) -> Vec<(RationalFunction, u32)> {
    if mono.alpha_a != mono.alpha_b {
        return Vec::new();
    }
    let alpha = mono.alpha_a as i64;
    let (ba, bb) = if mono.beta_b <= mono.beta_a {
        (mono.beta_a, mono.beta_b)
    } else {
        (mono.beta_b, mono.beta_a)
    };
    (0..=bb)
        .map(|e| {
            let ei = e as i64;
            let mut k = factorial(e)
                * binomial(BigInt::from(ba), BigInt::from(e))
                * binomial(BigInt::from(bb), BigInt::from(e));
            if e % 2 == 1 {
                k = -k;
            }
            let linear = RationalFunction::from_factored(
                &BigInt::one().into(),
                &[(2 * alpha - 1 + 2 * ei, 1)],
            );
            let ratio = &RationalFunction::factorial_ratio(
                2 * alpha - 2 + ei,
                2 * alpha + ba as i64 - 1 + ei,
            ) * &RationalFunction::factorial_ratio(
                2 * alpha - 1 + 2 * ei,
                2 * alpha + bb as i64 - 1 + ei,
            );
            ((&linear * &ratio).scale_int(&k), mono.alpha_a + e)
        })
        .collect()
}

/// Value of a fully opened monomial, reduced to special double-fans.
pub fn reduce_opened(mono: &OpenedMonomial) -> Result<RationalFunction> {
    let mut total = RationalFunction::zero();
    for (coeff, k) in reduce_opened_terms(mono) {
        let base = if k == 0 {
            RationalFunction::one()
        } else {
            special_double_fan(k)?
        };
        total = &total + &(&coeff * &base);
    }
    Ok(total)
}

/// Value of a partially opened double-fan given as its closed branches.
pub fn double_fan_value(branches: &[DoubleFanClosed]) -> Result<RationalFunction> {
    let mut product: BTreeMap<OpenedMonomial, BigInt> = BTreeMap::new();
    product.insert(OpenedMonomial::default(), BigInt::one());
    for branch in branches {
        let terms = double_fan_expand(branch)?;
        let mut next: BTreeMap<OpenedMonomial, BigInt> = BTreeMap::new();
        for (mono, k) in &product {
            for (v, t) in &terms {
                *next.entry(*mono + *t).or_insert_with(BigInt::zero) += k * v;
            }
        }
        product = next;
    }
    let mut values = Vec::with_capacity(product.len());
    for (mono, k) in product {
        values.push(reduce_opened(&mono)?.scale_int(&k));
    }
    Ok(RationalFunction::sum(values))
}
