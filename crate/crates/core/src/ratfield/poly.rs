use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `n` with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `n^k`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `n + a`.
    pub fn linear(a: i64) -> Self {
        Self::new(vec![BigInt::from(a), BigInt::one()])
    }

    /// The monomial `n^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides every coefficient by `k`; the caller guarantees divisibility.
    pub(crate) fn div_scalar_exact(&self, k: &BigInt) -> Polynomial {
        debug_assert!(!k.is_zero());
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        }
    }

    fn shifted_scaled(&self, shift: usize, k: &BigInt) -> Polynomial {
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|c| c * k));
        Polynomial::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^k · self` for a suitable `k`, computed without fractions.
    pub fn pseudo_rem(&self, divisor: &Polynomial) -> Polynomial {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(&lc) - &divisor.shifted_scaled(dr - dd, &lr);
        }
        r
    }

    /// Exact quotient in `Z[n]`, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.clone();
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                return None;
            }
            let (q, r) = rem.leading().unwrap().div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &divisor.shifted_scaled(dr - dd, &q);
            quot[dr - dd] = q;
        }
        Some(Polynomial::new(quot))
    }

    /// Primitive gcd with positive leading coefficient (content is ignored).
    /// `gcd(0, 0)` is zero.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        let (mut u, mut v) = (a.primitive_part(), b.primitive_part());
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_zero() {
            if v.is_constant() {
                return Polynomial::one();
            }
            let r = u.pseudo_rem(&v);
            u = v;
            v = r.primitive_part();
        }
        u
    }

    /// Linear factors `(n + a)^m` with integer `a`, found by trial of integer
    /// roots, plus the leftover cofactor. Used only for display.
    pub(crate) fn split_linear_factors(&self) -> (Vec<(i64, u32)>, Polynomial) {
        let mut rest = self.clone();
        let mut factors = Vec::new();
        if rest.is_zero() {
            return (factors, rest);
        }
        // powers of n first
        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest = Polynomial::new(rest.coeffs[zeros..].to_vec());
            factors.push((0, zeros as u32));
        }
        const SEARCH: i64 = 512;
        let mut a = 1i64;
        while a <= SEARCH && rest.degree().is_some_and(|d| d > 0) {
            for cand in [a, -a] {
                let c0 = &rest.coeffs[0];
                if !(c0 % BigInt::from(cand)).is_zero() {
                    continue;
                }
                let lin = Polynomial::linear(cand);
                let mut m = 0u32;
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                    m += 1;
                }
                if m > 0 {
                    factors.push((cand, m));
                }
                if rest.degree() == Some(0) {
                    break;
                }
            }
            a += 1;
        }
        (factors, rest)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    /// Descending powers, e.g. `n^4-20n^2+78`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[0, 1]) * &p(&[0, 1]), p(&[0, 0, 1]));
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let d = &p(&[-1, 0, 1]) - &p(&[-1, 0, 1]);
        assert!(d.is_zero());
        assert_eq!(d.coeffs().len(), 0);
        assert_eq!(p(&[0, 0, 0]), Polynomial::zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (n-1)(n+2) and 3(n-1)(n+5)
        let a = &Polynomial::linear(-1) * &Polynomial::linear(2);
        let b = (&Polynomial::linear(-1) * &Polynomial::linear(5)).scale(&BigInt::from(3));
        assert_eq!(Polynomial::gcd(&a, &b), Polynomial::linear(-1));
        assert_eq!(
            Polynomial::gcd(&a, &Polynomial::constant(7)),
            Polynomial::one()
        );
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 3]);
        assert_eq!(a.div_exact(&p(&[2, 3])), Some(p(&[-1, 0, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[78, 0, -20, 0, 1]).to_string(), "n^4-20n^2+78");
        assert_eq!(p(&[0, -1]).to_string(), "-n");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn linear_split() {
        // 2 n^2 (n-1)(n+3)^2 (n^2+1)
        let mut q = p(&[0, 0, 2]);
        for f in [p(&[-1, 1]), p(&[3, 1]), p(&[3, 1]), p(&[1, 0, 1])] {
            q = &q * &f;
        }
        let (mut fs, rest) = q.split_linear_factors();
        fs.sort();
        assert_eq!(fs, vec![(-1, 1), (0, 2), (3, 2)]);
        assert_eq!(rest, p(&[2, 0, 2]));
    }
}
