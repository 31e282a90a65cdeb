use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Polynomial;
use crate::error::{Error, Result};

/// Exact ratio of integer polynomials in `n`, kept in a unique reduced form:
///
/// * numerator and denominator share no non-constant factor,
/// * the integer contents of numerator and denominator are coprime,
/// * the denominator's leading coefficient is positive,
/// * zero is `0/1`.
///
/// Equality of canonical fields is therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        Self::reduce(Polynomial::constant(c), Polynomial::one())
    }

    pub fn from_rational(c: &BigRational) -> Self {
        Self::reduce(
            Polynomial::constant(c.numer().clone()),
            Polynomial::constant(c.denom().clone()),
        )
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::reduce(p, Polynomial::one())
    }

    /// The indeterminate `n`.
    pub fn n() -> Self {
        Self::from_polynomial(Polynomial::linear(0))
    }

    /// `constant · ∏ (n + a)^m`; a negative multiplicity puts the factor in the
    /// denominator.
    pub fn from_factored(constant: &BigRational, roots: &[(i64, i32)]) -> Self {
        let mut num = Polynomial::constant(constant.numer().clone());
        let mut den = Polynomial::constant(constant.denom().clone());
        for &(a, m) in roots {
            let lin = Polynomial::linear(a);
            for _ in 0..m.unsigned_abs() {
                if m > 0 {
                    num = &num * &lin;
                } else {
                    den = &den * &lin;
                }
            }
        }
        Self::reduce(num, den)
    }

    /// `(n + a)! / (n + b)!` expanded as a finite product of linear factors.
    pub fn factorial_ratio(a: i64, b: i64) -> Self {
        let roots: Vec<(i64, i32)> = if a >= b {
            (b + 1..=a).map(|j| (j, 1)).collect()
        } else {
            (a + 1..=b).map(|j| (j, -1)).collect()
        };
        Self::from_factored(&BigRational::one(), &roots)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::reduce(self.num.scale(k.numer()), self.den.scale(k.denom()))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::reduce(self.num.scale(k), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, n0: &BigInt) -> Result<BigRational> {
        let d = self.den.eval(n0);
        if d.is_zero() {
            return Err(Error::PoleAtValue(n0.to_string()));
        }
        Ok(BigRational::new(self.num.eval(n0), d))
    }

    pub fn evaluate_i64(&self, n0: i64) -> Result<BigRational> {
        self.evaluate(&BigInt::from(n0))
    }

    /// Sums an iterator of rational functions, pairing terms to keep
    /// intermediate denominators small.
    pub fn sum<I: IntoIterator<Item = RationalFunction>>(terms: I) -> Self {
        let mut items: Vec<RationalFunction> = terms.into_iter().collect();
        if items.is_empty() {
            return Self::zero();
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len().div_ceil(2));
            let mut it = items.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(&a + &b),
                    None => next.push(a),
                }
            }
            items = next;
        }
        items.pop().unwrap()
    }

    /// LaTeX rendering of the factored form, e.g. `\frac{-1}{n(n^{2}-1)}`.
    pub fn to_latex(&self) -> String {
        let r = Rendered::of(self);
        let num = r.numerator(Style::Latex);
        match r.denominator(Style::Latex) {
            None => num,
            Some(den) => format!("\\frac{{{num}}}{{{den}}}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Latex,
}

/// Factored presentation: `sign · (c_num / c_den) · ∏ factors_num / ∏ factors_den`.
struct Rendered {
    negative: bool,
    c_num: BigInt,
    c_den: BigInt,
    num: Vec<String>,
    den: Vec<String>,
    num_latex: Vec<String>,
    den_latex: Vec<String>,
}

impl Rendered {
    fn of(f: &RationalFunction) -> Self {
        let (num, nrest) = f.num.split_linear_factors();
        let (den, drest) = f.den.split_linear_factors();
        let mut c_num = nrest.content();
        let mut c_den = drest.content();
        let negative = nrest.leading().is_some_and(Signed::is_negative)
            != drest.leading().is_some_and(Signed::is_negative);
        let g = c_num.gcd(&c_den);
        if !g.is_zero() && !g.is_one() {
            c_num /= &g;
            c_den /= &g;
        }
        let nrest = nrest.primitive_part();
        let drest = drest.primitive_part();
        Rendered {
            negative,
            c_num,
            c_den,
            num: factor_strings(&num, &nrest, Style::Plain),
            den: factor_strings(&den, &drest, Style::Plain),
            num_latex: factor_strings(&num, &nrest, Style::Latex),
            den_latex: factor_strings(&den, &drest, Style::Latex),
        }
    }

    fn numerator(&self, style: Style) -> String {
        let factors = if style == Style::Latex {
            &self.num_latex
        } else {
            &self.num
        };
        let sign = if self.negative { "-" } else { "" };
        if factors.is_empty() {
            return format!("{sign}{}", self.c_num);
        }
        let body = join_factors(factors);
        if self.c_num.is_one() {
            // a lone multi-term polynomial reads fine without parentheses
            if factors.len() == 1
                && factors[0].starts_with('(')
                && !self.negative
                && self.den.is_empty()
                && self.c_den.is_one()
            {
                return factors[0][1..factors[0].len() - 1].to_string();
            }
            format!("{sign}{body}")
        } else {
            format!("{sign}{}{body}", self.c_num)
        }
    }

    fn denominator(&self, style: Style) -> Option<String> {
        let factors = if style == Style::Latex {
            &self.den_latex
        } else {
            &self.den
        };
        if factors.is_empty() && self.c_den.is_one() {
            return None;
        }
        if factors.is_empty() {
            return Some(self.c_den.to_string());
        }
        let body = join_factors(factors);
        Some(match (self.c_den.is_one(), style) {
            (true, Style::Latex) => body,
            (true, Style::Plain) if factors.len() == 1 => body,
            (true, Style::Plain) => format!("({body})"),
            (false, Style::Latex) => format!("{}{body}", self.c_den),
            (false, Style::Plain) => format!("({}{body})", self.c_den),
        })
    }
}

fn join_factors(factors: &[String]) -> String {
    let mut out = String::new();
    for (i, f) in factors.iter().enumerate() {
        // juxtaposing a bare `n` with a following bare factor would be ambiguous
        if i > 0 && !f.starts_with('(') {
            out.push(' ');
        }
        out.push_str(f);
    }
    out
}

/// Orders factors as: powers of `n`, paired `(n^2-a^2)`, single `(n+a)`,
/// then any non-linear cofactor.
fn factor_strings(linear: &[(i64, u32)], rest: &Polynomial, style: Style) -> Vec<String> {
    let pow = |base: String, m: u32| -> String {
        match (m, style) {
            (1, _) => base,
            (_, Style::Plain) => format!("{base}^{m}"),
            (_, Style::Latex) => format!("{base}^{{{m}}}"),
        }
    };
    let sq = if style == Style::Latex {
        "n^{2}"
    } else {
        "n^2"
    };
    let mut mult: std::collections::BTreeMap<i64, u32> = linear.iter().copied().collect();
    let mut out = Vec::new();
    if let Some(m) = mult.remove(&0) {
        out.push(pow("n".to_string(), m));
    }
    let positives: Vec<i64> = mult.keys().copied().filter(|&a| a > 0).collect();
    for a in positives {
        if let (Some(&mp), Some(&mn)) = (mult.get(&a), mult.get(&-a)) {
            let k = mp.min(mn);
            out.push(pow(format!("({sq}-{})", a * a), k));
            for key in [a, -a] {
                let e = mult.get_mut(&key).unwrap();
                *e -= k;
                if *e == 0 {
                    mult.remove(&key);
                }
            }
        }
    }
    for (a, m) in mult {
        let lin = if a < 0 {
            format!("(n-{})", -a)
        } else {
            format!("(n+{a})")
        };
        out.push(pow(lin, m));
    }
    if !rest.is_constant() {
        let text = rest.to_string();
        let text = if style == Style::Latex {
            latexify(&text)
        } else {
            text
        };
        out.push(format!("({text})"));
    }
    out
}

fn latexify(poly: &str) -> String {
    let mut out = String::new();
    let mut chars = poly.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' {
            let mut exp = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                exp.push(*d);
                chars.next();
            }
            out.push_str(&format!("^{{{exp}}}"));
        } else {
            out.push(c);
        }
    }
    out
}

impl fmt::Display for RationalFunction {
    /// Factored human-readable form, e.g. `-1/(n(n^2-1))` or `(n^2-2)/(n(n^2-1)(n^2-4))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let r = Rendered::of(self);
        let num = r.numerator(Style::Plain);
        match r.denominator(Style::Plain) {
            None => write!(f, "{num}"),
            Some(den) => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] to get an error instead.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        RationalFunction::sum(iter)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: Vec<String>,
    den: Vec<String>,
}

fn to_strings(p: &Polynomial) -> Vec<String> {
    if p.is_zero() {
        vec!["0".to_string()]
    } else {
        p.coeffs().iter().map(ToString::to_string).collect()
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            num: to_strings(&self.num),
            den: to_strings(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let parse = |v: &[String]| -> std::result::Result<Polynomial, D::Error> {
            v.iter()
                .map(|s| s.trim().parse::<BigInt>().map_err(D::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Polynomial::new)
        };
        RationalFunction::new(parse(&w.num)?, parse(&w.den)?).map_err(D::Error::custom)
    }
}
