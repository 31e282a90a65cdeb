use std::fmt;
use std::str::FromStr;

use super::diagrams::{double_fan_spec, fan_spec, stack_spec, z_spec};
use super::doublefan::{double_fan_value, DoubleFanClosed, OpenedMonomial};
use super::{fan_integral, stack_integral, z_integral};
use crate::error::{Error, Result};
use crate::integrals::IntegralSpec;
use crate::ratfield::RationalFunction;

/// A closed-form query.
///
/// Grammar: `fan m`, `z m1 m2 m3`, `stack p1 p2 …`, or a product of
/// double-fan branches such as `[Aa+2Ab][Aa]` or `[2Ba+Bb][Aa+Ab]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedExpr {
    Fan(u32),
    Z(u32, u32, u32),
    Stack(Vec<u32>),
    DoubleFan(Vec<DoubleFanClosed>),
}

impl ClosedExpr {
    pub fn value(&self) -> Result<RationalFunction> {
        match self {
            ClosedExpr::Fan(m) => Ok(fan_integral(*m)),
            ClosedExpr::Z(a, b, c) => Ok(z_integral(*a, *b, *c)),
            ClosedExpr::Stack(parts) => stack_integral(parts),
            ClosedExpr::DoubleFan(branches) => double_fan_value(branches),
        }
    }

    /// The same integral as a raw spec, for the class-counting engine.
    pub fn spec(&self) -> IntegralSpec {
        match self {
            ClosedExpr::Fan(m) => fan_spec(*m),
            ClosedExpr::Z(a, b, c) => z_spec(*a, *b, *c),
            ClosedExpr::Stack(parts) => stack_spec(parts),
            ClosedExpr::DoubleFan(branches) => double_fan_spec(branches),
        }
    }
}

/// Splits on whitespace, keeping 1-based columns.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn numbers(args: &[(usize, &str)], min: u32) -> Result<Vec<u32>> {
    args.iter()
        .map(|&(col, w)| match w.parse::<u32>() {
            Ok(v) if v >= min => Ok(v),
            _ => Err(Error::parse(
                col,
                format!("expected an integer >= {min}, found {w:?}"),
            )),
        })
        .collect()
}

fn parse_branch(body: &str, col: usize) -> Result<DoubleFanClosed> {
    let mut mono = OpenedMonomial::default();
    let mut offset = 0;
    for term in body.split('+') {
        let here = col + offset + (term.len() - term.trim_start().len());
        offset += term.len() + 1;
        let t = term.trim();
        let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let (count, name) = t.split_at(split);
        let k: u32 = if count.is_empty() {
            1
        } else {
            count
                .parse()
                .map_err(|_| Error::parse(here, format!("bad count {count:?}")))?
        };
        let slot = match name {
            "Aa" => &mut mono.alpha_a,
            "Ab" => &mut mono.alpha_b,
            "Ba" => &mut mono.beta_a,
            "Bb" => &mut mono.beta_b,
            _ => {
                return Err(Error::parse(
                    here + split,
                    format!("expected one of Aa, Ab, Ba, Bb, found {name:?}"),
                ))
            }
        };
        *slot += k;
    }
    if mono.degree() == 0 {
        return Err(Error::parse(col, "empty branch"));
    }
    Ok(DoubleFanClosed::from_patterns(mono))
}

fn parse_brackets(s: &str) -> Result<Vec<DoubleFanClosed>> {
    let mut branches = Vec::new();
    let mut rest = s;
    let mut pos = 0;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('[') {
            return Err(Error::parse(pos + 1, "expected '['"));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| Error::parse(pos + 1, "unclosed '['"))?;
        branches.push(parse_branch(&rest[1..close], pos + 2)?);
        pos += close + 1;
        rest = &rest[close + 1..];
    }
    Ok(branches)
}

impl FromStr for ClosedExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            return Ok(ClosedExpr::DoubleFan(parse_brackets(s)?));
        }
        let w = words(s);
        let Some(&(col, head)) = w.first() else {
            return Err(Error::parse(1, "empty expression"));
        };
        let args = &w[1..];
        let end = s.len() + 1;
        match head {
            "fan" => match numbers(args, 0)?.as_slice() {
                [m] => Ok(ClosedExpr::Fan(*m)),
                _ => Err(Error::parse(end, "'fan' takes one argument")),
            },
            "z" => match numbers(args, 0)?.as_slice() {
                [a, b, c] => Ok(ClosedExpr::Z(*a, *b, *c)),
                _ => Err(Error::parse(end, "'z' takes three arguments")),
            },
            "stack" => {
                let parts = numbers(args, 1)?;
                if parts.is_empty() {
                    return Err(Error::parse(end, "'stack' needs at least one multiplicity"));
                }
                Ok(ClosedExpr::Stack(parts))
            }
            _ => Err(Error::parse(
                col,
                format!("unknown form {head:?}; expected fan, z, stack or '['"),
            )),
        }
    }
}

impl fmt::Display for ClosedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedExpr::Fan(m) => write!(f, "fan {m}"),
            ClosedExpr::Z(a, b, c) => write!(f, "z {a} {b} {c}"),
            ClosedExpr::Stack(parts) => {
                let p: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "stack {}", p.join(" "))
            }
            ClosedExpr::DoubleFan(branches) => {
                for b in branches {
                    write!(f, "[({},{})({},{})]", b.m_a, b.n_a, b.m_b, b.n_b)?;
                }
                Ok(())
            }
        }
    }
}
