use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
///
/// Used both as a cycle type (conjugacy class of `S_p`) and as the signature
/// labelling an irreducible representation of `S_p` and `U(n)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(1^p)`, the class of the identity.
    pub fn identity_class(p: usize) -> Self {
        Partition { parts: vec![1; p] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows of the Young diagram).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(length, multiplicity)` pairs in increasing length.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in self.parts.iter().rev() {
            match out.last_mut() {
                Some((len, m)) if *len == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&r| r > j).count())
                .collect(),
        }
    }

    /// Union of parts, e.g. the cycle type of a product of disjoint cycles.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_parts(parts)
    }

    /// Hook lengths of the Young diagram, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.weight());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        hooks
    }

    /// Exponent notation with increasing parts, as used for class labels:
    /// `(1^3)`, `(1,2)`, `(1^2,2)`.
    pub fn class_label(&self) -> String {
        let body: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(len, m)| {
                if m == 1 {
                    len.to_string()
                } else {
                    format!("{len}^{m}")
                }
            })
            .collect();
        format!("({})", body.join(","))
    }

    /// Exponent notation with decreasing parts, as used for signatures:
    /// `(3)`, `(2,1)`, `(1^3)`, `(2^2)`.
    pub fn signature_label(&self) -> String {
        let mut body: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(len, m)| {
                if m == 1 {
                    len.to_string()
                } else {
                    format!("{len}^{m}")
                }
            })
            .collect();
        body.reverse();
        format!("({})", body.join(","))
    }

    /// A representative in cycle notation with fixed points omitted,
    /// consecutive points per cycle: `e`, `(12)`, `(123)(45)`.
    pub fn representative_label(&self) -> String {
        let mut next = 1;
        let mut out = String::new();
        for &len in &self.parts {
            if len > 1 {
                out.push('(');
                for x in next..next + len {
                    out.push_str(&x.to_string());
                }
                out.push(')');
            }
            next += len;
        }
        if out.is_empty() {
            "e".to_string()
        } else {
            out
        }
    }

    /// A permutation with this cycle type: cycles on consecutive points.
    pub fn representative(&self) -> super::Permutation {
        let mut next = 1;
        let mut cycles = Vec::new();
        for &len in &self.parts {
            cycles.push((next..next + len).collect());
            next += len;
        }
        super::Permutation::from_cycles(self.weight(), &cycles)
            .expect("consecutive cycles are valid")
    }
}

impl Ord for Partition {
    /// Reverse lexicographic on parts within a weight: `(3) < (2,1) < (1,1,1)`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    /// Comma list, e.g. `2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut col = 1;
        for tok in t.split(',') {
            let x: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::parse(col, format!("bad part {:?}", tok.trim())))?;
            if x == 0 {
                return Err(Error::parse(col, "parts must be positive"));
            }
            parts.push(x);
            col += tok.len() + 1;
        }
        Ok(Partition::from_parts(parts))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = String;

    fn try_from(v: Vec<usize>) -> std::result::Result<Self, String> {
        if v.contains(&0) {
            return Err("parts must be positive".into());
        }
        Ok(Partition::from_parts(v))
    }
}

/// All partitions of `p` in reverse lexicographic order; `p = 0` gives the
/// single empty partition.
pub fn partitions_of(p: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for x in (1..=remaining.min(max)).rev() {
            prefix.push(x);
            rec(remaining - x, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, p, &mut Vec::new(), &mut out);
    out
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * j)
}

/// Number of elements of `S_p` with cycle type `c`: `p! / ∏ j^{α_j} α_j!`.
pub fn class_size(c: &Partition) -> BigUint {
    let denom = c
        .multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (len, m)| {
            acc * BigUint::from(len).pow(m as u32) * factorial(m)
        });
    factorial(c.weight()) / denom
}
