use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Partition;

/// Permutation of `{1..p}` in one-line notation.
///
/// Stored zero-based: `images[x]` is the image of the point `x + 1`, minus one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

/// Largest degree a [`Permutation`] may have.
pub const MAX_POINTS: usize = 64;

impl Permutation {
    pub fn identity(p: usize) -> Self {
        assert!(p <= MAX_POINTS, "degree {p} above {MAX_POINTS}");
        Permutation {
            images: (0..p as u8).collect(),
        }
    }

    /// Builds from zero-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let p = images.len();
        if p > MAX_POINTS {
            return Err(Error::InvalidPermutation(format!(
                "degree {p} above {MAX_POINTS}"
            )));
        }
        let mut seen = vec![false; p];
        for &x in &images {
            if x >= p || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// One-based images, e.g. `[2, 3, 1]` for `(123)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "points are numbered from 1".into(),
            ));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds from cycles over one-based points.
    pub fn from_cycles(p: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..p).collect();
        let mut touched = vec![false; p];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x == 0 || x > p || y == 0 || y > p {
                    return Err(Error::InvalidPermutation(format!(
                        "point out of range 1..={p}"
                    )));
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                images[x - 1] = y - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2)(3 4)`, `(12)(34)`, `(1,3)` or `e`.
    ///
    /// Inside a cycle written without separators each digit is one point.
    pub fn parse_cycles(p: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "()" {
            return Ok(Self::identity(p));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        let mut offset = text.len() - text.trim_start().len();
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .filter(|&i| rest[..i].trim().is_empty())
                .ok_or_else(|| Error::parse(offset + 1, "expected '('"))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::parse(offset + open + 1, "unclosed cycle"))?
                + open;
            let body = rest[open + 1..close].trim();
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::parse(offset + open + 2, e.to_string()))?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::parse(offset + open + 2, "expected digits"))?
            };
            if !points.is_empty() {
                cycles.push(points);
            }
            offset += close + 1;
            rest = &rest[close + 1..];
        }
        Self::from_cycles(p, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ rhs`: applies `rhs` first, then `self`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Permutation> {
        if self.degree() != rhs.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: rhs.degree(),
            });
        }
        Ok(Permutation {
            images: rhs
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Cycles over one-based points, each starting at its smallest point,
    /// ordered by that point; fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let p = self.degree();
        let mut seen = vec![false; p];
        let mut out = Vec::new();
        for start in 0..p {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(cycle_lengths(&self.images))
    }

    /// The set of points moved by the permutation (zero-based).
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }
}

/// Cycle lengths of a raw image array, unsorted.
pub(crate) fn cycle_lengths(images: &[u8]) -> Vec<usize> {
    let mut seen = [false; MAX_POINTS];
    let mut lens = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        lens.push(len);
    }
    lens
}

/// Compact key of a cycle type: the multiplicity of length `k` sits in byte `k - 1`.
/// Only valid for degree at most 16.
#[inline]
pub(crate) fn cycle_type_key(images: &[u8]) -> u128 {
    debug_assert!(images.len() <= 16);
    let mut seen = 0u32;
    let mut key = 0u128;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while seen & (1 << x) == 0 {
            seen |= 1 << x;
            len += 1;
            x = images[x] as usize;
        }
        key += 1u128 << (8 * (len - 1));
    }
    key
}

pub(crate) fn partition_from_key(key: u128) -> Partition {
    let mut parts = Vec::new();
    for len in (1..=16usize).rev() {
        let m = (key >> (8 * (len - 1))) & 0xff;
        parts.extend(std::iter::repeat_n(len, m as usize));
    }
    Partition::from_parts(parts)
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points, `(1 2)(3 4)`; the identity is `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation; the degree is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .flat_map(|t| {
                let spaced = s.contains([' ', ',']);
                if spaced {
                    vec![t.parse::<usize>().unwrap_or(0)]
                } else {
                    t.chars()
                        .map(|c| c.to_digit(10).unwrap() as usize)
                        .collect()
                }
            })
            .max()
            .unwrap_or(0);
        Self::parse_cycles(max, s)
    }
}

/// All permutations of `{1..p}` in lexicographic order of one-line notation.
pub struct SymmetricGroupIter {
    next: Option<Vec<u8>>,
}

impl Iterator for SymmetricGroupIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Enumerates `S_p`; refuses degrees above `cap`.
pub fn enumerate_sp(p: usize, cap: usize) -> Result<SymmetricGroupIter> {
    if p > cap {
        return Err(Error::DegreeTooLarge { degree: p, cap });
    }
    Ok(SymmetricGroupIter {
        next: Some((0..p as u8).collect()),
    })
}

/// The stabilizer `{P : X_{P(a)} = X_a for all a}` of a value sequence: the
/// direct product of the symmetric groups on its blocks of equal values.
pub fn young_subgroup<T: PartialEq>(values: &[T], cap: usize) -> Result<Vec<Permutation>> {
    let p = values.len();
    if p > cap {
        return Err(Error::DegreeTooLarge { degree: p, cap });
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match blocks.iter_mut().find(|b| values[b[0]] == *v) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    let mut group = vec![Permutation::identity(p)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local: Vec<Permutation> = enumerate_sp(block.len(), cap)?.collect();
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for l in &local {
                let mut images = g.images.clone();
                for (k, &pos) in block.iter().enumerate() {
                    images[pos] = block[l.apply(k)] as u8;
                }
                next.push(Permutation { images });
            }
        }
        group = next;
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(s: &str, p: usize) -> Permutation {
        Permutation::parse_cycles(p, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let e = Permutation::identity(3);
        assert_eq!(e.compose(&e).unwrap(), e);
        let t = perm("(12)", 3);
        assert!(t.compose(&t).unwrap().is_identity());
        // (12)∘(23): 1→2, 2→3, 3→1
        let c = perm("(12)", 3).compose(&perm("(23)", 3)).unwrap();
        assert_eq!(c, Permutation::from_one_line(&[2, 3, 1]).unwrap());
        assert_eq!(c.to_string(), "(1 2 3)");
        assert!(matches!(
            e.compose(&Permutation::identity(2)),
            Err(Error::DegreeMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type().parts(), &[1, 1, 1]);
        assert_eq!(perm("(1234)", 4).cycle_type().parts(), &[4]);
        assert_eq!(perm("(12)(34)", 4).cycle_type().parts(), &[2, 2]);
        let q = perm("(1 3)(2 5 4)", 6);
        assert_eq!(partition_from_key(cycle_type_key(q.raw())), q.cycle_type());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(perm("(1 2)(3 4)", 4), perm("(12)(34)", 4));
        assert_eq!(perm("(1,3)", 3).to_string(), "(1 3)");
        assert_eq!("(1 2)(3 4)".parse::<Permutation>().unwrap().degree(), 4);
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_sp(0, 8).unwrap().count(), 1);
        assert_eq!(enumerate_sp(3, 8).unwrap().count(), 6);
        let all: HashSet<Permutation> = enumerate_sp(5, 8).unwrap().collect();
        assert_eq!(all.len(), 120);
        assert!(matches!(
            enumerate_sp(9, 8),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn young_subgroup_examples() {
        let g = young_subgroup(&['b', 'b', 'a'], 8).unwrap();
        assert_eq!(g, vec![Permutation::identity(3), perm("(12)", 3)]);
        let g = young_subgroup(&['d', 'c', 'c'], 8).unwrap();
        assert_eq!(g, vec![Permutation::identity(3), perm("(23)", 3)]);
        let g = young_subgroup(&[1, 2, 3, 4], 8).unwrap();
        assert_eq!(g, vec![Permutation::identity(4)]);
        assert_eq!(young_subgroup(&[1, 1, 1, 2, 2], 8).unwrap().len(), 12);
        assert!(young_subgroup(&[0; 9], 8).is_err());
    }

    #[test]
    fn young_subgroup_stabilizes() {
        let vals = [3, 1, 3, 1, 2, 3];
        for g in young_subgroup(&vals, 8).unwrap() {
            for a in 0..vals.len() {
                assert_eq!(vals[g.apply(a)], vals[a]);
            }
        }
    }
}
