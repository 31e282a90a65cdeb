//! Characters and dimensions of the irreducible representations of `S_p`,
//! and dimensions of `U(n)` irreducibles as polynomials in `n`.
//!
//! Characters come from the Murnaghan–Nakayama rule, implemented on beta-sets
//! (first-column hook lengths): removing a border strip of length `r` is
//! moving one bead from `b` to a free position `b - r`, with sign
//! `(-1)^(beads strictly between)`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfield::RationalFunction;
use crate::symgroup::{class_size, partitions_of, Partition};

/// Degrees above this are refused by [`character_table`].
pub const CHARACTER_TABLE_CAP: usize = 16;

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Character `χ_f(c)` of the irreducible `f` on the class with cycle type `c`.
pub fn character(f: &Partition, c: &Partition) -> Result<i64> {
    if f.weight() != c.weight() {
        return Err(Error::WeightMismatch {
            left: f.weight(),
            right: c.weight(),
        });
    }
    Ok(mn(f.parts(), c.parts()))
}

fn mn(shape: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    if shape.len() <= 1 {
        // the trivial representation
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo().read().unwrap().get(&key) {
        return v;
    }
    let k = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &x)| x + (k - 1 - i))
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (k - 1 - i))
            .filter(|&x| x > 0)
            .collect();
        total += sign * mn(&smaller, rest);
    }
    memo().write().unwrap().insert(key, total);
    total
}

/// Dimension `d_f` of the `S_p` irreducible, by the hook-length formula.
pub fn dim_sp(f: &Partition) -> u64 {
    let hooks: BigUint = f.hook_lengths().into_iter().map(BigUint::from).product();
    let fact: BigUint = (1..=f.weight()).map(BigUint::from).product();
    (fact / hooks).to_u64().expect("dimension fits in u64")
}

/// Dimension of the `U(n)` irreducible with signature `f`, as a polynomial in
/// `n`: `∏_{cells (i,j)} (n + j - i) / hook(i,j)`.
pub fn dim_un(f: &Partition) -> RationalFunction {
    let hooks: BigInt = f.hook_lengths().into_iter().map(BigInt::from).product();
    let mut roots = Vec::with_capacity(f.weight());
    for (i, &row) in f.parts().iter().enumerate() {
        for j in 0..row {
            roots.push((j as i64 - i as i64, 1));
        }
    }
    RationalFunction::from_factored(&BigRational::new(BigInt::one(), hooks), &roots)
}

/// Character table of `S_p`.
///
/// Rows are signatures in reverse lexicographic order (`(p)` first); columns
/// are classes starting from the identity class `(1^p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub degree: usize,
    pub rows: Vec<Partition>,
    pub columns: Vec<Partition>,
    pub class_sizes: Vec<BigUint>,
    pub entries: Vec<Vec<i64>>,
}

pub fn character_table(p: usize) -> Result<CharacterTable> {
    if p > CHARACTER_TABLE_CAP {
        return Err(Error::DegreeTooLarge {
            degree: p,
            cap: CHARACTER_TABLE_CAP,
        });
    }
    let rows = partitions_of(p);
    let columns: Vec<Partition> = rows.iter().rev().cloned().collect();
    let class_sizes = columns.iter().map(class_size).collect();
    let entries = rows
        .iter()
        .map(|f| columns.iter().map(|c| mn(f.parts(), c.parts())).collect())
        .collect();
    Ok(CharacterTable {
        degree: p,
        rows,
        columns,
        class_sizes,
        entries,
    })
}

impl CharacterTable {
    pub fn character(&self, f: &Partition, c: &Partition) -> Option<i64> {
        let i = self.rows.iter().position(|r| r == f)?;
        let j = self.columns.iter().position(|x| x == c)?;
        Some(self.entries[i][j])
    }
}

impl fmt::Display for CharacterTable {
    /// Class sizes above class labels, signatures down the left:
    ///
    /// ```text
    /// n(c)         1      3      2
    /// Part.\Class  (1^3)  (1,2)  (3)
    /// (3)          1      1      1
    /// ```
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut head = vec!["n(c)".to_string()];
        head.extend(self.class_sizes.iter().map(ToString::to_string));
        grid.push(head);
        let mut labels = vec!["Part.\\Class".to_string()];
        labels.extend(self.columns.iter().map(Partition::class_label));
        grid.push(labels);
        for (row, vals) in self.rows.iter().zip(&self.entries) {
            let mut line = vec![row.signature_label()];
            line.extend(vals.iter().map(ToString::to_string));
            grid.push(line);
        }
        let ncols = grid[0].len();
        let widths: Vec<usize> = (0..ncols)
            .map(|j| grid.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for line in &grid {
            let mut text = String::new();
            for (j, cell) in line.iter().enumerate() {
                if j + 1 == ncols {
                    text.push_str(cell);
                } else {
                    write!(text, "{cell:<w$}  ", w = widths[j])?;
                }
            }
            writeln!(f, "{}", text.trim_end())?;
        }
        Ok(())
    }
}
