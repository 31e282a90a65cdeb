use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::spec::{Factor, IntegralSpec};
use super::Limits;
use crate::error::{Error, Result};
use crate::symgroup::{young_subgroup, Permutation};

/// Why an integral vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroReason {
    /// Different numbers of `U*` and `U` factors.
    DegreeMismatch { conj: usize, plain: usize },
    /// The row labels of `U*` and `U` factors differ as multisets.
    RowMismatch,
    /// The column labels of `U*` and `U` factors differ as multisets.
    ColumnMismatch,
}

impl fmt::Display for ZeroReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroReason::DegreeMismatch { conj, plain } => {
                write!(
                    f,
                    "degree mismatch: {conj} conjugated vs {plain} plain factors"
                )
            }
            ZeroReason::RowMismatch => write!(f, "row indices differ between U* and U"),
            ZeroReason::ColumnMismatch => write!(f, "column indices differ between U* and U"),
        }
    }
}

/// Result of canonicalization: either a proof of vanishing or `⟨IJ|IJ_Q⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Zero(ZeroReason),
    Integral(CanonicalIntegral),
}

/// `⟨IJ|IJ_Q⟩` with labels normalized to `0..k` (rows and columns separately,
/// in first-occurrence order over the `U*` factors then the `U` factors).
///
/// `(J_Q)_a = J_{Q(a)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalIntegral {
    pub degree: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub cols_q: Vec<usize>,
    #[serde(serialize_with = "ser_perm")]
    pub q: Permutation,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    #[serde(skip)]
    pub g_i: Vec<Permutation>,
    #[serde(skip)]
    pub g_j: Vec<Permutation>,
    #[serde(skip)]
    pub g_jq: Vec<Permutation>,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// The orderly classification of an integral by its symmetry groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orderliness {
    /// `G_I` and `G_{J_Q}` move disjoint sets of points.
    Disjoint,
    /// One of `G_I`, `G_{J_Q}` contains the other.
    Nested,
    NonOrderly,
}

impl fmt::Display for Orderliness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Orderliness::Disjoint => "disjoint",
            Orderliness::Nested => "nested",
            Orderliness::NonOrderly => "non-orderly",
        };
        write!(f, "{s}")
    }
}

fn expand(factors: &[Factor]) -> Vec<(&str, &str)> {
    factors
        .iter()
        .flat_map(|f| std::iter::repeat_n((f.row.as_str(), f.col.as_str()), f.mult as usize))
        .collect()
}

fn intern<'a>(table: &mut Vec<&'a str>, label: &'a str) -> usize {
    match table.iter().position(|&l| l == label) {
        Some(i) => i,
        None => {
            table.push(label);
            table.len() - 1
        }
    }
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut s = v.to_vec();
    s.sort();
    s
}

/// Reduces a raw integral to `⟨IJ|IJ_Q⟩`, or proves it vanishes.
///
/// The `U*` factors fix the positions `1..p` in their given order. Plain
/// factors are matched to positions with the same row, exact `(row, col)`
/// matches first, and `Q` is built by matching each needed column to a
/// position of `J`, keeping `Q(a) = a` wherever possible.
pub fn canonicalize(spec: &IntegralSpec, limits: &Limits) -> Result<Canonical> {
    let conj = expand(&spec.conj);
    let plain = expand(&spec.plain);
    let p = conj.len();
    if p != plain.len() {
        return Ok(Canonical::Zero(ZeroReason::DegreeMismatch {
            conj: p,
            plain: plain.len(),
        }));
    }
    if p > limits.max_degree {
        return Err(Error::DegreeTooLarge {
            degree: p,
            cap: limits.max_degree,
        });
    }

    let mut row_table = Vec::new();
    let mut col_table = Vec::new();
    let conj_n: Vec<(usize, usize)> = conj
        .iter()
        .map(|&(r, c)| (intern(&mut row_table, r), intern(&mut col_table, c)))
        .collect();
    let plain_n: Vec<(usize, usize)> = plain
        .iter()
        .map(|&(r, c)| (intern(&mut row_table, r), intern(&mut col_table, c)))
        .collect();

    let rows: Vec<usize> = conj_n.iter().map(|x| x.0).collect();
    let cols: Vec<usize> = conj_n.iter().map(|x| x.1).collect();
    let plain_rows: Vec<usize> = plain_n.iter().map(|x| x.0).collect();
    let plain_cols: Vec<usize> = plain_n.iter().map(|x| x.1).collect();
    if sorted(&rows) != sorted(&plain_rows) {
        return Ok(Canonical::Zero(ZeroReason::RowMismatch));
    }
    if sorted(&cols) != sorted(&plain_cols) {
        return Ok(Canonical::Zero(ZeroReason::ColumnMismatch));
    }

    // assign plain factors to positions with the same row
    let mut assigned: Vec<Option<usize>> = vec![None; p];
    let mut used = vec![false; p];
    for (k, &(r, c)) in plain_n.iter().enumerate() {
        if let Some(a) = (0..p).find(|&a| assigned[a].is_none() && conj_n[a] == (r, c)) {
            assigned[a] = Some(k);
            used[k] = true;
        }
    }
    for (k, &(r, _)) in plain_n.iter().enumerate() {
        if used[k] {
            continue;
        }
        let a = (0..p)
            .find(|&a| assigned[a].is_none() && rows[a] == r)
            .expect("row multisets agree");
        assigned[a] = Some(k);
        used[k] = true;
    }
    let cols_q: Vec<usize> = assigned.iter().map(|k| plain_n[k.unwrap()].1).collect();

    let q = exchange_permutation(&cols, &cols_q);
    let ci = CanonicalIntegral::build(
        rows,
        cols,
        q,
        row_table.iter().map(|s| s.to_string()).collect(),
        col_table.iter().map(|s| s.to_string()).collect(),
        limits,
    )?;
    Ok(Canonical::Integral(ci))
}

/// A permutation `Q` with `cols[Q(a)] = cols_q[a]`, fixing points where possible.
fn exchange_permutation(cols: &[usize], cols_q: &[usize]) -> Permutation {
    let p = cols.len();
    let mut image: Vec<Option<usize>> = vec![None; p];
    let mut taken = vec![false; p];
    for a in 0..p {
        if cols[a] == cols_q[a] {
            image[a] = Some(a);
            taken[a] = true;
        }
    }
    for a in 0..p {
        if image[a].is_some() {
            continue;
        }
        let b = (0..p)
            .find(|&b| !taken[b] && cols[b] == cols_q[a])
            .expect("column multisets agree");
        image[a] = Some(b);
        taken[b] = true;
    }
    Permutation::from_images(image.into_iter().map(Option::unwrap).collect())
        .expect("matching is a bijection")
}

impl CanonicalIntegral {
    fn build(
        rows: Vec<usize>,
        cols: Vec<usize>,
        q: Permutation,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        limits: &Limits,
    ) -> Result<Self> {
        let degree = rows.len();
        let cols_q: Vec<usize> = (0..degree).map(|a| cols[q.apply(a)]).collect();
        let g_i = young_subgroup(&rows, limits.max_degree)?;
        let g_j = young_subgroup(&cols, limits.max_degree)?;
        let g_jq = young_subgroup(&cols_q, limits.max_degree)?;
        Ok(CanonicalIntegral {
            degree,
            rows,
            cols,
            cols_q,
            q,
            row_labels,
            col_labels,
            g_i,
            g_j,
            g_jq,
        })
    }

    /// The same integral with another exchange element; `q` must satisfy
    /// `J_q = J_Q`, e.g. `S Q T` for `S ∈ G_J`, `T ∈ G_{J_Q}`.
    pub fn with_exchange(&self, q: Permutation) -> Result<Self> {
        if q.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: q.degree(),
                right: self.degree,
            });
        }
        if (0..self.degree).any(|a| self.cols[q.apply(a)] != self.cols_q[a]) {
            return Err(Error::InvalidPermutation(format!(
                "{q} does not map J onto J_Q"
            )));
        }
        Ok(CanonicalIntegral { q, ..self.clone() })
    }

    /// Rebuilds a raw integral from the canonical data.
    pub fn to_spec(&self) -> IntegralSpec {
        let conj = (0..self.degree)
            .map(|a| {
                Factor::new(
                    &self.row_labels[self.rows[a]],
                    &self.col_labels[self.cols[a]],
                    1,
                )
            })
            .collect();
        let plain = (0..self.degree)
            .map(|a| {
                Factor::new(
                    &self.row_labels[self.rows[a]],
                    &self.col_labels[self.cols_q[a]],
                    1,
                )
            })
            .collect();
        IntegralSpec { conj, plain }
    }

    pub fn is_direct(&self) -> bool {
        self.cols == self.cols_q
    }

    /// `G_I` and `G_{J_Q}` disjoint (acting on disjoint points), nested, or neither.
    pub fn classify_orderly(&self) -> Orderliness {
        let gi: HashSet<&Permutation> = self.g_i.iter().collect();
        let gjq: HashSet<&Permutation> = self.g_jq.iter().collect();
        if gi.is_subset(&gjq) || gjq.is_subset(&gi) {
            return Orderliness::Nested;
        }
        let moved = |g: &[Permutation]| -> HashSet<usize> {
            g.iter().flat_map(Permutation::support).collect()
        };
        if moved(&self.g_i).is_disjoint(&moved(&self.g_jq)) {
            Orderliness::Disjoint
        } else {
            Orderliness::NonOrderly
        }
    }

    /// The conjugate-swapped, transposed, and conjugate-transposed variants.
    pub fn symmetry_transforms(&self, limits: &Limits) -> Result<Vec<CanonicalIntegral>> {
        let spec = self.to_spec();
        [
            spec.conjugated(),
            spec.transposed(),
            spec.conjugated().transposed(),
        ]
        .iter()
        .map(|s| match canonicalize(s, limits)? {
            Canonical::Integral(ci) => Ok(ci),
            Canonical::Zero(_) => unreachable!("symmetries preserve non-vanishing"),
        })
        .collect()
    }

    /// Human-readable index table in the `label / I / J / J_Q` layout.
    pub fn index_table(&self) -> String {
        let label = |xs: &[usize], names: &[String]| -> Vec<String> {
            xs.iter().map(|&x| names[x].clone()).collect()
        };
        let lines = [
            (
                "label",
                (1..=self.degree).map(|a| a.to_string()).collect::<Vec<_>>(),
            ),
            ("I", label(&self.rows, &self.row_labels)),
            ("J", label(&self.cols, &self.col_labels)),
            ("J_Q", label(&self.cols_q, &self.col_labels)),
        ];
        let width = lines
            .iter()
            .flat_map(|(_, v)| v.iter().map(String::len))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (name, vals) in lines {
            let cells: Vec<String> = vals.iter().map(|v| format!("{v:>width$}")).collect();
            out.push_str(&format!("{name:<5} {}\n", cells.join(" ")));
        }
        out
    }
}
