use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::Serialize;

use super::canonical::CanonicalIntegral;
use super::Limits;
use crate::error::{Error, Result};
use crate::symgroup::{cycle_type_key, partition_from_key, partitions_of, Partition, Permutation};

/// `N[c]` for every class `c` of `S_p`, including the zero counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCounts {
    pub degree: usize,
    pub counts: BTreeMap<Partition, u64>,
}

impl ClassCounts {
    fn from_keys(degree: usize, keys: HashMap<u128, u64>, scale: u64) -> Self {
        let mut counts: BTreeMap<Partition, u64> =
            partitions_of(degree).into_iter().map(|c| (c, 0)).collect();
        for (key, k) in keys {
            *counts
                .get_mut(&partition_from_key(key))
                .expect("valid cycle type") += k * scale;
        }
        ClassCounts { degree, counts }
    }

    pub fn get(&self, c: &Partition) -> u64 {
        self.counts.get(c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Classes with a nonzero count, identity class first.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.counts
            .iter()
            .rev()
            .filter(|(_, &k)| k > 0)
            .map(|(c, &k)| (c, k))
    }
}

impl Serialize for ClassCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (c, k) in self.nonzero() {
            map.serialize_entry(&c.class_label(), &k)?;
        }
        map.end()
    }
}

/// True when every block of equal values in `inner` lies inside a block of `outer`,
/// i.e. the Young subgroup of `inner` is contained in that of `outer`.
fn refines(inner: &[usize], outer: &[usize]) -> bool {
    let p = inner.len();
    (0..p).all(|a| (a + 1..p).all(|b| inner[a] != inner[b] || outer[a] == outer[b]))
}

fn tally<'a>(
    items: impl IntoParallelIterator<Item = &'a Permutation>,
    left: &Permutation,
) -> HashMap<u128, u64> {
    let q = left.raw();
    items
        .into_par_iter()
        .fold(HashMap::new, |mut acc, r| {
            let prod: Vec<u8> = r.raw().iter().map(|&x| q[x as usize]).collect();
            *acc.entry(cycle_type_key(&prod)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, merge)
}

fn merge(mut a: HashMap<u128, u64>, b: HashMap<u128, u64>) -> HashMap<u128, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// `N[c] = Σ_{R ∈ G_I} Σ_{T ∈ G_{J_Q}} δ(QTR ∈ c)`.
///
/// When one group contains the other the double sum collapses to a single
/// sum scaled by the smaller group's order. Otherwise the full product is
/// enumerated, refusing when it exceeds `limits.max_products`.
pub fn class_counts(ci: &CanonicalIntegral, limits: &Limits) -> Result<ClassCounts> {
    let p = ci.degree;
    if p > limits.max_degree {
        return Err(Error::DegreeTooLarge {
            degree: p,
            cap: limits.max_degree,
        });
    }
    if refines(&ci.cols_q, &ci.rows) {
        let keys = tally(&ci.g_i, &ci.q);
        return Ok(ClassCounts::from_keys(p, keys, ci.g_jq.len() as u64));
    }
    if refines(&ci.rows, &ci.cols_q) {
        let keys = tally(&ci.g_jq, &ci.q);
        return Ok(ClassCounts::from_keys(p, keys, ci.g_i.len() as u64));
    }
    let products = ci.g_i.len() as u64 * ci.g_jq.len() as u64;
    if products > limits.max_products {
        return Err(Error::BudgetExceeded {
            products,
            budget: limits.max_products,
        });
    }
    let keys = ci
        .g_jq
        .par_iter()
        .map(|t| {
            let qt = ci.q.compose(t).expect("same degree");
            let q = qt.raw();
            let mut acc: HashMap<u128, u64> = HashMap::new();
            let mut prod = vec![0u8; p];
            for r in &ci.g_i {
                for (x, &y) in r.raw().iter().enumerate() {
                    prod[x] = q[y as usize];
                }
                *acc.entry(cycle_type_key(&prod)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, merge);
    Ok(ClassCounts::from_keys(p, keys, 1))
}
