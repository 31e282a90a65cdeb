//! Permutations of `{1..p}`, cycle types, conjugacy-class sizes and the Young
//! subgroups that arise as symmetry groups of index sequences.

mod partition;
mod perm;

pub use partition::{class_size, partitions_of, Partition};
pub use perm::{enumerate_sp, young_subgroup, Permutation, SymmetricGroupIter, MAX_POINTS};

pub(crate) use perm::{cycle_type_key, partition_from_key};

/// Default cap on the degree for enumerating `S_p` and its subgroups.
pub const DEFAULT_DEGREE_CAP: usize = 8;
