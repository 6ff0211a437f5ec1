//! Brute-force construction of small unitary groups and exhaustive
//! verification of their maximal abelian subgroups.

mod cache;
mod catalog;
mod field;
mod group;

use thiserror::Error;

pub use cache::{
    build_group_cached, catalog_cache_path, catalog_cached, decode_group, encode_group,
    group_cache_path, FORMAT_VERSION,
};
pub use catalog::{
    all_abelian_subgroups, centralizer, conjugacy_classes, maximal_abelian_orders, subgroup_orbit,
    subgroups_of_abelian, verify_malle, verify_omegakh, AbelianClass, MaximalAbelianCatalog,
    SpectrumCoverReport, TorusDivisibilityReport, TorusViolation, DEFAULT_NODE_BUDGET,
};
pub use field::{least_irreducible, Elem, FieldSpec, FiniteField};
pub use group::{build_group, canonical_form, GroupKind, GroupTable, Mat, MatrixRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BruteError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("GF({p}^{k}) exceeds the supported field size")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("modulus is not a monic irreducible polynomial of the stated degree")]
    BadModulus,
    #[error("{kind}({q}) is beyond desk scale")]
    TooLarge { kind: GroupKind, q: u64 },
    #[error("closure of {kind}({q}) has {got} elements, formula gives {expected}")]
    OrderMismatch {
        kind: GroupKind,
        q: u64,
        got: usize,
        expected: usize,
    },
    #[error("an element fails the unitary relation")]
    NotUnitary,
    #[error("a search leaf is not a self-centralizing abelian subgroup")]
    NotMaximalAbelian,
    #[error(
        "catalog search exceeded its budget of {budget} nodes; the result would not be exhaustive"
    )]
    BudgetExceeded { budget: u64 },
    #[error("cache file is corrupt")]
    CorruptCache,
    #[error("cache file has a different format version")]
    StaleCache,
    #[error("cache i/o: {0}")]
    Io(String),
}
