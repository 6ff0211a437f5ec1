//! Which field-automorphism extensions of `PSU3(q)` can share its set of
//! maximal abelian orders, by the ten parity conditions on `q = p^alpha`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ntheory::{is_fermat_prime, prime_divisors, PrimePower};
use crate::prime_graph::extension_graph_distinct;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("q = {0} is a Fermat prime")]
    Fermat(u64),
    #[error("q = 2 is excluded")]
    QTwo,
}

/// The ten mutually exclusive outcomes, numbered as in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtensionItem(pub u8);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionClassification {
    pub q: PrimePower,
    pub outcome: ExtensionItem,
    /// `1` plus the orders of the permitted field automorphisms.
    pub allowed_extension_orders: BTreeSet<u64>,
}

fn part(n: u64, p: u64) -> u64 {
    let mut out = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

fn powers_up_to(base: u64, limit: u64, from: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(from), move |x| Some(x * base)).take_while(move |&x| x <= limit)
}

/// Truth value of each item's precondition, index 0 being item 1.
pub fn item_preconditions(q: PrimePower) -> [bool; 10] {
    let (p, a, v) = (q.p(), q.alpha() as u64, q.value() as u128);
    let two = a % 2 == 0;
    let three = a % 3 == 0;
    let plus3 = part_u128(v + 1, 3);
    let q27 = p == 3 && a == 3;
    let q729 = p == 3 && a == 6;
    [
        !two && !three,
        !two && three && p == 3 && !q27,
        two && !three && p == 2,
        !two && three && plus3 == 3,
        !two && three && (v - 1) % 3 == 0,
        two && !three && p % 2 == 1,
        !two && three && (plus3 > 3 || q27),
        two && three && p == 2,
        two && three && (p > 3 || q729),
        two && three && p == 3 && !q729,
    ]
}

fn part_u128(n: u128, p: u128) -> u128 {
    let mut out = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn classify_extensions(q: PrimePower) -> Result<ExtensionClassification, ExtensionError> {
    let v = q.value();
    if v == 2 {
        return Err(ExtensionError::QTwo);
    }
    if is_fermat_prime(v) {
        return Err(ExtensionError::Fermat(v));
    }
    let pre = item_preconditions(q);
    let item = pre
        .iter()
        .position(|&b| b)
        .expect("the ten items are exhaustive") as u8
        + 1;
    let a = q.alpha() as u64;
    let (a2, a3) = (part(a, 2), part(a, 3));
    let mut allowed: BTreeSet<u64> = BTreeSet::from([1]);
    match item {
        6 | 10 => allowed.extend(powers_up_to(2, a2, 2)),
        7 | 8 => allowed.extend(powers_up_to(3, a3, 3)),
        9 => {
            for x in powers_up_to(2, a2, 1) {
                allowed.extend(powers_up_to(3, a3, 1).map(|y| x * y));
            }
        }
        _ => {}
    }
    Ok(ExtensionClassification {
        q,
        outcome: ExtensionItem(item),
        allowed_extension_orders: allowed,
    })
}

/// A prime `ell | alpha` on which the classification and the prime-graph
/// test disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionMismatch {
    pub q: u64,
    pub ell: u64,
    pub item: u8,
    pub allowed: bool,
    pub witness_edge: Option<(u64, u64)>,
}

/// Compares `ell in allowed` against "the extension graph equals
/// `Gamma(PSU3(q))`" for every prime `ell | alpha` and every in-scope `q`
/// in `qs`.
pub fn extension_consistency(qs: &[PrimePower]) -> Vec<ExtensionMismatch> {
    let mut out = Vec::new();
    for &q in qs {
        let Ok(c) = classify_extensions(q) else {
            continue;
        };
        for ell in prime_divisors(q.alpha() as u64).unwrap_or_default() {
            let allowed = c.allowed_extension_orders.contains(&ell);
            let edge = extension_graph_distinct(q, ell).expect("ell divides alpha");
            if allowed == edge.is_some() {
                out.push(ExtensionMismatch {
                    q: q.value(),
                    ell,
                    item: c.outcome.0,
                    allowed,
                    witness_edge: edge,
                });
            }
        }
    }
    out
}
