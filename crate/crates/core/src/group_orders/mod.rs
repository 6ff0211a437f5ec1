//! Closed-form orders, odd order components and maximal tori.
//!
//! Orders are assembled from factored cyclotomic pieces so that even
//! `|E8(q')|` is available exactly. Odd order components are only provided
//! for the (family, parameter) pairs that have a disconnected prime graph in
//! the standard tables and that the case analysis needs; anything else is
//! reported as out of scope.

mod sporadic;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ntheory::{
    gcd, is_prime, pow_minus_one, pow_plus_one, primes_up_to, FactoredInteger, NtError, PrimePower,
};

pub use sporadic::{Sporadic, SporadicData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("invalid parameters for {0}: {1}")]
    InvalidParams(String, &'static str),
    #[error("odd order components of {0} are out of scope")]
    OutOfScope(String),
    #[error(transparent)]
    Arithmetic(#[from] NtError),
}

/// A finite simple group, named by family and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SimpleGroupId {
    Alt {
        n: u32,
    },
    Psl {
        n: u32,
        q: PrimePower,
    },
    Psu {
        n: u32,
        q: PrimePower,
    },
    /// `2B2(q)`, `q = 2^(2m+1) > 2`.
    Suzuki {
        q: PrimePower,
    },
    /// `2G2(q)`, `q = 3^(2m+1) > 3`.
    Ree2G2 {
        q: PrimePower,
    },
    /// `2F4(q)`, `q = 2^(2m+1) > 2`.
    Ree2F4 {
        q: PrimePower,
    },
    G2 {
        q: PrimePower,
    },
    B {
        n: u32,
        q: PrimePower,
    },
    C {
        n: u32,
        q: PrimePower,
    },
    D {
        n: u32,
        q: PrimePower,
    },
    TwistedD {
        n: u32,
        q: PrimePower,
    },
    E6 {
        q: PrimePower,
    },
    TwistedE6 {
        q: PrimePower,
    },
    E7 {
        q: PrimePower,
    },
    E8 {
        q: PrimePower,
    },
    F4 {
        q: PrimePower,
    },
    TriD4 {
        q: PrimePower,
    },
    Sporadic {
        name: Sporadic,
    },
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SimpleGroupId::*;
        match self {
            Alt { n } => write!(f, "A_{n}"),
            Psl { n, q } => write!(f, "PSL_{n}({q})"),
            Psu { n, q } => write!(f, "PSU_{n}({q})"),
            Suzuki { q } => write!(f, "2B2({q})"),
            Ree2G2 { q } => write!(f, "2G2({q})"),
            Ree2F4 { q } => write!(f, "2F4({q})"),
            G2 { q } => write!(f, "G2({q})"),
            B { n, q } => write!(f, "B_{n}({q})"),
            C { n, q } => write!(f, "C_{n}({q})"),
            D { n, q } => write!(f, "D_{n}({q})"),
            TwistedD { n, q } => write!(f, "2D_{n}({q})"),
            E6 { q } => write!(f, "E6({q})"),
            TwistedE6 { q } => write!(f, "2E6({q})"),
            E7 { q } => write!(f, "E7({q})"),
            E8 { q } => write!(f, "E8({q})"),
            F4 { q } => write!(f, "F4({q})"),
            TriD4 { q } => write!(f, "3D4({q})"),
            Sporadic { name } => write!(f, "{}", name.name()),
        }
    }
}

fn odd_power_of(q: PrimePower, p: u64, min: u64) -> bool {
    q.p() == p && q.alpha() % 2 == 1 && q.value() > min
}

impl SimpleGroupId {
    pub fn validate(&self) -> Result<(), OrderError> {
        use SimpleGroupId::*;
        let bad = |why| Err(OrderError::InvalidParams(self.to_string(), why));
        match *self {
            Alt { n } if n < 5 => bad("degree must be at least 5"),
            Psl { n, q } if n < 2 || (n == 2 && q.value() <= 3) => {
                bad("PSL_n(q) needs n >= 2 and (n, q) != (2, 2), (2, 3)")
            }
            Psu { n, q } if n < 3 || (n == 3 && q.value() == 2) => {
                bad("PSU_n(q) needs n >= 3 and (n, q) != (3, 2)")
            }
            Suzuki { q } if !odd_power_of(q, 2, 2) => bad("q must be 2^(2m+1) > 2"),
            Ree2G2 { q } if !odd_power_of(q, 3, 3) => bad("q must be 3^(2m+1) > 3"),
            Ree2F4 { q } if !odd_power_of(q, 2, 2) => bad("q must be 2^(2m+1) > 2"),
            G2 { q } if q.value() <= 2 => bad("G2(q) needs q > 2"),
            B { n, q } if n < 2 || (n == 2 && q.value() == 2) => {
                bad("B_n(q) needs n >= 2 and (n, q) != (2, 2)")
            }
            C { n, q } if n < 2 || (n == 2 && q.value() == 2) => {
                bad("C_n(q) needs n >= 2 and (n, q) != (2, 2)")
            }
            D { n, .. } if n < 4 => bad("D_n(q) needs n >= 4"),
            TwistedD { n, .. } if n < 4 => bad("2D_n(q) needs n >= 4"),
            _ => Ok(()),
        }
    }
}

fn qpow(q: PrimePower, k: u64) -> FactoredInteger {
    FactoredInteger::from_pairs([(q.p(), (q.alpha() as u64 * k) as u32)]).expect("prime base")
}

fn small(n: u64) -> FactoredInteger {
    FactoredInteger::from_u64(n).expect("nonzero")
}

fn product<I: IntoIterator<Item = Result<FactoredInteger, NtError>>>(
    items: I,
) -> Result<FactoredInteger, NtError> {
    items
        .into_iter()
        .try_fold(FactoredInteger::one(), |acc, x| Ok(acc.mul(&x?)))
}

/// `|PSL_n(q)|`.
fn order_psl(n: u32, q: PrimePower) -> Result<FactoredInteger, NtError> {
    let top = qpow(q, (n as u64) * (n as u64 - 1) / 2);
    let body = product((2..=n).map(|i| pow_minus_one(q.value(), i)))?;
    top.mul(&body)
        .checked_div(&small(gcd(n as u64, q.value() - 1)))
}

/// `|PSU_n(q)|`.
fn order_psu(n: u32, q: PrimePower) -> Result<FactoredInteger, NtError> {
    let top = qpow(q, (n as u64) * (n as u64 - 1) / 2);
    let body = product((2..=n).map(|i| {
        if i % 2 == 0 {
            pow_minus_one(q.value(), i)
        } else {
            pow_plus_one(q.value(), i)
        }
    }))?;
    top.mul(&body)
        .checked_div(&small(gcd(n as u64, q.value() + 1)))
}

/// `n!/2` by Legendre's formula.
fn order_alt(n: u32) -> FactoredInteger {
    let n = n as u64;
    let pairs = primes_up_to(n).into_iter().map(|p| {
        let mut e = 0;
        let mut pk = p;
        while pk <= n {
            e += (n / pk) as u32;
            pk = pk.saturating_mul(p);
        }
        (p, if p == 2 { e - 1 } else { e })
    });
    FactoredInteger::from_pairs(pairs).expect("primes")
}

/// Exact order of a simple group.
pub fn family_order(id: &SimpleGroupId) -> Result<FactoredInteger, OrderError> {
    use SimpleGroupId::*;
    id.validate()?;
    let m1 = |q: PrimePower, i: u32| pow_minus_one(q.value(), i);
    let p1 = |q: PrimePower, i: u32| pow_plus_one(q.value(), i);
    let order = match *id {
        Alt { n } => order_alt(n),
        Psl { n, q } => order_psl(n, q)?,
        Psu { n, q } => order_psu(n, q)?,
        Suzuki { q } => qpow(q, 2).mul(&p1(q, 2)?).mul(&m1(q, 1)?),
        Ree2G2 { q } => qpow(q, 3).mul(&p1(q, 3)?).mul(&m1(q, 1)?),
        Ree2F4 { q } => product([p1(q, 6), m1(q, 4), p1(q, 3), m1(q, 1)])?.mul(&qpow(q, 12)),
        G2 { q } => qpow(q, 6).mul(&m1(q, 6)?).mul(&m1(q, 2)?),
        B { n, q } | C { n, q } => qpow(q, (n as u64).pow(2))
            .mul(&product((1..=n).map(|i| m1(q, 2 * i)))?)
            .checked_div(&small(gcd(2, q.value() - 1)))?,
        D { n, q } => {
            let qn_minus = m1(q, n)?;
            let div = small(gcd(4, qn_minus_one_mod4(q.value(), n)));
            qpow(q, n as u64 * (n as u64 - 1))
                .mul(&qn_minus)
                .mul(&product((1..n).map(|i| m1(q, 2 * i)))?)
                .checked_div(&div)?
        }
        TwistedD { n, q } => {
            let qn_plus = p1(q, n)?;
            let div = small(gcd(4, qn_plus_one_mod4(q.value(), n)));
            qpow(q, n as u64 * (n as u64 - 1))
                .mul(&qn_plus)
                .mul(&product((1..n).map(|i| m1(q, 2 * i)))?)
                .checked_div(&div)?
        }
        TriD4 { q } => qpow(q, 12)
            .mul(&product([m1(q, 12), m1(q, 6), m1(q, 2)])?)
            .checked_div(&m1(q, 4)?)?,
        F4 { q } => qpow(q, 24).mul(&product([m1(q, 12), m1(q, 8), m1(q, 6), m1(q, 2)])?),
        E6 { q } => qpow(q, 36)
            .mul(&product([2, 5, 6, 8, 9, 12].map(|i| m1(q, i)))?)
            .checked_div(&small(gcd(3, q.value() - 1)))?,
        TwistedE6 { q } => qpow(q, 36)
            .mul(&product([
                m1(q, 2),
                p1(q, 5),
                m1(q, 6),
                m1(q, 8),
                p1(q, 9),
                m1(q, 12),
            ])?)
            .checked_div(&small(gcd(3, q.value() + 1)))?,
        E7 { q } => qpow(q, 63)
            .mul(&product([2, 6, 8, 10, 12, 14, 18].map(|i| m1(q, i)))?)
            .checked_div(&small(gcd(2, q.value() - 1)))?,
        E8 { q } => qpow(q, 120).mul(&product([2, 8, 12, 14, 18, 20, 24, 30].map(|i| m1(q, i)))?),
        Sporadic { name } => FactoredInteger::from_pairs(name.data().order.iter().copied())?,
    };
    Ok(order)
}

// (q^n - 1) mod 4 without forming q^n.
fn qn_minus_one_mod4(q: u64, n: u32) -> u64 {
    let r = (0..n).fold(1u64, |acc, _| acc * (q % 4) % 4);
    (r + 3) % 4
}

fn qn_plus_one_mod4(q: u64, n: u32) -> u64 {
    let r = (0..n).fold(1u64, |acc, _| acc * (q % 4) % 4);
    (r + 1) % 4
}

/// `pi(G)`.
pub fn pi_of_group(id: &SimpleGroupId) -> Result<Vec<u64>, OrderError> {
    Ok(family_order(id)?.primes())
}

fn psu3_d(q: PrimePower) -> u64 {
    gcd(3, q.value() + 1)
}

/// `|PSU3(q)| = q^3 (q^2 - 1)(q^3 + 1) / (3, q + 1)` for `2 <= q < 2^32`.
pub fn order_psu3(q: PrimePower) -> FactoredInteger {
    qpow(q, 3)
        .mul(&pow_minus_one(q.value(), 2).expect("small"))
        .mul(&pow_plus_one(q.value(), 3).expect("small"))
        .checked_div(&small(psu3_d(q)))
        .expect("d divides q + 1")
}

/// `(q^2 - q + 1) / (3, q + 1)`.
pub fn odd_component_psu3(q: PrimePower) -> FactoredInteger {
    let v = q.value();
    small((v * v - v + 1) / psu3_d(q))
}

/// Orders of the three maximal tori of `PSU3(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusOrders {
    pub q: PrimePower,
    pub d: u64,
    pub orders: [u64; 3],
}

pub fn maximal_tori_psu3(q: PrimePower) -> TorusOrders {
    let v = q.value();
    let d = psu3_d(q);
    TorusOrders {
        q,
        d,
        orders: [(v * v - 1) / d, (v + 1) * (v + 1) / d, (v * v - v + 1) / d],
    }
}

/// Odd order components of a group, each value factored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddComponentSet {
    pub group: SimpleGroupId,
    pub values: Vec<FactoredInteger>,
}

impl OddComponentSet {
    pub fn plain_values(&self) -> Vec<u128> {
        self.values.iter().filter_map(|v| v.to_u128()).collect()
    }
}

fn ipow(base: u64, exp: u32) -> Result<u128, NtError> {
    (base as u128).checked_pow(exp).ok_or(NtError::Overflow)
}

fn isqrt_exact(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn is_power_of_two_at_least(n: u32, min: u32) -> bool {
    n >= min && n.is_power_of_two()
}

/// Odd order components as plain integers, without factoring them.
///
/// Fails with [`NtError::Overflow`] (wrapped) when a value leaves `u128`.
pub fn odd_component_values(id: &SimpleGroupId) -> Result<Vec<u128>, OrderError> {
    use SimpleGroupId::*;
    id.validate()?;
    let out_of_scope = || Err(OrderError::OutOfScope(id.to_string()));
    let vals: Vec<u128> = match *id {
        Alt { n } => alternating_odd_components(n),
        Psl { n: 2, q } => {
            let v = q.value() as u128;
            if q.p() == 2 {
                vec![v - 1, v + 1]
            } else if v % 4 == 1 {
                vec![v, (v + 1) / 2]
            } else {
                vec![v, (v - 1) / 2]
            }
        }
        Psl { n: 3, q } if q.value() == 2 => vec![3, 7],
        Psl { n: 3, q } if q.value() == 4 => vec![3, 5, 7],
        Psl { n, q } if is_prime(n as u64) => {
            let v = q.value();
            vec![(ipow(v, n)? - 1) / ((v as u128 - 1) * gcd(n as u64, v - 1) as u128)]
        }
        Psl { n, q } if is_prime(n as u64 - 1) && (n as u64) % (q.value() - 1) == 0 => {
            let v = q.value();
            vec![(ipow(v, n - 1)? - 1) / (v as u128 - 1)]
        }
        Psu { n: 4, q } if q.value() == 2 => vec![5],
        Psu { n: 6, q } if q.value() == 2 => vec![7, 11],
        Psu { n, q } if is_prime(n as u64) => {
            let v = q.value();
            vec![(ipow(v, n)? + 1) / ((v as u128 + 1) * gcd(n as u64, v + 1) as u128)]
        }
        Psu { n, q } if is_prime(n as u64 - 1) && (n as u64) % (q.value() + 1) == 0 => {
            let v = q.value();
            vec![(ipow(v, n - 1)? + 1) / (v as u128 + 1)]
        }
        Suzuki { q } => {
            let v = q.value() as u128;
            let r = isqrt_exact(2 * v);
            vec![v - 1, v - r + 1, v + r + 1]
        }
        Ree2G2 { q } => {
            let v = q.value() as u128;
            let r = isqrt_exact(3 * v);
            vec![v - r + 1, v + r + 1]
        }
        Ree2F4 { q } => {
            let v = q.value() as u128;
            let a = isqrt_exact(2 * v * v * v);
            let b = isqrt_exact(2 * v);
            vec![v * v - a + v - b + 1, v * v + a + v + b + 1]
        }
        G2 { q } => {
            let v = q.value() as u128;
            match v % 3 {
                0 => vec![v * v - v + 1, v * v + v + 1],
                1 => vec![v * v - v + 1],
                _ => vec![v * v + v + 1],
            }
        }
        B { n, q } if q.p() != 2 && is_power_of_two_at_least(n, 4) => {
            vec![(ipow(q.value(), n)? + 1) / 2]
        }
        B { n, q } if q.value() == 3 && n >= 3 && is_prime(n as u64) => {
            vec![(ipow(3, n)? - 1) / 2]
        }
        C { n, q } if is_power_of_two_at_least(n, 2) => {
            vec![(ipow(q.value(), n)? + 1) / gcd(2, q.value() - 1) as u128]
        }
        C { n, q } if n >= 3 && is_prime(n as u64) && matches!(q.value(), 2 | 3) => {
            vec![(ipow(q.value(), n)? - 1) / gcd(2, q.value() - 1) as u128]
        }
        D { n, q } if n >= 5 && is_prime(n as u64) && matches!(q.value(), 2 | 3 | 5) => {
            vec![(ipow(q.value(), n)? - 1) / (q.value() as u128 - 1)]
        }
        D { n, q } if n >= 4 && is_prime(n as u64 - 1) && matches!(q.value(), 2 | 3) => {
            vec![(ipow(q.value(), n - 1)? - 1) / (q.value() as u128 - 1)]
        }
        TwistedD { n, q } if is_power_of_two_at_least(n, 4) => {
            vec![(ipow(q.value(), n)? + 1) / gcd(2, q.value() + 1) as u128]
        }
        TwistedD { n, q } if q.value() == 2 && n >= 5 && (n - 1).is_power_of_two() => {
            vec![ipow(2, n - 1)? + 1]
        }
        TwistedD { n, q } if q.value() == 3 && n >= 5 => {
            let two_m_plus_one = (n - 1).is_power_of_two();
            match (is_prime(n as u64), two_m_plus_one) {
                (true, false) => vec![(ipow(3, n)? + 1) / 4],
                (true, true) => vec![(ipow(3, n - 1)? + 1) / 2, (ipow(3, n)? + 1) / 4],
                (false, true) => vec![(ipow(3, n - 1)? + 1) / 2],
                (false, false) => return out_of_scope(),
            }
        }
        TriD4 { q } => {
            let v = q.value() as u128;
            vec![ipow(q.value(), 4)? - v * v + 1]
        }
        F4 { q } => {
            let v = q.value() as u128;
            let q4 = ipow(q.value(), 4)?;
            if q.p() == 2 {
                vec![q4 + 1, q4 - v * v + 1]
            } else {
                vec![q4 - v * v + 1]
            }
        }
        E6 { q } => {
            let q3 = ipow(q.value(), 3)?;
            vec![(q3 * q3 + q3 + 1) / gcd(3, q.value() - 1) as u128]
        }
        TwistedE6 { q } if q.value() == 2 => vec![13, 17, 19],
        TwistedE6 { q } => {
            let q3 = ipow(q.value(), 3)?;
            vec![(q3 * q3 - q3 + 1) / gcd(3, q.value() + 1) as u128]
        }
        E7 { q } if q.value() == 2 => vec![73, 127],
        E7 { q } if q.value() == 3 => vec![757, 1093],
        E8 { q } => {
            let v = q.value() as u128;
            let q4 = ipow(q.value(), 4)?;
            let q5 = ipow(q.value(), 5)?;
            let q10 = q5.checked_mul(q5).ok_or(NtError::Overflow)?;
            let mut vals = vec![
                q4 * q4 - q4 + 1,
                (q10 + q5 + 1) / (v * v + v + 1),
                (q10 - q5 + 1) / (v * v - v + 1),
            ];
            if matches!(v % 5, 2 | 3) {
                vals.push((q10 + 1) / (v * v + 1));
            }
            vals
        }
        Sporadic { name } => name
            .data()
            .odd_components
            .iter()
            .map(|&v| v as u128)
            .collect(),
        _ => return out_of_scope(),
    };
    Ok(vals)
}

/// Odd order components, factored.
pub fn family_odd_components(id: &SimpleGroupId) -> Result<OddComponentSet, OrderError> {
    let values = odd_component_values(id)?
        .into_iter()
        .map(|v| {
            let v = u64::try_from(v).map_err(|_| NtError::Overflow)?;
            FactoredInteger::from_u64(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OddComponentSet { group: *id, values })
}

/// Prime-graph components of `A_n` computed from cycle types: odd primes
/// `r, s` are adjacent iff `r + s <= n`, and `2 ~ r` iff `r + 4 <= n`.
pub fn alternating_prime_components(n: u32) -> Vec<Vec<u64>> {
    let primes = crate::ntheory::primes_up_to(n as u64);
    let adjacent = |r: u64, s: u64| {
        let (lo, hi) = (r.min(s), r.max(s));
        if lo == 2 {
            hi + 4 <= n as u64
        } else {
            r + s <= n as u64
        }
    };
    let mut comp: Vec<usize> = (0..primes.len()).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        if c[i] != i {
            let root = find(c, c[i]);
            c[i] = root;
        }
        c[i]
    }
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if adjacent(primes[i], primes[j]) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<u64>> = Default::default();
    for i in 0..primes.len() {
        let root = find(&mut comp, i);
        groups.entry(root).or_default().push(primes[i]);
    }
    let mut out: Vec<Vec<u64>> = groups.into_values().collect();
    out.sort();
    out
}

fn alternating_odd_components(n: u32) -> Vec<u128> {
    let order = order_alt(n);
    alternating_prime_components(n)
        .into_iter()
        .filter(|c| !c.contains(&2))
        .map(|c| {
            c.iter()
                .map(|&r| (r as u128).pow(order.exponent_of(r)))
                .product()
        })
        .collect()
}

/// Odd components of `A_{p'}`, `A_{p'+1}` and `A_{p'+2}` for an odd prime `p'`.
pub fn alternating_odd_components_for_prime(p_prime: u64) -> Vec<(u32, Vec<u128>)> {
    (0..3)
        .map(|k| p_prime as u32 + k)
        .filter(|&n| n >= 5)
        .map(|n| (n, alternating_odd_components(n)))
        .collect()
}

/// The eight simple groups whose order has exactly three prime divisors.
pub fn k3_groups() -> Vec<SimpleGroupId> {
    let pp = |v| PrimePower::new(v).expect("prime power");
    vec![
        SimpleGroupId::Alt { n: 5 },
        SimpleGroupId::Alt { n: 6 },
        SimpleGroupId::Psl { n: 2, q: pp(7) },
        SimpleGroupId::Psl { n: 2, q: pp(8) },
        SimpleGroupId::Psl { n: 2, q: pp(17) },
        SimpleGroupId::Psl { n: 3, q: pp(3) },
        SimpleGroupId::Psu { n: 3, q: pp(3) },
        SimpleGroupId::Psu { n: 4, q: pp(2) },
    ]
}
