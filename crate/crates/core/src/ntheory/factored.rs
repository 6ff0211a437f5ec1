use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::primes::{factor_pairs, is_prime, prime_power_decompose};
use super::NtError;

/// A positive integer held together with its prime factorization.
///
/// The value itself can exceed every machine word (orders of `E8(q')` do), so
/// it is materialized on demand through [`FactoredInteger::value`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FactoredInteger {
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Result<Self, NtError> {
        Ok(Self {
            factors: factor_pairs(n)?,
        })
    }

    /// Strips small primes until the cofactor fits a `u64`; fails with
    /// [`NtError::Overflow`] if it never does.
    pub fn from_u128(n: u128) -> Result<Self, NtError> {
        if let Ok(small) = u64::try_from(n) {
            return Self::from_u64(small);
        }
        let mut rest = n;
        let mut pairs = Vec::new();
        let mut p = 2u128;
        while rest > u64::MAX as u128 {
            if p > 1 << 24 {
                return Err(NtError::Overflow);
            }
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                pairs.push((p as u64, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        pairs.extend(factor_pairs(rest as u64)?);
        Self::from_pairs(pairs)
    }

    /// Builds from prime/exponent pairs; order does not matter and repeated
    /// primes are merged. Rejects composite "primes".
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self, NtError> {
        let mut map: BTreeMap<u64, u32> = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(NtError::NotPrime(p));
            }
            if e > 0 {
                *map.entry(p).or_default() += e;
            }
        }
        Ok(Self {
            factors: map.into_iter().collect(),
        })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `pi(n)`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(r, _)| r == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for &(p, e) in &self.factors {
            acc = acc.checked_mul((p as u128).checked_pow(e)?)?;
        }
        Some(acc)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_u128()?.to_u64()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<u64, u32> = self.factors.iter().copied().collect();
        for &(p, e) in &other.factors {
            *map.entry(p).or_default() += e;
        }
        Self {
            factors: map.into_iter().collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .filter(|_| k > 0)
                .map(|&(p, e)| (p, e * k))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|&(p, e)| other.exponent_of(p) >= e)
    }

    /// Exact quotient `self / other`.
    pub fn checked_div(&self, other: &Self) -> Result<Self, NtError> {
        if !other.divides(self) {
            return Err(NtError::NotDivisible);
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let left = e - other.exponent_of(p);
                (left > 0).then_some((p, left))
            })
            .collect();
        Ok(Self { factors })
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let m = e.min(other.exponent_of(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        Self { factors }
    }

    /// `(m)_p`, factored.
    pub fn p_part(&self, p: u64) -> Self {
        let e = self.exponent_of(p);
        Self {
            factors: if e > 0 { vec![(p, e)] } else { vec![] },
        }
    }

    /// Product expression such as `2^5 * 3^6 * 5^2 * 73`.
    pub fn pretty(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A prime power `q = p^alpha` with `alpha >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    alpha: u32,
    value: u64,
}

impl PrimePower {
    pub fn new(value: u64) -> Result<Self, NtError> {
        let (p, alpha) = prime_power_decompose(value).ok_or(NtError::NotPrimePower(value))?;
        Ok(Self { p, alpha, value })
    }

    pub fn from_parts(p: u64, alpha: u32) -> Result<Self, NtError> {
        if !is_prime(p) {
            return Err(NtError::NotPrime(p));
        }
        if alpha == 0 {
            return Err(NtError::NotPrimePower(1));
        }
        let value = p.checked_pow(alpha).ok_or(NtError::Overflow)?;
        Ok(Self { p, alpha, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// The unique `q0` with `q0^ell = q`, when `ell | alpha`.
    pub fn root(&self, ell: u32) -> Option<Self> {
        (ell > 0 && self.alpha % ell == 0).then(|| Self {
            p: self.p,
            alpha: self.alpha / ell,
            value: self.p.pow(self.alpha / ell),
        })
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_on_factored() {
        let a = FactoredInteger::from_u64(360).unwrap();
        let b = FactoredInteger::from_u64(84).unwrap();
        assert_eq!(a.mul(&b).to_u64(), Some(360 * 84));
        assert_eq!(a.gcd(&b).to_u64(), Some(12));
        assert_eq!(
            a.checked_div(&FactoredInteger::from_u64(8).unwrap())
                .unwrap()
                .to_u64(),
            Some(45)
        );
        assert!(a.checked_div(&b).is_err());
        assert_eq!(a.pretty(), "2^3 * 3^2 * 5");
        assert_eq!(FactoredInteger::one().pretty(), "1");
    }

    #[test]
    fn prime_power_parts() {
        let q = PrimePower::new(64).unwrap();
        assert_eq!((q.p(), q.alpha()), (2, 6));
        assert_eq!(q.root(3).unwrap().value(), 4);
        assert!(q.root(4).is_none());
        assert!(PrimePower::new(12).is_err());
        assert!(PrimePower::new(1).is_err());
    }
}
