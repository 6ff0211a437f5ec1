//! Exact integer number theory used throughout the toolkit.

mod factored;
mod primes;
mod search;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

pub use factored::{FactoredInteger, PrimePower};
pub use primes::{
    factor_pairs, gcd, gcd_u128, is_fermat_prime, is_mersenne_prime, is_prime, is_prime_power,
    mult_order, p_part, prime_divisors, prime_power_decompose, primes_up_to,
};
pub use search::{catalan_search, nagell_search, CatalanSolution, ExceptionalSolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NtError {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("gcd({r}, {q}) != 1")]
    NotCoprime { r: u64, q: u64 },
    #[error("value does not fit the supported integer width")]
    Overflow,
    #[error("quotient is not exact")]
    NotDivisible,
}

pub fn factorize(n: u64) -> Result<FactoredInteger, NtError> {
    FactoredInteger::from_u64(n)
}

fn mobius(n: u64) -> i32 {
    let pairs = factor_pairs(n).expect("n >= 1");
    if pairs.iter().any(|&(_, e)| e > 1) {
        0
    } else if pairs.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..)
        .take_while(|d| d * d <= n)
        .filter(|d| n % d == 0)
        .collect();
    let mut big: Vec<u64> = out
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&e| e * e != n)
        .collect();
    out.append(&mut big);
    out
}

/// `Phi_n(x)` evaluated exactly, `x >= 2`.
pub fn cyclotomic_value(n: u64, x: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let xb = BigUint::from(x);
    for d in divisors(n) {
        let term = xb.pow(d as u32) - BigUint::one();
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Factored `Phi_n(x)`. Values past 64 bits are accepted when small primes
/// bring the cofactor back into range; see [`FactoredInteger::from_u128`].
pub fn cyclotomic_factored(n: u64, x: u64) -> Result<FactoredInteger, NtError> {
    let v = cyclotomic_value(n, x).to_u128().ok_or(NtError::Overflow)?;
    FactoredInteger::from_u128(v)
}

/// Factored `x^n - 1`, assembled from cyclotomic values so that only
/// moderately sized integers are ever factored.
pub fn pow_minus_one(x: u64, n: u32) -> Result<FactoredInteger, NtError> {
    let mut acc = FactoredInteger::one();
    for d in divisors(n as u64) {
        acc = acc.mul(&cyclotomic_factored(d, x)?);
    }
    Ok(acc)
}

/// Factored `x^n + 1`.
pub fn pow_plus_one(x: u64, n: u32) -> Result<FactoredInteger, NtError> {
    let two_n = 2 * n as u64;
    let mut acc = FactoredInteger::one();
    for d in divisors(two_n) {
        if (n as u64) % d != 0 {
            acc = acc.mul(&cyclotomic_factored(d, x)?);
        }
    }
    Ok(acc)
}

/// Primes `r` dividing `base^n - 1` but no `base^m - 1` with `1 <= m < n`.
pub fn primitive_prime_divisors(base: u64, n: u32) -> Result<Vec<u64>, NtError> {
    if base < 2 || n == 0 {
        return Ok(Vec::new());
    }
    let phi = cyclotomic_factored(n as u64, base)?;
    Ok(phi
        .primes()
        .into_iter()
        .filter(|&r| base % r != 0 && multiplicative_order_plain(base % r, r) == n as u64)
        .collect())
}

fn multiplicative_order_plain(a: u64, r: u64) -> u64 {
    if r == 2 {
        return 1;
    }
    let mut k = 1;
    let mut x = a % r;
    while x != 1 {
        x = (x as u128 * a as u128 % r as u128) as u64;
        k += 1;
    }
    k
}

/// The Zsigmondy (primitive) primes of `p^n - 1` for a prime `p`.
pub fn zsigmondy_primes(p: u64, n: u32) -> Result<Vec<u64>, NtError> {
    if !is_prime(p) {
        return Err(NtError::NotPrime(p));
    }
    primitive_prime_divisors(p, n)
}

/// Every prime power `<= limit`, ascending.
pub fn prime_power_range(limit: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in primes_up_to(limit) {
        let mut v = p;
        let mut a = 1;
        loop {
            out.push(PrimePower::from_parts(p, a).expect("prime"));
            match v.checked_mul(p) {
                Some(w) if w <= limit => {
                    v = w;
                    a += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_by_key(|q| q.value());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_value(1, 5), BigUint::from(4u32));
        assert_eq!(cyclotomic_value(6, 2), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(12, 3), BigUint::from(73u32));
        assert_eq!(pow_minus_one(8, 3).unwrap().to_u64(), Some(511));
        assert_eq!(pow_plus_one(9, 3).unwrap().to_u64(), Some(730));
        assert_eq!(pow_plus_one(2, 5).unwrap().to_u64(), Some(33));
    }

    #[test]
    fn zsigmondy_examples() {
        assert!(zsigmondy_primes(2, 6).unwrap().is_empty());
        assert!(zsigmondy_primes(2, 1).unwrap().is_empty());
        assert!(zsigmondy_primes(7, 2).unwrap().is_empty());
        assert!(zsigmondy_primes(2, 10).unwrap().contains(&11));
        assert_eq!(zsigmondy_primes(3, 1).unwrap(), vec![2]);
        assert!(zsigmondy_primes(4, 2).is_err());
        // Phi_19(13) exceeds 64 bits; 12865927 brings it back.
        assert_eq!(
            zsigmondy_primes(13, 19).unwrap(),
            vec![12865927, 9468940004449]
        );
    }

    #[test]
    fn prime_power_range_examples() {
        let v: Vec<u64> = prime_power_range(10).iter().map(|q| q.value()).collect();
        assert_eq!(v, vec![2, 3, 4, 5, 7, 8, 9]);
        let v: Vec<u64> = prime_power_range(2).iter().map(|q| q.value()).collect();
        assert_eq!(v, vec![2]);
        let v: Vec<u64> = prime_power_range(32).iter().map(|q| q.value()).collect();
        assert_eq!(&v[v.len() - 2..], &[31, 32]);
    }
}
