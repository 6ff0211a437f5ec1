//! Primality, factorization and small helpers over `u64`.

use super::NtError;

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These twelve bases are sufficient for every n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Canonical factorization as `(prime, exponent)` pairs with strictly increasing primes.
pub fn factor_pairs(n: u64) -> Result<Vec<(u64, u32)>, NtError> {
    if n == 0 {
        return Err(NtError::Zero);
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut big = Vec::new();
        split_large(rest, &mut big);
        big.sort_unstable();
        for r in big {
            match pairs.last_mut() {
                Some((last, e)) if *last == r => *e += 1,
                _ => pairs.push((r, 1)),
            }
        }
    }
    Ok(pairs)
}

/// The distinct primes dividing `n`, ascending.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>, NtError> {
    Ok(factor_pairs(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `(m)_p`: the largest power of `p` dividing `m`.
pub fn p_part(m: u64, p: u64) -> Result<u64, NtError> {
    if m == 0 {
        return Err(NtError::Zero);
    }
    if !is_prime(p) {
        return Err(NtError::NotPrime(p));
    }
    let mut m = m;
    let mut part = 1;
    while m % p == 0 {
        m /= p;
        part *= p;
    }
    Ok(part)
}

/// `e(r, q)`: the multiplicative order of `q` modulo the prime `r`, with the
/// convention `e(2, q) = 1` for `q = 1 (mod 4)` and `2` for `q = -1 (mod 4)`.
pub fn mult_order(r: u64, q: u64) -> Result<u64, NtError> {
    if !is_prime(r) {
        return Err(NtError::NotPrime(r));
    }
    if q == 0 || gcd(r, q) != 1 {
        return Err(NtError::NotCoprime { r, q });
    }
    if r == 2 {
        return Ok(if q % 4 == 1 { 1 } else { 2 });
    }
    let mut order = r - 1;
    for (f, _) in factor_pairs(r - 1)? {
        while order % f == 0 && pow_mod(q, order / f, r) == 1 {
            order /= f;
        }
    }
    Ok(order)
}

/// Returns `(p, alpha)` when `n = p^alpha` with `alpha >= 1`.
pub fn prime_power_decompose(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factor_pairs(n).ok()?.as_slice() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power_decompose(n).is_some()
}

/// Primes of the form `2^(2^k) + 1`.
pub fn is_fermat_prime(n: u64) -> bool {
    n >= 3 && (n - 1).is_power_of_two() && is_prime(n) && (n - 1).trailing_zeros().is_power_of_two()
}

/// Primes of the form `2^k - 1`.
pub fn is_mersenne_prime(n: u64) -> bool {
    n >= 3 && (n + 1).is_power_of_two() && is_prime(n)
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_pairs(1).unwrap(), vec![]);
        assert_eq!(
            factor_pairs(42_573_600).unwrap(),
            vec![(2, 5), (3, 6), (5, 2), (73, 1)]
        );
        assert_eq!(factor_pairs(62_400).unwrap(), trial_division(62_400));
        assert_eq!(
            factor_pairs(62_400).unwrap(),
            vec![(2, 6), (3, 1), (5, 2), (13, 1)]
        );
        assert_eq!(factor_pairs(0), Err(NtError::Zero));
    }

    #[test]
    fn factor_beyond_trial_limit() {
        // 1000003 * 1000033 and a 64-bit prime
        assert_eq!(
            factor_pairs(1_000_003 * 1_000_033).unwrap(),
            vec![(1_000_003, 1), (1_000_033, 1)]
        );
        let p = 18_446_744_073_709_551_557;
        assert!(is_prime(p));
        assert_eq!(factor_pairs(p).unwrap(), vec![(p, 1)]);
    }

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part(126, 3).unwrap(), 9);
        assert_eq!(p_part(7, 2).unwrap(), 1);
        assert_eq!(p_part(48, 2).unwrap(), 16);
        assert!(p_part(0, 2).is_err());
        assert!(p_part(12, 4).is_err());
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 5).unwrap(), 1);
        assert_eq!(mult_order(2, 7).unwrap(), 2);
        assert_eq!(mult_order(7, 2).unwrap(), 3);
        assert_eq!(mult_order(13, 4).unwrap(), 6);
        assert!(mult_order(3, 9).is_err());
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn fermat_and_mersenne() {
        let fermat: Vec<u64> = (1..70000).filter(|&n| is_fermat_prime(n)).collect();
        assert_eq!(fermat, vec![3, 5, 17, 257, 65537]);
        let mersenne: Vec<u64> = (1..10000).filter(|&n| is_mersenne_prime(n)).collect();
        assert_eq!(mersenne, vec![3, 7, 31, 127, 8191]);
    }
}
