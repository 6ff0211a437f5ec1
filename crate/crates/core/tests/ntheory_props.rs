use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use psu3kit::ntheory::{
    catalan_search, cyclotomic_value, factorize, gcd, is_prime, is_prime_power, mult_order,
    nagell_search, p_part, prime_power_range, primes_up_to, zsigmondy_primes,
};

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let (mut acc, mut base) = (1u128, b as u128 % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    (acc % m) as u64
}

fn big_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(2000))
}

proptest! {
    #[test]
    fn factorize_reconstructs(n in 1u64..=10_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.to_u64(), Some(n));
        prop_assert!(f.primes().iter().all(|&p| is_prime(p)));
        prop_assert!(f.primes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn p_part_is_maximal(m in 1u64..=1_000_000_000, p in small_prime()) {
        let part = p_part(m, p).unwrap();
        prop_assert_eq!(m % part, 0);
        prop_assert_ne!((m / part) % p, 0);
        prop_assert!(is_prime_power(part) || part == 1);
    }

    #[test]
    fn mult_order_is_least_and_controls_divisibility(
        r in small_prime(),
        q in 2u64..100_000,
        n in 1u64..500,
    ) {
        prop_assume!(r > 2 && q % r != 0);
        let e = mult_order(r, q).unwrap();
        prop_assert_eq!(pow_mod(q, e, r), 1);
        prop_assert!((1..e).all(|k| pow_mod(q, k, r) != 1));
        prop_assert_eq!(pow_mod(q, n, r) == 1, n % e == 0);
    }

    #[test]
    fn gcd_of_power_differences(a in 2u64..=50, m in 1u32..=30, n in 1u32..=30) {
        let one = BigUint::one();
        let big = |k: u32| BigUint::from(a).pow(k) - &one;
        let g = gcd(m as u64, n as u64) as u32;
        prop_assert_eq!(big_gcd(big(m), big(n)), big(g));
    }

    #[test]
    fn common_multiple_divides(z in 1u64..=10_000_000, a in 1u64..=10_000_000, b in 1u64..=10_000_000) {
        let (x, y) = (gcd(z, a), gcd(z, b));
        prop_assert_eq!(z % (x / gcd(x, y) * y), 0);
    }

    #[test]
    fn cyclotomic_product_is_power_minus_one(x in 2u64..=50, n in 1u64..=30) {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .fold(BigUint::one(), |acc, d| acc * cyclotomic_value(d, x));
        prop_assert_eq!(prod, BigUint::from(x).pow(n as u32) - BigUint::one());
    }

    #[test]
    fn prime_power_range_matches_filter(limit in 2u64..5000) {
        let got: Vec<u64> = prime_power_range(limit).iter().map(|q| q.value()).collect();
        let want: Vec<u64> = (2..=limit).filter(|&v| is_prime_power(v)).collect();
        prop_assert_eq!(got, want);
    }
}

/// Zsigmondy primes against the definition, for `p <= 13`, `n <= 20`:
/// each listed prime has multiplicative order exactly `n`, and the primes
/// listed for the divisors of `n` exhaust `p^n - 1`.
#[test]
fn zsigmondy_matches_definition() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1u32..=20 {
            let mut rest = (p as u128).pow(n) - 1;
            for m in (1..=n).filter(|m| n % m == 0) {
                for r in zsigmondy_primes(p, m).unwrap() {
                    let rr = r as u128;
                    let pow = |k: u32| ((p as u128).pow(k) - 1) % rr;
                    assert_eq!(pow(m), 0, "{r} does not divide {p}^{m} - 1");
                    assert!(
                        (1..m).all(|k| pow(k) != 0),
                        "{r} divides an earlier {p}^k - 1"
                    );
                    assert!(rest % rr == 0);
                    while rest % rr == 0 {
                        rest /= rr;
                    }
                }
            }
            assert_eq!(rest, 1, "{p}^{n} - 1 has primes no Zsigmondy set lists");
        }
    }
}

#[test]
fn bounded_searches_return_true_solutions() {
    for s in catalan_search(200, 20) {
        let lhs = BigUint::from(s.p).pow(s.m);
        assert_eq!(lhs, BigUint::from(s.q).pow(s.n) + BigUint::one());
    }
    let sols = nagell_search(300, 8);
    assert!(sols.iter().all(|s| s.holds()));
    assert!(sols.iter().any(|s| (s.p, s.m, s.q, s.n) == (3, 5, 11, 2)));
}
