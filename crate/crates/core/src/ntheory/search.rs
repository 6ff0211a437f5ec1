//! Bounded searches for the two exceptional exponential equations.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::primes::primes_up_to;

/// A solution of `p^m - q^n = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatalanSolution {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub n: u32,
}

/// A solution of `p^m - 2 q^n = sign`, `sign` in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionalSolution {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub n: u32,
    pub sign: i8,
}

impl ExceptionalSolution {
    pub fn both_exponents_two(&self) -> bool {
        self.m == 2 && self.n == 2
    }

    /// Re-evaluates the defining equation with exact integers.
    pub fn holds(&self) -> bool {
        let lhs = BigUint::from(self.p).pow(self.m);
        let rhs = BigUint::from(2u32) * BigUint::from(self.q).pow(self.n);
        match self.sign {
            1 => lhs == rhs + BigUint::one(),
            -1 => lhs + BigUint::one() == rhs,
            _ => false,
        }
    }
}

/// `p^m` for every prime `p <= prime_bound` and `2 <= m <= exponent_bound`.
fn power_table(prime_bound: u64, exponent_bound: u32) -> HashMap<BigUint, (u64, u32)> {
    let mut table = HashMap::new();
    for p in primes_up_to(prime_bound) {
        let mut v = BigUint::from(p);
        for m in 2..=exponent_bound {
            v *= p;
            table.insert(v.clone(), (p, m));
        }
    }
    table
}

/// All `(p, m, q, n)` with `p^m - q^n = 1`, primes `p, q <= prime_bound`,
/// exponents `2 <= m, n <= exponent_bound`.
pub fn catalan_search(prime_bound: u64, exponent_bound: u32) -> Vec<CatalanSolution> {
    let table = power_table(prime_bound, exponent_bound);
    let mut out = Vec::new();
    for q in primes_up_to(prime_bound) {
        let mut v = BigUint::from(q);
        for n in 2..=exponent_bound {
            v *= q;
            if let Some(&(p, m)) = table.get(&(&v + BigUint::one())) {
                out.push(CatalanSolution { p, m, q, n });
            }
        }
    }
    out.sort();
    out
}

/// All solutions of `p^m - 2 q^n = +-1` within the bounds, exponents `>= 2`.
pub fn nagell_search(prime_bound: u64, exponent_bound: u32) -> Vec<ExceptionalSolution> {
    let table = power_table(prime_bound, exponent_bound);
    let mut out = Vec::new();
    for q in primes_up_to(prime_bound) {
        let mut v = BigUint::from(q);
        for n in 2..=exponent_bound {
            v *= q;
            let twice = &v * 2u32;
            if let Some(&(p, m)) = table.get(&(&twice + BigUint::one())) {
                out.push(ExceptionalSolution {
                    p,
                    m,
                    q,
                    n,
                    sign: 1,
                });
            }
            if let Some(&(p, m)) = table.get(&(&twice - BigUint::one())) {
                out.push(ExceptionalSolution {
                    p,
                    m,
                    q,
                    n,
                    sign: -1,
                });
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_catalan(bound: u64, e: u32) -> Vec<CatalanSolution> {
        let primes = primes_up_to(bound);
        let mut out = Vec::new();
        for &p in &primes {
            for m in 2..=e {
                for &q in &primes {
                    for n in 2..=e {
                        let (a, b) = (BigUint::from(p).pow(m), BigUint::from(q).pow(n));
                        if a == b + BigUint::one() {
                            out.push(CatalanSolution { p, m, q, n });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn catalan_examples() {
        let only = vec![CatalanSolution {
            p: 3,
            m: 2,
            q: 2,
            n: 3,
        }];
        assert_eq!(catalan_search(1000, 30), only);
        assert_eq!(catalan_search(5, 2), vec![]);
        assert_eq!(catalan_search(100, 10), brute_catalan(100, 10));
        assert_eq!(catalan_search(100, 10), only);
    }

    #[test]
    fn nagell_exceptions_present() {
        let sols = nagell_search(239, 4);
        assert!(sols.contains(&ExceptionalSolution {
            p: 239,
            m: 2,
            q: 13,
            n: 4,
            sign: -1
        }));
        let sols = nagell_search(11, 5);
        assert!(sols.contains(&ExceptionalSolution {
            p: 3,
            m: 5,
            q: 11,
            n: 2,
            sign: 1
        }));
        for s in nagell_search(1000, 10) {
            assert!(s.holds());
            let exceptional =
                (s.p, s.m, s.q, s.n) == (239, 2, 13, 4) || (s.p, s.m, s.q, s.n) == (3, 5, 11, 2);
            assert!(exceptional || s.both_exponents_two(), "{s:?}");
        }
    }
}
