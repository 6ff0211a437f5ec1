//! Finite fields `GF(p^k)` with log/exp multiplication tables.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of its residue polynomial; the encoding doubles as the fixed total order
//! used for canonical forms.

use serde::{Deserialize, Serialize};

use super::BruteError;
use crate::ntheory::is_prime;

pub type Elem = u16;

const MAX_SIZE: u64 = 1 << 16;
const ADD_TABLE_LIMIT: usize = 1 << 10;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    k: u32,
    size: usize,
    /// Monic modulus, coefficients low to high including the leading 1.
    modulus: Vec<u64>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<Elem>>,
}

/// Serializable identity of a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            let t = &mut a[shift + i];
            *t = (*t + p - lead * c % p) % p;
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// All monic polynomials of degree `d`, ordered by their non-leading
/// coefficients read from high degree to low.
fn monic_polys(p: u64, d: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u64; d as usize + 1];
        coeffs[d as usize] = 1;
        for i in 0..d as usize {
            coeffs[i] = idx % p;
            idx /= p;
        }
        coeffs
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem(f.to_vec(), &g, p).is_empty()))
}

/// The least monic irreducible polynomial of degree `k` over `GF(p)`.
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self, BruteError> {
        if !is_prime(p) {
            return Err(BruteError::NotPrime(p));
        }
        if k == 0 || p.checked_pow(k).map_or(true, |s| s > MAX_SIZE) {
            return Err(BruteError::FieldTooLarge { p, k });
        }
        Self::with_modulus(p, k, least_irreducible(p, k))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self, BruteError> {
        if !is_prime(spec.p) {
            return Err(BruteError::NotPrime(spec.p));
        }
        if spec.modulus.len() != spec.k as usize + 1 || !is_irreducible(&spec.modulus, spec.p) {
            return Err(BruteError::BadModulus);
        }
        Self::with_modulus(spec.p, spec.k, spec.modulus.clone())
    }

    fn with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self, BruteError> {
        let size = p.pow(k) as usize;
        let mut field = FiniteField {
            p,
            k,
            size,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
        };
        field.build_tables();
        Ok(field)
    }

    fn digits(&self, mut x: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(x as u64 % self.p);
            x /= self.p as Elem;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> Elem {
        digits.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as Elem
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.encode(&r)
    }

    fn digit_add(&self, a: Elem, b: Elem) -> Elem {
        let s: Vec<u64> = self
            .digits(a)
            .iter()
            .zip(self.digits(b))
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.encode(&s)
    }

    fn build_tables(&mut self) {
        let n = self.size - 1;
        let generator = (1..self.size as Elem)
            .find(|&g| {
                let mut x: Elem = 1;
                for i in 1..=n {
                    x = self.slow_mul(x, g);
                    if x == 1 {
                        return i == n;
                    }
                }
                false
            })
            .expect("the multiplicative group is cyclic");
        self.exp = Vec::with_capacity(2 * n);
        self.log = vec![0; self.size];
        let mut x: Elem = 1;
        for i in 0..n {
            self.exp.push(x);
            self.log[x as usize] = i as u32;
            x = self.slow_mul(x, generator);
        }
        let head: Vec<Elem> = self.exp.clone();
        self.exp.extend(head);
        if self.size <= ADD_TABLE_LIMIT {
            let mut table = vec![0; self.size * self.size];
            for a in 0..self.size {
                for b in 0..self.size {
                    table[a * self.size + b] = self.digit_add(a as Elem, b as Elem);
                }
            }
            self.add = Some(table);
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive(&self) -> Elem {
        self.exp[1 % (self.size - 1).max(1)]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add {
            Some(t) => t[a as usize * self.size + b as usize],
            None => self.digit_add(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = (self.size - 1) as u32;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = (self.size - 1) as u64;
        Some(n / crate::ntheory::gcd(self.log[a as usize] as u64, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.add(1, 1), 0);
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let f = FiniteField::new(2, 4).unwrap();
        assert_eq!(f.size(), 16);
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 17).is_err());
    }

    #[test]
    fn inverses_and_orders() {
        let f = FiniteField::new(5, 2).unwrap();
        for a in 1..25 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, f.order(a).unwrap()), 1);
        }
        assert_eq!(f.order(f.primitive()), Some(24));
    }
}
