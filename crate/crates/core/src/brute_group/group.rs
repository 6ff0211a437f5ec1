//! `SU_n(q)` and `PSU_n(q)`, `n` in `{2, 3}`, as explicit matrix groups over
//! `GF(q^2)` preserving the antidiagonal hermitian form.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Elem, FiniteField};
use super::BruteError;
use crate::ntheory::{gcd, PrimePower};
use crate::prime_graph::PrimeGraph;

/// Row-major matrix; `2 x 2` matrices use the first four slots.
pub type Mat = [Elem; 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    SU2,
    PSU2,
    SU3,
    PSU3,
}

impl GroupKind {
    pub fn dim(self) -> usize {
        match self {
            GroupKind::SU2 | GroupKind::PSU2 => 2,
            GroupKind::SU3 | GroupKind::PSU3 => 3,
        }
    }

    pub fn projective(self) -> bool {
        matches!(self, GroupKind::PSU2 | GroupKind::PSU3)
    }

    pub fn code(self) -> u8 {
        match self {
            GroupKind::SU2 => 0,
            GroupKind::PSU2 => 1,
            GroupKind::SU3 => 2,
            GroupKind::PSU3 => 3,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        [
            GroupKind::SU2,
            GroupKind::PSU2,
            GroupKind::SU3,
            GroupKind::PSU3,
        ]
        .into_iter()
        .find(|k| k.code() == c)
    }

    /// Order predicted by the closed formula.
    pub fn formula_order(self, q: u64) -> u64 {
        match self {
            GroupKind::SU2 => q * (q * q - 1),
            GroupKind::PSU2 => q * (q * q - 1) / gcd(2, q + 1),
            GroupKind::SU3 => q.pow(3) * (q * q - 1) * (q.pow(3) + 1),
            GroupKind::PSU3 => q.pow(3) * (q * q - 1) * (q.pow(3) + 1) / gcd(3, q + 1),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::SU2 => "SU2",
            GroupKind::PSU2 => "PSU2",
            GroupKind::SU3 => "SU3",
            GroupKind::PSU3 => "PSU3",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "SU2" => Ok(GroupKind::SU2),
            "PSU2" => Ok(GroupKind::PSU2),
            "SU3" => Ok(GroupKind::SU3),
            "PSU3" => Ok(GroupKind::PSU3),
            _ => Err(format!(
                "unknown group kind {s:?} (expected SU2, PSU2, SU3, PSU3)"
            )),
        }
    }
}

/// Matrix arithmetic over `GF(q^2)` with the field's conjugation `x -> x^q`.
#[derive(Clone, Debug)]
pub struct MatrixRing {
    pub field: FiniteField,
    pub n: usize,
    conj: Vec<Elem>,
}

impl MatrixRing {
    pub fn new(field: FiniteField, q: u64, n: usize) -> Self {
        let conj = field.elements().map(|x| field.pow(x, q)).collect();
        MatrixRing { field, n, conj }
    }

    pub fn identity(&self) -> Mat {
        self.scalar(1)
    }

    pub fn scalar(&self, s: Elem) -> Mat {
        let mut m = [0; 9];
        for i in 0..self.n {
            m[i * self.n + i] = s;
        }
        m
    }

    pub fn antidiag(&self) -> Mat {
        let mut m = [0; 9];
        for i in 0..self.n {
            m[i * self.n + (self.n - 1 - i)] = 1;
        }
        m
    }

    #[inline]
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let f = &self.field;
        let mut c = [0; 9];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
                }
                c[i * n + j] = s;
            }
        }
        c
    }

    pub fn scale(&self, s: Elem, a: &Mat) -> Mat {
        let mut c = *a;
        for x in c.iter_mut().take(self.n * self.n) {
            *x = self.field.mul(s, *x);
        }
        c
    }

    /// Conjugate transpose.
    pub fn adjoint(&self, a: &Mat) -> Mat {
        let n = self.n;
        let mut c = [0; 9];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = self.conj[a[j * n + i] as usize];
            }
        }
        c
    }

    pub fn det(&self, a: &Mat) -> Elem {
        let f = &self.field;
        if self.n == 2 {
            return f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2]));
        }
        let m = |i: usize, j: usize| a[i * 3 + j];
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            f.sub(f.mul(m(r1, c1), m(r2, c2)), f.mul(m(r1, c2), m(r2, c1)))
        };
        let t0 = f.mul(m(0, 0), minor(1, 2, 1, 2));
        let t1 = f.mul(m(0, 1), minor(1, 2, 0, 2));
        let t2 = f.mul(m(0, 2), minor(1, 2, 0, 1));
        f.add(f.sub(t0, t1), t2)
    }

    /// `M^* J M = J`.
    pub fn is_unitary(&self, a: &Mat) -> bool {
        let j = self.antidiag();
        self.mul(&self.mul(&self.adjoint(a), &j), a) == j
    }

    /// For unitary `M`, `M^{-1} = J M^* J`.
    pub fn unitary_inverse(&self, a: &Mat) -> Mat {
        let j = self.antidiag();
        self.mul(&self.mul(&j, &self.adjoint(a)), &j)
    }
}

/// An explicitly enumerated matrix group.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub kind: GroupKind,
    pub q: PrimePower,
    pub ring: MatrixRing,
    /// Central scalars, ascending; canonical forms minimize over these.
    pub center: Vec<Elem>,
    pub elements: Vec<Mat>,
    index: HashMap<Mat, u32>,
    pub generators: Vec<u32>,
}

impl GroupTable {
    pub(crate) fn from_parts(
        kind: GroupKind,
        q: PrimePower,
        ring: MatrixRing,
        elements: Vec<Mat>,
        generators: Vec<u32>,
    ) -> Self {
        let center = central_scalars(&ring, kind, q.value());
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        GroupTable {
            kind,
            q,
            ring,
            center,
            elements,
            index,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn canonical(&self, m: &Mat) -> Mat {
        canonical_form(&self.ring, &self.center, m)
    }

    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(&self.canonical(m)).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self
            .ring
            .mul(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&self.canonical(&m)]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let m = self.ring.unitary_inverse(&self.elements[a as usize]);
        self.index[&self.canonical(&m)]
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted element indices of `<gens>`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen: BTreeSet<u32> = BTreeSet::from([self.identity()]);
        let mut queue: VecDeque<u32> = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `pi_e(G)`, ascending.
    pub fn spectrum(&self) -> Vec<u64> {
        let orders: BTreeSet<u64> = (0..self.order() as u32)
            .map(|a| self.element_order(a))
            .collect();
        orders.into_iter().collect()
    }

    pub fn prime_graph(&self) -> PrimeGraph {
        PrimeGraph::from_element_orders(&self.spectrum())
    }
}

fn central_scalars(ring: &MatrixRing, kind: GroupKind, q: u64) -> Vec<Elem> {
    if !kind.projective() {
        return vec![1];
    }
    let n = ring.n as u64;
    let f = &ring.field;
    let mut out: Vec<Elem> = f
        .elements()
        .filter(|&x| x != 0 && f.pow(x, q + 1) == 1 && f.pow(x, n) == 1)
        .collect();
    out.sort_unstable();
    out
}

/// Least matrix in the coset `center * m` under entrywise encoding order.
pub fn canonical_form(ring: &MatrixRing, center: &[Elem], m: &Mat) -> Mat {
    if center.len() == 1 {
        return *m;
    }
    center
        .iter()
        .map(|&s| ring.scale(s, m))
        .min()
        .expect("center contains 1")
}

/// Unitary matrices of determinant 1 matching `shape`: entries marked `None`
/// range over the field, the rest are fixed.
fn search_unitary(ring: &MatrixRing, shape: &[Option<Elem>]) -> Vec<Mat> {
    let free: Vec<usize> = (0..shape.len()).filter(|&i| shape[i].is_none()).collect();
    let size = ring.field.size();
    let total = size.pow(free.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut m = [0; 9];
        for (i, s) in shape.iter().enumerate() {
            m[i] = s.unwrap_or(0);
        }
        for &i in &free {
            m[i] = (code % size) as Elem;
            code /= size;
        }
        if ring.det(&m) == 1 && ring.is_unitary(&m) {
            out.push(m);
        }
    }
    out
}

/// Generator candidates: a diagonal element of maximal order, then pairs of
/// upper and lower unitriangular elements in encoding order.
fn generator_candidates(ring: &MatrixRing) -> Vec<Mat> {
    let f = &ring.field;
    let (diag_shape, upper_shape): (Vec<Option<Elem>>, Vec<Option<Elem>>) = if ring.n == 2 {
        (
            vec![None, Some(0), Some(0), None],
            vec![Some(1), None, Some(0), Some(1)],
        )
    } else {
        (
            vec![
                None,
                Some(0),
                Some(0),
                Some(0),
                None,
                Some(0),
                Some(0),
                Some(0),
                None,
            ],
            vec![
                Some(1),
                None,
                None,
                Some(0),
                Some(1),
                None,
                Some(0),
                Some(0),
                Some(1),
            ],
        )
    };
    let diag_order = |m: &Mat| {
        (0..ring.n)
            .map(|i| f.order(m[i * ring.n + i]).unwrap_or(1))
            .fold(1u64, |a, b| a / gcd(a, b) * b)
    };
    let diagonals = search_unitary(ring, &diag_shape);
    let best = diagonals.iter().map(diag_order).max().unwrap_or(1);
    let mut out: Vec<Mat> = diagonals
        .into_iter()
        .filter(|m| diag_order(m) == best)
        .take(1)
        .collect();
    let j = ring.antidiag();
    let identity = ring.identity();
    for u in search_unitary(ring, &upper_shape)
        .into_iter()
        .filter(|m| *m != identity)
    {
        out.push(u);
        out.push(ring.mul(&ring.mul(&j, &u), &j));
    }
    out
}

/// Builds the group by breadth-first closure from standard generators.
///
/// Generators are added until the closure reaches the formula order; a
/// closure larger than the formula, or one that never reaches it, is an error.
pub fn build_group(kind: GroupKind, q: PrimePower) -> Result<GroupTable, BruteError> {
    let qv = q.value();
    if qv * qv > 256 {
        return Err(BruteError::TooLarge { kind, q: qv });
    }
    let field = FiniteField::new(q.p(), 2 * q.alpha())?;
    let ring = MatrixRing::new(field, qv, kind.dim());
    let center = central_scalars(&ring, kind, qv);
    let target = kind.formula_order(qv) as usize;
    let candidates: Vec<Mat> = generator_candidates(&ring)
        .iter()
        .map(|m| canonical_form(&ring, &center, m))
        .collect();

    let identity = ring.identity();
    let mut elements: Vec<Mat> = vec![identity];
    let mut index: HashMap<Mat, u32> = HashMap::from([(identity, 0)]);
    let mut gens: Vec<Mat> = Vec::new();
    for cand in candidates {
        if index.len() == target {
            break;
        }
        if gens.len() >= 2 && index.contains_key(&cand) {
            continue;
        }
        gens.push(cand);
        // Restart the sweep over all known elements with the enlarged set.
        let mut cursor = 0;
        while cursor < elements.len() {
            let x = elements[cursor];
            for g in &gens {
                let y = canonical_form(&ring, &center, &ring.mul(&x, g));
                if !index.contains_key(&y) {
                    index.insert(y, elements.len() as u32);
                    elements.push(y);
                    if elements.len() > target {
                        return Err(BruteError::OrderMismatch {
                            kind,
                            q: qv,
                            got: elements.len(),
                            expected: target,
                        });
                    }
                }
            }
            cursor += 1;
        }
    }
    if elements.len() != target {
        return Err(BruteError::OrderMismatch {
            kind,
            q: qv,
            got: elements.len(),
            expected: target,
        });
    }
    for m in &elements {
        if !ring.is_unitary(m) {
            return Err(BruteError::NotUnitary);
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(GroupTable::from_parts(kind, q, ring, elements, generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(v: u64) -> PrimePower {
        PrimePower::new(v).unwrap()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(build_group(GroupKind::PSU2, pp(5)).unwrap().order(), 60);
        assert_eq!(build_group(GroupKind::SU2, pp(3)).unwrap().order(), 24);
        assert_eq!(build_group(GroupKind::PSU3, pp(2)).unwrap().order(), 72);
        assert_eq!(build_group(GroupKind::SU3, pp(2)).unwrap().order(), 216);
    }

    #[test]
    fn psu2_5_is_a5() {
        let g = build_group(GroupKind::PSU2, pp(5)).unwrap();
        assert_eq!(g.spectrum(), vec![1, 2, 3, 5]);
        assert!(g.prime_graph().edges().is_empty());
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(
            build_group(GroupKind::PSU3, pp(17)),
            Err(BruteError::TooLarge { .. })
        ));
    }
}
