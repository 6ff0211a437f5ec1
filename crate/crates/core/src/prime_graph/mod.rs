//! Prime graphs: `Gamma(PSU3(q))` from an adjacency witness model, component
//! and independence queries, and the graphs of automorphic extensions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group_orders::{odd_component_psu3, order_psu3};
use crate::ntheory::{gcd, is_prime, prime_divisors, FactoredInteger, PrimePower};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{0} is not a vertex")]
    NotAVertex(u64),
    #[error("self-loop at {0}")]
    SelfLoop(u64),
    #[error("q = {0} is below the supported range")]
    QTooSmall(u64),
    #[error("(3, q + 1) = 1 for q = {0}: there is no diagonal automorphism")]
    NoDiagonal(u64),
    #[error("{ell} does not divide alpha = {alpha}")]
    EllNotDividingAlpha { ell: u64, alpha: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// An undirected simple graph on a set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeGraph {
    vertices: BTreeSet<u64>,
    edges: BTreeSet<(u64, u64)>,
}

fn ordered(r: u64, s: u64) -> (u64, u64) {
    (r.min(s), r.max(s))
}

impl PrimeGraph {
    pub fn new(vertices: impl IntoIterator<Item = u64>) -> Self {
        PrimeGraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn add_edge(&mut self, r: u64, s: u64) -> Result<(), GraphError> {
        if r == s {
            return Err(GraphError::SelfLoop(r));
        }
        for v in [r, s] {
            if !self.vertices.contains(&v) {
                return Err(GraphError::NotAVertex(v));
            }
        }
        self.edges.insert(ordered(r, s));
        Ok(())
    }

    /// `r ~ s` iff `r * s` divides some integer in `witnesses`.
    pub fn from_witnesses(vertices: &[u64], witnesses: &[u64]) -> Self {
        let mut g = PrimeGraph::new(vertices.iter().copied());
        for (i, &r) in vertices.iter().enumerate() {
            for &s in &vertices[i + 1..] {
                if witnesses.iter().any(|&w| w % (r * s) == 0) {
                    g.edges.insert(ordered(r, s));
                }
            }
        }
        g
    }

    /// Prime graph of a group with the given element orders.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let vertices: BTreeSet<u64> = orders
            .iter()
            .filter(|&&m| m > 1)
            .flat_map(|&m| prime_divisors(m).expect("m >= 1"))
            .collect();
        let vertices: Vec<u64> = vertices.into_iter().collect();
        Self::from_witnesses(&vertices, orders)
    }

    pub fn vertices(&self) -> Vec<u64> {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> Vec<(u64, u64)> {
        self.edges.iter().copied().collect()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.vertices.contains(&v)
    }

    pub fn adjacent(&self, r: u64, s: u64) -> bool {
        self.edges.contains(&ordered(r, s))
    }

    pub fn neighbors(&self, r: u64) -> Vec<u64> {
        self.vertices
            .iter()
            .copied()
            .filter(|&s| self.adjacent(r, s))
            .collect()
    }

    /// Connected components, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_clique(&self, set: &[u64]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &r)| set[i + 1..].iter().all(|&s| self.adjacent(r, s)))
    }

    pub fn is_independent(&self, set: &[u64]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &r)| set[i + 1..].iter().all(|&s| !self.adjacent(r, s)))
    }

    /// One line per vertex, `r: s1 s2 ...`, vertices ascending.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for &v in &self.vertices {
            let nbrs: Vec<String> = self.neighbors(v).iter().map(u64::to_string).collect();
            if nbrs.is_empty() {
                let _ = writeln!(out, "{v}:");
            } else {
                let _ = writeln!(out, "{v}: {}", nbrs.join(" "));
            }
        }
        out
    }

    /// The graph with extra edges; endpoints must already be vertices.
    pub fn with_edges(&self, extra: &[(u64, u64)]) -> Result<PrimeGraph, GraphError> {
        let mut g = self.clone();
        for &(r, s) in extra {
            g.add_edge(r, s)?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceData {
    /// Lexicographically least maximum independent set.
    pub rho: Vec<u64>,
    pub t: usize,
    pub required: Option<u64>,
    /// Lexicographically least maximum independent set containing `required`.
    pub rho_required: Option<Vec<u64>>,
    pub t_required: Option<usize>,
    /// Same, containing 2; present iff 2 is a vertex.
    pub rho_2: Option<Vec<u64>>,
}

// Include-first DFS visits equal-size sets in lexicographic order, so keeping
// only strict improvements yields the least maximum set.
fn max_independent(g: &PrimeGraph, pool: &[u64]) -> Vec<u64> {
    fn go(g: &PrimeGraph, pool: &[u64], i: usize, cur: &mut Vec<u64>, best: &mut Vec<u64>) {
        if cur.len() + (pool.len() - i) <= best.len() {
            return;
        }
        if i == pool.len() {
            *best = cur.clone();
            return;
        }
        let v = pool[i];
        if cur.iter().all(|&u| !g.adjacent(u, v)) {
            cur.push(v);
            go(g, pool, i + 1, cur, best);
            cur.pop();
        }
        go(g, pool, i + 1, cur, best);
    }
    let mut best = Vec::new();
    go(g, pool, 0, &mut Vec::new(), &mut best);
    best
}

fn max_independent_containing(g: &PrimeGraph, v: u64) -> Vec<u64> {
    let pool: Vec<u64> = g
        .vertices
        .iter()
        .copied()
        .filter(|&u| u != v && !g.adjacent(u, v))
        .collect();
    let mut set = max_independent(g, &pool);
    set.push(v);
    set.sort_unstable();
    set
}

/// Exact maximum independent sets by branch and bound.
pub fn independence(g: &PrimeGraph, required: Option<u64>) -> Result<IndependenceData, GraphError> {
    if let Some(r) = required {
        if !g.contains(r) {
            return Err(GraphError::NotAVertex(r));
        }
    }
    let rho = max_independent(g, &g.vertices());
    let rho_required = required.map(|r| max_independent_containing(g, r));
    Ok(IndependenceData {
        t: rho.len(),
        rho,
        required,
        t_required: rho_required.as_ref().map(Vec::len),
        rho_required,
        rho_2: g.contains(2).then(|| max_independent_containing(g, 2)),
    })
}

/// Integers whose divisors `r * s` define adjacency in `Gamma(PSU3(q))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub q: PrimePower,
    pub witnesses: Vec<u64>,
}

fn d_of(q: PrimePower) -> u64 {
    gcd(3, q.value() + 1)
}

/// `{u_p, p(q+1)/d, q+1, (q^2-1)/d, (q^2-q+1)/d}` with `u_p = 4, 9, p` for
/// `p = 2, 3` and `p > 3`.
pub fn witness_set(q: PrimePower) -> Result<WitnessSet, GraphError> {
    let v = q.value();
    if v < 3 {
        return Err(GraphError::QTooSmall(v));
    }
    let p = q.p();
    let d = d_of(q);
    let u_p = match p {
        2 => 4,
        3 => 9,
        _ => p,
    };
    Ok(WitnessSet {
        q,
        witnesses: vec![
            u_p,
            p * (v + 1) / d,
            v + 1,
            (v * v - 1) / d,
            (v * v - v + 1) / d,
        ],
    })
}

pub fn graph_psu3(q: PrimePower) -> Result<PrimeGraph, GraphError> {
    let w = witness_set(q)?;
    Ok(PrimeGraph::from_witnesses(
        &order_psu3(q).primes(),
        &w.witnesses,
    ))
}

/// `Gamma(PSU3(q) . 3)`: every witness multiplied by `d = 3`.
pub fn diagonal_extension_graph(q: PrimePower) -> Result<PrimeGraph, GraphError> {
    if d_of(q) != 3 {
        return Err(GraphError::NoDiagonal(q.value()));
    }
    let w = witness_set(q)?;
    let scaled: Vec<u64> = w.witnesses.iter().map(|x| 3 * x).collect();
    Ok(PrimeGraph::from_witnesses(&order_psu3(q).primes(), &scaled))
}

fn check_ell(q: PrimePower, ell: u64) -> Result<(), GraphError> {
    if !is_prime(ell) {
        return Err(GraphError::NotPrime(ell));
    }
    if q.alpha() as u64 % ell != 0 {
        return Err(GraphError::EllNotDividingAlpha {
            ell,
            alpha: q.alpha(),
        });
    }
    Ok(())
}

/// Adjacencies forced by a field automorphism of prime order `ell`.
///
/// For odd `ell` the centralizer is `PSU3(q^(1/ell))`, so `ell` joins every
/// prime of its order. For `ell = 2` and odd `q` the centralizer is
/// `PGL2(q)`, whose maximal abelian orders `q, q - 1, q + 1` get doubled;
/// for even `q` only the primes of `q - 1` are reached.
pub fn field_extension_adjacencies(q: PrimePower, ell: u64) -> Result<Vec<(u64, u64)>, GraphError> {
    check_ell(q, ell)?;
    let v = q.value();
    let partners: Vec<u64> = if ell != 2 {
        let q0 = PrimePower::from_parts(q.p(), q.alpha() / ell as u32).expect("prime base");
        order_psu3(q0).primes()
    } else if v % 2 == 1 {
        FactoredInteger::from_u64(v)
            .and_then(|f| Ok(f.mul(&FactoredInteger::from_u64(v * v - 1)?)))
            .expect("nonzero")
            .primes()
    } else {
        prime_divisors(v - 1).expect("nonzero")
    };
    let mut pairs: Vec<(u64, u64)> = partners
        .into_iter()
        .filter(|&x| x != ell)
        .map(|x| ordered(ell, x))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs)
}

/// Whether a field automorphism of order `ell` adds an edge missing from
/// `Gamma(PSU3(q))`; returns the least such edge.
pub fn extension_graph_distinct(q: PrimePower, ell: u64) -> Result<Option<(u64, u64)>, GraphError> {
    let adds = field_extension_adjacencies(q, ell)?;
    let g = graph_psu3(q)?;
    Ok(adds.into_iter().find(|&(r, s)| !g.adjacent(r, s)))
}

/// Independence data of `Gamma(PSU3(q))` with `required = p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psu3Independence {
    pub q: PrimePower,
    pub data: IndependenceData,
    /// For even `q` the set containing 2 is reported but lies outside the
    /// range where its shape is predicted.
    pub rho_2_unpredicted: bool,
}

pub fn psu3_independence(q: PrimePower) -> Result<Psu3Independence, GraphError> {
    let g = graph_psu3(q)?;
    Ok(Psu3Independence {
        q,
        data: independence(&g, Some(q.p()))?,
        rho_2_unpredicted: q.p() == 2,
    })
}

/// Primes of the odd component, i.e. the `r6` class of `PSU3(q)`.
pub fn r6_primes(q: PrimePower) -> Vec<u64> {
    odd_component_psu3(q).primes()
}

/// Groups vertices by connected component, keyed by least element.
pub fn component_map(g: &PrimeGraph) -> BTreeMap<u64, Vec<u64>> {
    g.components().into_iter().map(|c| (c[0], c)).collect()
}
