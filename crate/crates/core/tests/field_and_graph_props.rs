use proptest::prelude::*;

use psu3kit::brute_group::{least_irreducible, Elem, FiniteField};
use psu3kit::group_orders::{maximal_tori_psu3, odd_component_psu3, order_psu3};
use psu3kit::ntheory::{gcd, prime_power_range, PrimePower};
use psu3kit::prime_graph::{graph_psu3, psu3_independence, PrimeGraph};

const FIELDS: [(u64, u32); 8] = [
    (2, 2),
    (2, 4),
    (2, 8),
    (3, 2),
    (3, 4),
    (5, 2),
    (7, 2),
    (13, 2),
];

fn field_and_triple() -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (0..FIELDS.len(), any::<u32>(), any::<u32>(), any::<u32>())
}

fn field(i: usize) -> FiniteField {
    let (p, k) = FIELDS[i];
    FiniteField::new(p, k).unwrap()
}

fn elem(f: &FiniteField, x: u32) -> Elem {
    (x as usize % f.size()) as Elem
}

proptest! {
    #[test]
    fn field_axioms_hold((i, x, y, z) in field_and_triple()) {
        let f = field(i);
        let (a, b, c) = (elem(&f, x), elem(&f, y), elem(&f, z));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, 1), a);
        match f.inv(a) {
            Some(inv) => prop_assert_eq!(f.mul(a, inv), 1),
            None => prop_assert_eq!(a, 0),
        }
    }

    #[test]
    fn frobenius_is_additive((i, x, y, _z) in field_and_triple()) {
        let f = field(i);
        let p = f.p();
        let (a, b) = (elem(&f, x), elem(&f, y));
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for i in 0..FIELDS.len() {
        let f = field(i);
        let g = f.primitive();
        assert_eq!(f.order(g), Some(f.size() as u64 - 1));
        assert_eq!(f.modulus(), least_irreducible(f.p(), f.k()).as_slice());
    }
}

fn in_scope() -> impl Iterator<Item = PrimePower> {
    prime_power_range(1000)
        .into_iter()
        .filter(|q| q.value() >= 3)
}

#[test]
fn order_components_are_coprime_divisors() {
    for q in prime_power_range(3000)
        .into_iter()
        .filter(|q| q.value() > 2)
    {
        let v = q.value();
        let order = order_psu3(q);
        let odd = odd_component_psu3(q);
        assert!(odd.divides(&order), "q = {v}");
        let oc = odd.to_u64().unwrap();
        assert_eq!(gcd(oc, v * (v * v - 1)), 1, "q = {v}");
        let tori = maximal_tori_psu3(q);
        assert_eq!(tori.orders[2], oc);
        for t in tori.orders {
            assert!(
                psu3kit::ntheory::factorize(t).unwrap().divides(&order),
                "q = {v}: torus {t}"
            );
        }
    }
}

#[test]
fn odd_component_is_a_clique_apart_from_the_rest() {
    for q in in_scope() {
        let g = graph_psu3(q).unwrap();
        let pi2 = odd_component_psu3(q).primes();
        assert!(g.is_clique(&pi2), "q = {q}");
        for &r in &pi2 {
            for s in g.vertices().into_iter().filter(|s| !pi2.contains(s)) {
                assert!(!g.adjacent(r, s), "q = {q}: {r} ~ {s}");
            }
        }
        assert_eq!(g.components().len(), 2, "q = {q}");
    }
}

fn max_independent_size(g: &PrimeGraph, must: Option<u64>) -> usize {
    let v = g.vertices();
    let n = v.len();
    assert!(n <= 20, "graph too large for exhaustive search");
    (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect::<Vec<_>>()
        })
        .filter(|s| must.map_or(true, |m| s.contains(&m)) && g.is_independent(s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

#[test]
fn independence_data_is_maximum_by_exhaustion() {
    for q in in_scope().filter(|q| q.value() <= 400) {
        let g = graph_psu3(q).unwrap();
        let data = psu3_independence(q).unwrap().data;
        assert!(g.is_independent(&data.rho));
        assert_eq!(data.t, max_independent_size(&g, None), "q = {q}");
        let rp = data.rho_required.unwrap();
        assert!(rp.contains(&q.p()) && g.is_independent(&rp));
        assert_eq!(
            data.t_required.unwrap(),
            max_independent_size(&g, Some(q.p()))
        );
        let r2 = data.rho_2.unwrap();
        assert!(r2.contains(&2) && g.is_independent(&r2));
        assert_eq!(r2.len(), max_independent_size(&g, Some(2)), "q = {q}");
    }
}
