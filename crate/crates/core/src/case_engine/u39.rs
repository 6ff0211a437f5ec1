//! The `q = 9` exception and the solvable-radical obstruction.

use serde::{Deserialize, Serialize};

use crate::group_orders::{family_order, k3_groups, order_psu3, pi_of_group, SimpleGroupId};
use crate::ntheory::{is_prime_power, PrimePower};
use crate::prime_graph::graph_psu3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct U39Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct U39Report {
    pub checks: Vec<U39Check>,
    /// Candidates for the nonabelian composition factor left standing.
    pub survivors: Vec<String>,
    pub passed: bool,
}

fn check(name: &str, passed: bool, detail: String) -> U39Check {
    U39Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn pp(v: u64) -> PrimePower {
    PrimePower::new(v).expect("prime power")
}

fn missing_primes(id: &SimpleGroupId, own: &[u64]) -> Vec<u64> {
    pi_of_group(id)
        .expect("valid group")
        .into_iter()
        .filter(|r| !own.contains(r))
        .collect()
}

pub fn verify_u39() -> U39Report {
    let q = pp(9);
    let order = order_psu3(q);
    let pi = order.primes();
    let graph = graph_psu3(q).expect("q >= 3");
    let components = graph.components();
    let mut checks = Vec::new();

    checks.push(check(
        "order",
        order.factors() == [(2, 5), (3, 6), (5, 2), (73, 1)],
        order.pretty(),
    ));
    checks.push(check("pi", pi == [2, 3, 5, 73], format!("{pi:?}")));
    checks.push(check(
        "components",
        components == [vec![2, 3, 5], vec![73]] && components.iter().all(|c| graph.is_clique(c)),
        format!("{components:?}, both complete"),
    ));

    // Kernel of order 73: a complement of order dividing 72 cannot contain 5.
    checks.push(check(
        "frobenius-kernel-73",
        order.exponent_of(73) == 1 && 72 % 5 != 0,
        "|F| = 73, |C| divides 72, 5 does not divide 72".into(),
    ));
    // Kernel on {2,3,5}: 73 would divide |Z(P)| - 1 for |Z(P)| in {5, 25}.
    let zp = [5u64, 25];
    checks.push(check(
        "frobenius-complement-73",
        order.exponent_of(5) == 2 && zp.iter().all(|z| (z - 1) % 73 != 0),
        "|Z(P)| - 1 in {4, 24}, neither divisible by 73".into(),
    ));
    checks.push(check(
        "two-frobenius",
        order.exponent_of(73) == 1 && zp.iter().all(|z| (z - 1) % 73 != 0),
        "|K/H| = 73 acting fixed-point-freely on Z(P) of order 5 or 25".into(),
    ));

    let k3 = k3_groups();
    let k3_hits: Vec<String> = k3
        .iter()
        .filter(|g| family_order(g).expect("valid").exponent_of(73) > 0)
        .map(|g| g.to_string())
        .collect();
    checks.push(check(
        "k3-groups",
        k3.len() == 8 && k3_hits.is_empty(),
        format!("73 divides none of {} groups", k3.len()),
    ));

    let psl38 = SimpleGroupId::Psl { n: 3, q: pp(8) };
    let m = missing_primes(&psl38, &pi);
    checks.push(check(
        "psl3-8",
        !m.is_empty(),
        format!("pi(PSL3(8)) \\ pi(PSU3(9)) = {m:?}; 73 itself lies in both"),
    ));
    let psl273 = SimpleGroupId::Psl { n: 2, q: pp(73) };
    let m = missing_primes(&psl273, &pi);
    checks.push(check(
        "psl2-73",
        m.contains(&37),
        format!("pi(PSL2(73)) \\ pi(PSU3(9)) = {m:?}"),
    ));

    // Remaining odd components of PSL2(q'): (q' - 1)/2, (q' + 1)/2, q' - 1, q' + 1.
    let others = [147u64, 145, 74, 72];
    checks.push(check(
        "psl2-other-components",
        others.iter().all(|&v| !is_prime_power(v)),
        format!("{others:?} are not prime powers"),
    ));

    let passed = checks.iter().all(|c| c.passed);
    U39Report {
        checks,
        survivors: vec!["PSU3(9)".into()],
        passed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelObstructionReport {
    pub q: u64,
    pub component: u64,
    /// Every prime-power divisor `r^g` of `|PSU3(q)|`, by prime then power.
    pub divisors: Vec<u128>,
    /// Divisors with `component | r^g - 1`.
    pub hits: Vec<u128>,
}

impl KernelObstructionReport {
    pub fn passed(&self) -> bool {
        self.hits.is_empty()
    }
}

pub fn kernel_obstruction_check(q: PrimePower) -> KernelObstructionReport {
    let (component, _) = super::target_of(q);
    let mut divisors = Vec::new();
    for &(r, e) in order_psu3(q).factors() {
        let mut x = 1u128;
        for _ in 0..e {
            x *= r as u128;
            divisors.push(x);
        }
    }
    let hits = divisors
        .iter()
        .copied()
        .filter(|x| (x - 1) % component == 0)
        .collect();
    KernelObstructionReport {
        q: q.value(),
        component: component as u64,
        divisors,
        hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q9_checks_pass() {
        let r = verify_u39();
        assert!(r.passed, "{:#?}", r.checks);
        let psl = r.checks.iter().find(|c| c.name == "psl3-8").unwrap();
        assert!(psl.detail.starts_with("pi(PSL3(8)) \\ pi(PSU3(9)) = [7]"));
    }

    #[test]
    fn kernel_obstruction_examples() {
        let r = kernel_obstruction_check(pp(4));
        assert_eq!(r.divisors, vec![2, 4, 8, 16, 32, 64, 3, 5, 25, 13]);
        assert!(r.passed());
        assert_eq!(kernel_obstruction_check(pp(3)).hits, vec![8]);
        assert!(kernel_obstruction_check(pp(9)).passed());
    }
}
