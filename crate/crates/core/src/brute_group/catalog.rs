//! Conjugacy classes, centralizers and the catalog of maximal abelian
//! subgroups, plus the desk-scale checks built on it.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::group::{GroupKind, GroupTable};
use super::BruteError;
use crate::ntheory::gcd;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Conjugacy classes as sorted index lists, ordered by least element.
pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let gen_pairs: Vec<(u32, u32)> = g.generators.iter().map(|&x| (x, g.inv(x))).collect();
    let mut classes = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[start as usize] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(s, s_inv) in &gen_pairs {
                let y = g.mul(g.mul(s, x), s_inv);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// `C_G(x)`, sorted.
pub fn centralizer(g: &GroupTable, x: u32) -> Vec<u32> {
    (0..g.order() as u32).filter(|&y| g.commute(x, y)).collect()
}

/// Orbit of a subgroup under conjugation, each member a sorted index list.
pub fn subgroup_orbit(g: &GroupTable, sub: &[u32]) -> Vec<Vec<u32>> {
    let gen_pairs: Vec<(u32, u32)> = g.generators.iter().map(|&x| (x, g.inv(x))).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([sub.to_vec()]);
    let mut orbit = vec![sub.to_vec()];
    let mut queue = VecDeque::from([sub.to_vec()]);
    while let Some(a) = queue.pop_front() {
        for &(s, s_inv) in &gen_pairs {
            let mut b: Vec<u32> = a.iter().map(|&x| g.mul(g.mul(s, x), s_inv)).collect();
            b.sort_unstable();
            if seen.insert(b.clone()) {
                orbit.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    orbit.sort();
    orbit
}

/// One conjugacy class of maximal abelian subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianClass {
    pub order: u64,
    /// Number of conjugates.
    pub size: u64,
    /// Sorted element indices of one representative.
    pub representative: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalAbelianCatalog {
    pub kind: GroupKind,
    pub q: u64,
    pub group_order: u64,
    /// `M(G)`, ascending.
    pub orders: Vec<u64>,
    /// Number of conjugacy classes of maximal abelian subgroups per order.
    pub class_counts: BTreeMap<u64, u64>,
    pub classes: Vec<AbelianClass>,
    pub nodes_visited: u64,
}

/// `<a, h>` for an abelian subgroup `a` and an element `h` centralizing it.
fn extend_abelian(g: &GroupTable, a: &[u32], h: u32) -> Vec<u32> {
    let members: HashSet<u32> = a.iter().copied().collect();
    let mut out: BTreeSet<u32> = members.iter().copied().collect();
    let mut power = h;
    while !members.contains(&power) {
        for &x in a {
            out.insert(g.mul(x, power));
        }
        power = g.mul(power, h);
    }
    out.into_iter().collect()
}

struct Search<'a> {
    g: &'a GroupTable,
    memo: HashSet<Vec<u32>>,
    leaves: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn visit(&mut self, a: Vec<u32>, cent: Vec<u32>) -> Result<(), BruteError> {
        if self.memo.contains(&a) {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BruteError::BudgetExceeded {
                budget: self.budget,
            });
        }
        self.memo.insert(a.clone());
        if cent.len() == a.len() {
            debug_assert_eq!(cent, a);
            self.leaves.push(a);
            return Ok(());
        }
        let members: HashSet<u32> = a.iter().copied().collect();
        let mut covered: HashSet<u32> = members.clone();
        for &h in &cent {
            if covered.contains(&h) {
                continue;
            }
            for &x in &a {
                covered.insert(self.g.mul(h, x));
            }
            let next = extend_abelian(self.g, &a, h);
            let next_cent: Vec<u32> = cent
                .iter()
                .copied()
                .filter(|&y| self.g.commute(h, y))
                .collect();
            self.visit(next, next_cent)?;
        }
        Ok(())
    }
}

fn is_abelian(g: &GroupTable, a: &[u32]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &x)| a[i + 1..].iter().all(|&y| g.commute(x, y)))
}

/// Exhaustive catalog by centralizer growth from one element per conjugacy
/// class; leaves are deduplicated up to conjugacy.
pub fn maximal_abelian_orders(
    g: &GroupTable,
    budget: u64,
) -> Result<MaximalAbelianCatalog, BruteError> {
    let mut search = Search {
        g,
        memo: HashSet::new(),
        leaves: Vec::new(),
        nodes: 0,
        budget,
    };
    let classes = conjugacy_classes(g);
    for class in &classes {
        let x = class[0];
        if x == g.identity() && g.order() > 1 {
            continue;
        }
        let a = g.closure(&[x]);
        let cent = centralizer(g, x);
        search.visit(a, cent)?;
    }

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<AbelianClass> = Vec::new();
    for leaf in &search.leaves {
        if seen.contains(leaf) {
            continue;
        }
        let all: Vec<u32> = (0..g.order() as u32).collect();
        let cent: Vec<u32> = all
            .into_iter()
            .filter(|&y| leaf.iter().all(|&x| g.commute(x, y)))
            .collect();
        if &cent != leaf || !is_abelian(g, leaf) {
            return Err(BruteError::NotMaximalAbelian);
        }
        let orbit = subgroup_orbit(g, leaf);
        let size = orbit.len() as u64;
        let representative = orbit[0].clone();
        seen.extend(orbit);
        found.push(AbelianClass {
            order: leaf.len() as u64,
            size,
            representative,
        });
    }
    found.sort_by(|x, y| (x.order, &x.representative).cmp(&(y.order, &y.representative)));
    let mut class_counts = BTreeMap::new();
    for c in &found {
        *class_counts.entry(c.order).or_insert(0) += 1;
    }
    Ok(MaximalAbelianCatalog {
        kind: g.kind,
        q: g.q.value(),
        group_order: g.order() as u64,
        orders: class_counts.keys().copied().collect(),
        class_counts,
        classes: found,
        nodes_visited: search.nodes,
    })
}

/// Every subgroup of an abelian group, as sorted index lists.
pub fn subgroups_of_abelian(g: &GroupTable, a: &[u32]) -> Vec<Vec<u32>> {
    let trivial = vec![g.identity()];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(s) = queue.pop_front() {
        let members: HashSet<u32> = s.iter().copied().collect();
        for &x in a {
            if members.contains(&x) {
                continue;
            }
            let t = extend_abelian(g, &s, x);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every abelian subgroup of `g`; only sensible for very small groups.
pub fn all_abelian_subgroups(g: &GroupTable) -> Vec<Vec<u32>> {
    let trivial = vec![g.identity()];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(s) = queue.pop_front() {
        let members: HashSet<u32> = s.iter().copied().collect();
        for x in 0..g.order() as u32 {
            if members.contains(&x) || !s.iter().all(|&y| g.commute(x, y)) {
                continue;
            }
            let t = extend_abelian(g, &s, x);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusViolation {
    pub subgroup_order: u64,
    pub container_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDivisibilityReport {
    pub coprime_to: u64,
    pub tori: Vec<u64>,
    /// Distinct orders of abelian subgroups coprime to `coprime_to`.
    pub checked_orders: Vec<u64>,
    pub violations: Vec<TorusViolation>,
}

impl TorusDivisibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every abelian subgroup whose order is coprime to `coprime_to` must have
/// order dividing one of `tori`.
pub fn verify_malle(
    g: &GroupTable,
    catalog: &MaximalAbelianCatalog,
    coprime_to: u64,
    tori: &[u64],
) -> TorusDivisibilityReport {
    let mut checked = BTreeSet::new();
    let mut violations = BTreeSet::new();
    for class in &catalog.classes {
        for sub in subgroups_of_abelian(g, &class.representative) {
            let m = sub.len() as u64;
            if gcd(m, coprime_to) != 1 {
                continue;
            }
            checked.insert(m);
            if !tori.iter().any(|&t| t % m == 0) {
                violations.insert((m, class.order));
            }
        }
    }
    TorusDivisibilityReport {
        coprime_to,
        tori: tori.to_vec(),
        checked_orders: checked.into_iter().collect(),
        violations: violations
            .into_iter()
            .map(|(subgroup_order, container_order)| TorusViolation {
                subgroup_order,
                container_order,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumCoverReport {
    pub spectrum: Vec<u64>,
    pub maximal_abelian_orders: Vec<u64>,
    /// Element orders dividing no member of `M(G)`.
    pub violations: Vec<u64>,
}

impl SpectrumCoverReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every element order divides the order of some maximal abelian subgroup.
pub fn verify_omegakh(spectrum: &[u64], catalog: &MaximalAbelianCatalog) -> SpectrumCoverReport {
    let violations = spectrum
        .iter()
        .copied()
        .filter(|&m| !catalog.orders.iter().any(|&n| n % m == 0))
        .collect();
    SpectrumCoverReport {
        spectrum: spectrum.to_vec(),
        maximal_abelian_orders: catalog.orders.clone(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::build_group;
    use super::*;
    use crate::ntheory::PrimePower;

    #[test]
    fn a5_catalog() {
        let g = build_group(GroupKind::PSU2, PrimePower::new(5).unwrap()).unwrap();
        assert_eq!(conjugacy_classes(&g).len(), 5);
        let cat = maximal_abelian_orders(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(cat.orders, vec![3, 4, 5]);
        let counts: Vec<u64> = cat.classes.iter().map(|c| c.size).collect();
        assert_eq!(counts, vec![10, 5, 6]);
        let report = verify_malle(&g, &cat, 5, &[2, 3]);
        assert_eq!(
            report.violations,
            vec![TorusViolation {
                subgroup_order: 4,
                container_order: 4
            }]
        );
        assert!(verify_omegakh(&g.spectrum(), &cat).passed());
    }

    #[test]
    fn budget_is_enforced() {
        let g = build_group(GroupKind::PSU2, PrimePower::new(5).unwrap()).unwrap();
        assert!(matches!(
            maximal_abelian_orders(&g, 2),
            Err(BruteError::BudgetExceeded { budget: 2 })
        ));
    }
}
