//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are printed even on success.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use psu3kit::brute_group::{
    build_group, maximal_abelian_orders, verify_malle, verify_omegakh, GroupKind, GroupTable,
    MaximalAbelianCatalog, DEFAULT_NODE_BUDGET,
};
use psu3kit::case_engine::{
    classify_extensions, gap_claim_solutions, item_preconditions, run_all, verify_u39, CaseReport,
    ExtensionItem, Reason, Verdict,
};
use psu3kit::group_orders::{maximal_tori_psu3, order_psu3};
use psu3kit::ntheory::{
    catalan_search, factorize, is_fermat_prime, nagell_search, prime_power_range, PrimePower,
};
use psu3kit::prime_graph::{graph_psu3, psu3_independence};

fn pp(v: u64) -> PrimePower {
    PrimePower::new(v).unwrap()
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(
        spent < limit,
        format!("took {spent:.2?}, limit {limit:.0?}"),
    )
}

fn c1() -> Check {
    let t = Instant::now();
    let q = pp(9);
    let order = order_psu3(q);
    ensure(
        order.factors() == [(2, 5), (3, 6), (5, 2), (73, 1)],
        format!("order {}", order.pretty()),
    )?;
    ensure(order.primes() == [2, 3, 5, 73], "pi")?;
    let g = graph_psu3(q).map_err(|e| e.to_string())?;
    let comps = g.components();
    ensure(
        comps == [vec![2, 3, 5], vec![73]],
        format!("components {comps:?}"),
    )?;
    ensure(
        comps.iter().all(|c| g.is_clique(c)),
        "components not complete",
    )?;
    ensure(verify_u39().passed, "q = 9 exception checks")?;
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "|PSU3(9)| = {}, components {comps:?}",
        order.pretty()
    ))
}

fn c2() -> Check {
    let t = Instant::now();
    let cat: Vec<_> = catalan_search(1000, 30)
        .into_iter()
        .map(|s| (s.p, s.m, s.q, s.n))
        .collect();
    ensure(cat == [(3, 2, 2, 3)], format!("catalan {cat:?}"))?;
    let nag = nagell_search(1000, 10);
    ensure(
        nag.iter().all(|s| s.holds()),
        "nagell solution does not hold",
    )?;
    let exceptional: BTreeSet<_> = nag
        .iter()
        .filter(|s| !s.both_exponents_two())
        .map(|s| (s.p, s.m, s.q, s.n, s.sign))
        .collect();
    let expected: BTreeSet<_> = [(3, 5, 11, 2, 1), (239, 2, 13, 4, -1)]
        .into_iter()
        .collect();
    ensure(
        exceptional == expected,
        format!("exceptional {exceptional:?}"),
    )?;
    within(t, Duration::from_secs(10))?;
    Ok(format!(
        "catalan {cat:?}; nagell {} solutions, exceptional {exceptional:?}",
        nag.len()
    ))
}

fn c3() -> Check {
    let t = Instant::now();
    let sols = gap_claim_solutions(156, 34);
    ensure(sols.is_empty(), format!("solutions {sols:?}"))?;
    within(t, Duration::from_secs(1))?;
    Ok("p' = 5, d = 1, q < 157, q' <= 34: 0 solutions".into())
}

struct Brute {
    psu3: Vec<(u64, GroupTable, MaximalAbelianCatalog)>,
    a5: (GroupTable, MaximalAbelianCatalog),
    elapsed: Duration,
}

fn build_all() -> Result<Brute, String> {
    let t = Instant::now();
    let err = |e: psu3kit::brute_group::BruteError| e.to_string();
    let mut psu3 = Vec::new();
    for q in [3u64, 4, 5] {
        let g = build_group(GroupKind::PSU3, pp(q)).map_err(err)?;
        let cat = maximal_abelian_orders(&g, DEFAULT_NODE_BUDGET).map_err(err)?;
        psu3.push((q, g, cat));
    }
    let a5 = build_group(GroupKind::PSU2, pp(5)).map_err(err)?;
    let cat = maximal_abelian_orders(&a5, DEFAULT_NODE_BUDGET).map_err(err)?;
    Ok(Brute {
        psu3,
        a5: (a5, cat),
        elapsed: t.elapsed(),
    })
}

fn c4(b: &Brute) -> Check {
    let t = Instant::now();
    let su3 = build_group(GroupKind::SU3, pp(3)).map_err(|e| e.to_string())?;
    let sizes = [
        ("SU3(3)", su3.order(), 6048),
        ("PSU3(4)", b.psu3[1].1.order(), 62_400),
        ("PSU3(5)", b.psu3[2].1.order(), 126_000),
        ("PSU2(5)", b.a5.0.order(), 60),
    ];
    for (name, got, want) in sizes {
        ensure(
            got as u64 == want,
            format!("|{name}| = {got}, expected {want}"),
        )?;
    }
    let total = b.elapsed + t.elapsed();
    ensure(
        total < Duration::from_secs(300),
        format!("took {total:.2?}"),
    )?;
    Ok(format!("6048, 62400, 126000, 60 in {total:.2?}"))
}

fn c5(b: &Brute) -> Check {
    for (q, g, _) in &b.psu3 {
        let formula = graph_psu3(pp(*q)).map_err(|e| e.to_string())?;
        let brute = g.prime_graph();
        ensure(
            formula == brute,
            format!(
                "q = {q}: formula {:?} vs brute {:?}",
                formula.edges(),
                brute.edges()
            ),
        )?;
    }
    Ok("q = 3, 4, 5 edge-for-edge".into())
}

fn c6(b: &Brute) -> Check {
    let (g, cat) = &b.a5;
    ensure(
        cat.orders.contains(&4),
        format!("M(PSU2(5)) = {:?}", cat.orders),
    )?;
    let tori = [2u64, 3];
    ensure(tori.iter().all(|t| t % 4 != 0), "4 divides a torus order")?;
    let r = verify_malle(g, cat, 5, &tori);
    ensure(
        r.violations.iter().any(|v| v.subgroup_order == 4),
        "order 4 not reported as a torus violation",
    )?;
    Ok(format!("M(PSU2(5)) = {:?}, tori {tori:?}", cat.orders))
}

fn c7(b: &Brute) -> Check {
    let mut checked = 0;
    for (q, g, cat) in &b.psu3 {
        let t = maximal_tori_psu3(pp(*q));
        let r = verify_malle(g, cat, q * t.d, &t.orders);
        ensure(
            r.passed(),
            format!("q = {q}: violations {:?}", r.violations),
        )?;
        checked += r.checked_orders.len();
    }
    Ok(format!("{checked} coprime abelian orders, 0 violations"))
}

fn c8(b: &Brute) -> Check {
    for (q, g, cat) in &b.psu3 {
        let r = verify_omegakh(&g.spectrum(), cat);
        ensure(r.passed(), format!("q = {q}: {:?}", r.violations))?;
    }
    let r = verify_omegakh(&b.a5.0.spectrum(), &b.a5.1);
    ensure(r.passed(), format!("PSU2(5): {:?}", r.violations))?;
    Ok("PSU3(3), PSU3(4), PSU3(5), PSU2(5): 0 violations".into())
}

fn find_near_miss(reports: &[CaseReport], case: u8, q: u64, group: &str) -> Result<(), String> {
    let r = &reports[case as usize - 1];
    let hit = r.near_misses.iter().find(|n| n.q == q && n.group == group);
    match hit {
        Some(n) if n.equation_holds() && n.evidence_holds() => Ok(()),
        Some(_) => Err(format!(
            "case {case}: {group} at q = {q} fails re-verification"
        )),
        None => Err(format!("case {case}: no near-miss {group} at q = {q}")),
    }
}

fn c9() -> Check {
    let t = Instant::now();
    let reports = run_all(None).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(
            r.verdict == Verdict::NoSurvivor,
            format!("case {}: {:?}", r.case, r.verdict),
        )?;
        ensure(
            r.near_misses
                .iter()
                .all(|n| n.equation_holds() && n.evidence_holds()),
            format!("case {}: a near-miss fails re-verification", r.case),
        )?;
    }
    find_near_miss(&reports, 11, 11, "J4")?;
    find_near_miss(&reports, 6, 8, "PSL_2(19)")?;
    find_near_miss(&reports, 8, 32, "E8(2)")?;
    for case in [4, 5] {
        let r = &reports[case - 1];
        let fermat = r.near_misses.iter().filter(|n| {
            n.q == 5 && n.reason == Some(Reason::ExcludedByHypothesisFermat) && n.evidence_holds()
        });
        ensure(
            fermat.count() > 0,
            format!("case {case}: no q = 5 Fermat exclusion"),
        )?;
    }
    within(t, Duration::from_secs(300))?;
    let total: usize = reports.iter().map(|r| r.near_misses.len()).sum();
    Ok(format!(
        "11 cases no-survivor, {total} near-misses re-verified in {:.2?}",
        t.elapsed()
    ))
}

fn c10() -> Check {
    let table: [(u64, u32, u8, &[u64]); 6] = [
        (7, 5, 1, &[1]),
        (5, 3, 7, &[1, 3]),
        (2, 6, 8, &[1, 3]),
        (7, 2, 6, &[1, 2]),
        (3, 6, 9, &[1, 2, 3, 6]),
        (3, 12, 10, &[1, 2, 4]),
    ];
    for (p, a, item, allowed) in table {
        let q = PrimePower::from_parts(p, a).unwrap();
        let c = classify_extensions(q).map_err(|e| e.to_string())?;
        ensure(
            c.outcome == ExtensionItem(item),
            format!("{p}^{a}: item {}", c.outcome.0),
        )?;
        let got: Vec<u64> = c.allowed_extension_orders.iter().copied().collect();
        ensure(got == allowed, format!("{p}^{a}: allowed {got:?}"))?;
    }
    let mut in_scope = 0;
    for q in prime_power_range(1_000_000) {
        if q.value() < 3 || (q.alpha() == 1 && is_fermat_prime(q.value())) {
            continue;
        }
        let hits = item_preconditions(q).iter().filter(|&&b| b).count();
        ensure(hits == 1, format!("q = {q}: {hits} items apply"))?;
        in_scope += 1;
    }
    Ok(format!(
        "sample table exact; exactly one item for all {in_scope} q <= 10^6"
    ))
}

/// Expected shape from arithmetic alone: `p`, then 3 iff `(q + 1)_3 = 3`,
/// one odd prime of `q - 1`, one prime of the odd component.
fn rho_conforms(q: PrimePower) -> Result<(), String> {
    let v = q.value();
    let ind = psu3_independence(q).map_err(|e| e.to_string())?;
    let data = &ind.data;
    let with_three = (v + 1) % 3 == 0 && (v + 1) % 9 != 0;
    let r1_class: Vec<u64> = factorize(v - 1)
        .unwrap()
        .primes()
        .into_iter()
        .filter(|&r| r != 2 && !(with_three && r == 3))
        .collect();
    let d = if (v + 1) % 3 == 0 { 3 } else { 1 };
    let r6_class = factorize((v * v - v + 1) / d).unwrap().primes();

    let rho: BTreeSet<u64> = data.rho.iter().copied().collect();
    let mut rest = rho.clone();
    ensure(
        rest.remove(&q.p()),
        format!("q = {v}: p missing from {rho:?}"),
    )?;
    if with_three {
        ensure(rest.remove(&3), format!("q = {v}: 3 missing from {rho:?}"))?;
    }
    let r1: Vec<u64> = rest
        .iter()
        .copied()
        .filter(|r| r1_class.contains(r))
        .collect();
    let r6: Vec<u64> = rest
        .iter()
        .copied()
        .filter(|r| r6_class.contains(r))
        .collect();
    ensure(
        r1.len() == usize::from(!r1_class.is_empty()) && r6.len() == 1,
        format!("q = {v}: rho {rho:?}"),
    )?;
    ensure(
        r1.len() + r6.len() == rest.len(),
        format!("q = {v}: extra vertices in {rho:?}"),
    )?;
    ensure(data.t == rho.len(), format!("q = {v}: t"))?;
    ensure(
        data.required == Some(q.p())
            && data.rho_required.as_ref() == Some(&data.rho)
            && data.t_required == Some(data.t),
        format!("q = {v}: rho(p) differs from rho"),
    )?;
    if v % 2 == 1 {
        let rho2 = data
            .rho_2
            .as_ref()
            .ok_or(format!("q = {v}: rho(2) missing"))?;
        ensure(
            rho2.len() == 2 && rho2[0] == 2 && r6_class.contains(&rho2[1]),
            format!("q = {v}: rho(2) = {rho2:?}"),
        )?;
    }
    Ok(())
}

fn c11() -> Check {
    let mut n = 0;
    for q in prime_power_range(1000) {
        let v = q.value();
        if v < 3 || v == 9 || (q.alpha() == 1 && is_fermat_prime(v)) {
            continue;
        }
        rho_conforms(q)?;
        n += 1;
    }
    Ok(format!("{n} prime powers conform"))
}

fn main() -> ExitCode {
    let brute =
        catch_unwind(build_all).unwrap_or_else(|_| Err("brute-force build panicked".into()));
    let on_brute = |f: fn(&Brute) -> Check| -> Check {
        match &brute {
            Ok(b) => f(b),
            Err(e) => Err(e.clone()),
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("PSU3(9) invariants", Box::new(c1)),
        ("Catalan and Nagell searches", Box::new(c2)),
        ("Case 2 replica", Box::new(c3)),
        ("brute-force closure orders", Box::new(move || on_brute(c4))),
        (
            "formula graph equals brute-force graph",
            Box::new(move || on_brute(c5)),
        ),
        (
            "PSU2(5) order-4 abelian subgroup",
            Box::new(move || on_brute(c6)),
        ),
        ("torus divisibility", Box::new(move || on_brute(c7))),
        (
            "element orders covered by M(G)",
            Box::new(move || on_brute(c8)),
        ),
        ("all cases at default bounds", Box::new(c9)),
        ("extension classification", Box::new(c10)),
        ("rho-set conformance", Box::new(c11)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
