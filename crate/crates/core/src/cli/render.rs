//! Plain-text renderings. Deterministic: no timings, no hash order.

use std::fmt::Write;

use serde::Serialize;

use crate::case_engine::{
    CaseReport, Evidence, ExtensionClassification, KernelObstructionReport, NearMiss, U39Report,
    Verdict,
};
use crate::group_orders::{maximal_tori_psu3, odd_component_psu3, order_psu3};
use crate::ntheory::PrimePower;
use crate::prime_graph::{PrimeGraph, Psu3Independence};

fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::from("?"),
    }
}

pub fn lines(title: &str, items: impl Iterator<Item = String>) -> String {
    let items: Vec<String> = items.collect();
    let mut s = format!("{title}: {} solutions\n", items.len());
    for i in items {
        let _ = writeln!(s, "  {i}");
    }
    s
}

pub fn orders(q: PrimePower) -> String {
    let order = order_psu3(q);
    let tori = maximal_tori_psu3(q);
    let mut s = String::new();
    let _ = writeln!(s, "|PSU3({q})| = {} = {}", order.pretty(), order.value());
    let _ = writeln!(s, "pi = {:?}", order.primes());
    let _ = writeln!(s, "d = {}", tori.d);
    let _ = writeln!(s, "odd component = {}", odd_component_psu3(q).value());
    let _ = writeln!(s, "maximal tori = {:?}", tori.orders);
    s
}

pub fn graph(g: &PrimeGraph, ind: &Psu3Independence) -> String {
    let mut s = g.to_adjacency_text();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    let d = &ind.data;
    let _ = writeln!(s, "components = {:?}", g.components());
    let _ = writeln!(s, "rho = {:?}, t = {}", d.rho, d.t);
    if let (Some(r), Some(rho), Some(t)) = (d.required, &d.rho_required, d.t_required) {
        let _ = writeln!(s, "rho({r}) = {rho:?}, t({r}) = {t}");
    }
    if let (Some(rho2), false) = (&d.rho_2, d.required == Some(2)) {
        let note = if ind.rho_2_unpredicted {
            " (outside the predicted range)"
        } else {
            ""
        };
        let _ = writeln!(s, "rho(2) = {rho2:?}{note}");
    }
    s
}

fn evidence(e: &Evidence) -> String {
    match e {
        Evidence::Hypothesis { q } => format!("q = {q} outside the hypotheses"),
        Evidence::MissingPrimes { primes, count } if *count > primes.len() => {
            format!(
                "missing primes {primes:?} and {} more",
                count - primes.len()
            )
        }
        Evidence::MissingPrimes { primes, .. } => format!("missing primes {primes:?}"),
        Evidence::OrderNotDividing { order, source } => {
            format!("element order {order} does not divide |PSU3(q)| ({source})")
        }
        Evidence::NonAdjacent {
            order,
            r,
            s,
            source,
        } => {
            format!("element order {order} joins non-adjacent {r} and {s} ({source})")
        }
        Evidence::OutsideFamily { constraint } => format!("outside the family: {constraint}"),
    }
}

fn near_miss(n: &NearMiss) -> String {
    let params: Vec<String> = n.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let reason = n.reason.map_or("UNEXPLAINED", |r| r.as_str());
    let ev = n.evidence.as_ref().map(evidence).unwrap_or_default();
    format!(
        "q = {} (d = {}, target {}): {} [{} {}] -> {reason}: {ev}",
        n.q,
        n.d,
        n.target,
        n.group,
        tag(&n.branch),
        params.join(" ")
    )
}

pub fn case(r: &CaseReport) -> String {
    let mut s = String::new();
    let verdict = match &r.verdict {
        Verdict::NoSurvivor => "no-survivor".to_string(),
        Verdict::SurvivorFound { witnesses } => format!("survivor-found {witnesses:?}"),
        Verdict::BudgetExceeded { budget } => format!("budget-exceeded ({budget})"),
    };
    let _ = writeln!(s, "case {}: {verdict}", r.case);
    let rg = &r.ranges;
    let _ = writeln!(
        s,
        "  q: prime powers in [{}, {}], target_max = {}",
        rg.q_min, rg.q_max, rg.target_max
    );
    if let Some(a) = rg.aux_max {
        let _ = writeln!(s, "  auxiliary bound: {a}");
    }
    for b in &rg.branches {
        let bounds: Vec<String> = b
            .params
            .iter()
            .zip(&b.bounds)
            .map(|(p, [lo, hi])| format!("{p} in [{lo}, {hi}]"))
            .collect();
        let _ = writeln!(
            s,
            "  family {}: {} instances, {}; {}",
            tag(&b.branch),
            b.instances,
            bounds.join(", "),
            b.rule
        );
    }
    let _ = writeln!(
        s,
        "  candidates: {}, self matches: {}",
        r.candidates, r.self_matches
    );
    for d in &r.d_branches {
        let _ = writeln!(
            s,
            "  d = {}: {} q values, {} near-misses",
            d.d, d.q_values, d.near_misses
        );
    }
    for n in &r.near_misses {
        let _ = writeln!(s, "  {}", near_miss(n));
    }
    for c in &r.sub_checks {
        let _ = writeln!(
            s,
            "  check {}: {} ({} solutions{})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.solutions.len(),
            if c.solutions.is_empty() {
                String::new()
            } else {
                format!(": {:?}", c.solutions)
            }
        );
    }
    for note in &r.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    s
}

pub fn u39(r: &U39Report) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{:<24} {}  {}",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        );
    }
    let _ = writeln!(s, "remaining candidates: {:?}", r.survivors);
    s
}

pub fn kernel(r: &KernelObstructionReport) -> String {
    format!(
        "q = {}, component {}\nprime-power divisors: {:?}\ndivisors r^g with component | r^g - 1: {:?}\n",
        r.q, r.component, r.divisors, r.hits
    )
}

pub fn classification(c: &ExtensionClassification) -> String {
    format!(
        "q = {} = {}^{}: item {}, allowed extension orders {:?}\n",
        c.q,
        c.q.p(),
        c.q.alpha(),
        c.outcome.0,
        c.allowed_extension_orders
    )
}
