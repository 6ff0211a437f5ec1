//! Command-line front end. `run` is the whole program; the binary only
//! forwards process arguments and streams.
//!
//! Exit codes: 0 when every check passes, 1 on a survivor or violation,
//! 2 on a usage error.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::brute_group::{
    build_group_cached, catalog_cached, verify_malle, verify_omegakh, GroupKind,
    DEFAULT_NODE_BUDGET,
};
use crate::case_engine::{
    classify_extensions, extension_consistency, kernel_obstruction_check, run_case, verify_u39,
    CaseConfig, CaseReport, InjectedGroup, DEFAULT_BUDGET, REPORT_VERSION,
};
use crate::group_orders::{maximal_tori_psu3, odd_component_psu3, order_psu3};
use crate::ntheory::{
    catalan_search, nagell_search, prime_power_range, zsigmondy_primes, PrimePower,
};
use crate::prime_graph::{graph_psu3, psu3_independence};

pub const CACHE_ENV: &str = "PSU3KIT_CACHE_DIR";

/// Exclusive bound on `q`: torus orders and `q^2 - q + 1` must fit 64 bits.
pub const Q_LIMIT: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "psu3kit",
    version,
    about = "Arithmetic and brute-force checks around PSU3(q)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cache directory for built groups (default: $PSU3KIT_CACHE_DIR, then the user cache dir).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Maximum number of concurrent search workers.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, odd component and maximal tori of PSU3(q).
    Orders { q: u64 },
    /// Prime graph of PSU3(q) and its independence data.
    Graph { q: u64 },
    /// Primitive prime divisors of p^n - 1.
    Zsigmondy { p: u64, n: u32 },
    /// Solutions of p^m - q^n = 1 in a bounded range.
    Catalan {
        #[arg(long, default_value_t = 1000)]
        prime_bound: u64,
        #[arg(long, default_value_t = 30)]
        exponent_bound: u32,
    },
    /// Solutions of p^m - 2q^n = +-1 in a bounded range.
    Nagell {
        #[arg(long, default_value_t = 1000)]
        prime_bound: u64,
        #[arg(long, default_value_t = 10)]
        exponent_bound: u32,
    },
    /// One case of the component matching (1..=11), or `all`.
    Case {
        /// Case number or `all`.
        which: String,
        /// Largest q searched (default 200, 500 for case 11).
        #[arg(long, value_parser = clap::value_parser!(u64).range(16..))]
        q_max: Option<u64>,
        /// Cap on the comparison-group parameter.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        aux_max: Option<u64>,
        /// Family instances enumerated before giving up with budget-exceeded.
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Synthetic group `CASE:COMPONENT:P1,P2,...` for fault injection.
        #[arg(long, hide = true)]
        inject: Vec<String>,
    },
    /// The q = 9 exception.
    U39,
    /// Prime-power divisors r^g of |PSU3(q)| with (q^2 - q + 1)/d | r^g - 1.
    Kernel { q: u64 },
    /// Brute-force construction of SU/PSU in dimension 2 or 3.
    Brute {
        q: u64,
        /// SU2, PSU2, SU3 or PSU3.
        #[arg(long, default_value = "PSU3")]
        kind: GroupKind,
        /// Orders of maximal abelian subgroups.
        #[arg(long)]
        mas: bool,
        /// Element orders.
        #[arg(long)]
        spectrum: bool,
        /// Prime graph, compared with the formula graph for PSU3.
        #[arg(long)]
        graph: bool,
        /// Abelian subgroups coprime to q*d divide a torus order.
        #[arg(long)]
        malle: bool,
    },
    /// Permitted field-automorphism extensions.
    Classify { q: u64 },
    /// Write every report at default bounds into a directory.
    Report {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Outcome {
    value: Value,
    text: String,
    passed: bool,
}

fn outcome<T: Serialize>(result: &T, text: String, passed: bool) -> Outcome {
    Outcome {
        value: serde_json::to_value(result).expect("reports serialize"),
        text,
        passed,
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

fn prime_power(q: u64, min: u64) -> Result<PrimePower, Failure> {
    let pp = PrimePower::new(q)
        .map_err(|e| Failure::Usage(format!("invalid value '{q}' for '<Q>': {e}")))?;
    if q >= Q_LIMIT {
        return Err(Failure::Usage(format!(
            "invalid value '{q}' for '<Q>': must be below 2^32"
        )));
    }
    if q < min {
        return Err(Failure::Usage(format!(
            "invalid value '{q}' for '<Q>': must be at least {min}"
        )));
    }
    Ok(pp)
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

/// `$PSU3KIT_CACHE_DIR`, else `$XDG_CACHE_HOME/psu3kit`, else `~/.cache/psu3kit`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir).join("psu3kit"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("psu3kit"))
}

fn parse_injection(arg: &str) -> Result<InjectedGroup, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "invalid value '{arg}' for '--inject': expected CASE:COMPONENT:P1,P2,..."
        ))
    };
    let mut parts = arg.split(':');
    let case = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let component = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let primes = parts
        .next()
        .ok_or_else(bad)?
        .split(',')
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<Vec<u64>, _>>()?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(InjectedGroup {
        case,
        component,
        primes,
    })
}

fn case_config(
    case: u8,
    q_max: Option<u64>,
    aux_max: Option<u64>,
    budget: u64,
    workers: Option<usize>,
) -> CaseConfig {
    let mut cfg = CaseConfig::defaults(case);
    if let Some(q) = q_max {
        cfg.q_max = q;
    }
    cfg.aux_max = aux_max;
    cfg.budget = budget;
    cfg.workers = workers;
    cfg
}

fn run_cases(
    which: &str,
    q_max: Option<u64>,
    aux_max: Option<u64>,
    budget: u64,
    workers: Option<usize>,
    inject: &[InjectedGroup],
) -> Result<Vec<CaseReport>, Failure> {
    let cases: Vec<u8> = if which == "all" {
        (1..=11).collect()
    } else {
        match which.parse::<u8>() {
            Ok(n) if (1..=11).contains(&n) => vec![n],
            _ => {
                return Err(Failure::Usage(format!(
                    "invalid value '{which}' for '<WHICH>': expected 1..=11 or all"
                )))
            }
        }
    };
    cases
        .into_iter()
        .map(|c| {
            let mut cfg = case_config(c, q_max, aux_max, budget, workers);
            cfg.inject = inject.to_vec();
            run_case(c, &cfg).map_err(compute)
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let workers = cli.workers.map(|w| w as usize);
    match &cli.command {
        Command::Orders { q } => {
            let q = prime_power(*q, 2)?;
            let result = json!({
                "q": q.value(),
                "order": order_psu3(q).pretty(),
                "order_value": order_psu3(q).value().to_string(),
                "pi": order_psu3(q).primes(),
                "odd_component": odd_component_psu3(q).to_u64(),
                "tori": maximal_tori_psu3(q).orders,
            });
            Ok(outcome(&result, render::orders(q), true))
        }
        Command::Graph { q } => {
            let q = prime_power(*q, 3)?;
            let g = graph_psu3(q).map_err(compute)?;
            let ind = psu3_independence(q).map_err(compute)?;
            let result = json!({
                "q": q.value(),
                "vertices": g.vertices(),
                "edges": g.edges(),
                "components": g.components(),
                "independence": ind,
            });
            Ok(outcome(&result, render::graph(&g, &ind), true))
        }
        Command::Zsigmondy { p, n } => {
            let primes = zsigmondy_primes(*p, *n)
                .map_err(|e| Failure::Usage(format!("invalid value '{p}' for '<P>': {e}")))?;
            let result = json!({ "p": p, "n": n, "primes": primes });
            Ok(outcome(
                &result,
                format!("primitive prime divisors of {p}^{n} - 1: {primes:?}\n"),
                true,
            ))
        }
        Command::Catalan {
            prime_bound,
            exponent_bound,
        } => {
            let sols = catalan_search(*prime_bound, *exponent_bound);
            let text = render::lines(
                "p^m - q^n = 1",
                sols.iter()
                    .map(|s| format!("{}^{} - {}^{} = 1", s.p, s.m, s.q, s.n)),
            );
            Ok(outcome(
                &json!({ "prime_bound": prime_bound, "exponent_bound": exponent_bound, "solutions": sols }),
                text,
                true,
            ))
        }
        Command::Nagell {
            prime_bound,
            exponent_bound,
        } => {
            let sols = nagell_search(*prime_bound, *exponent_bound);
            let text = render::lines(
                "p^m - 2q^n = +-1",
                sols.iter()
                    .map(|s| format!("{}^{} - 2*{}^{} = {}", s.p, s.m, s.q, s.n, s.sign)),
            );
            Ok(outcome(
                &json!({ "prime_bound": prime_bound, "exponent_bound": exponent_bound, "solutions": sols }),
                text,
                true,
            ))
        }
        Command::Case {
            which,
            q_max,
            aux_max,
            budget,
            inject,
        } => {
            let inject = inject
                .iter()
                .map(|s| parse_injection(s))
                .collect::<Result<Vec<_>, _>>()?;
            let reports = run_cases(which, *q_max, *aux_max, *budget, workers, &inject)?;
            let passed = reports.iter().all(CaseReport::passed);
            let text: String = reports.iter().map(render::case).collect();
            if reports.len() == 1 {
                Ok(outcome(&reports[0], text, passed))
            } else {
                Ok(outcome(&reports, text, passed))
            }
        }
        Command::U39 => {
            let r = verify_u39();
            Ok(outcome(&r, render::u39(&r), r.passed))
        }
        Command::Kernel { q } => {
            let q = prime_power(*q, 3)?;
            let r = kernel_obstruction_check(q);
            Ok(outcome(&r, render::kernel(&r), r.passed()))
        }
        Command::Brute {
            q,
            kind,
            mas,
            spectrum,
            graph,
            malle,
        } => brute(cli, *q, *kind, *mas, *spectrum, *graph, *malle),
        Command::Classify { q } => {
            let q = prime_power(*q, 3)?;
            let c = classify_extensions(q)
                .map_err(|e| Failure::Usage(format!("invalid value '{q}' for '<Q>': {e}")))?;
            Ok(outcome(&c, render::classification(&c), true))
        }
        Command::Report { all, out } => {
            if !all {
                return Err(Failure::Usage(
                    "the argument '--all' is required for 'report'".into(),
                ));
            }
            write_reports(out, workers)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn brute(
    cli: &Cli,
    q: u64,
    kind: GroupKind,
    mas: bool,
    spectrum: bool,
    graph: bool,
    malle: bool,
) -> Result<Outcome, Failure> {
    let q = prime_power(q, 2)?;
    let dir = cli.cache_dir.clone().or_else(default_cache_dir);
    let g = build_group_cached(kind, q, dir.as_deref()).map_err(compute)?;
    let mut result = json!({ "kind": kind.to_string(), "q": q.value(), "order": g.order() });
    let mut text = format!("|{kind}({q})| = {}\n", g.order());
    let mut passed = true;
    let catalog = if mas || malle || spectrum {
        Some(catalog_cached(&g, DEFAULT_NODE_BUDGET, dir.as_deref()).map_err(compute)?)
    } else {
        None
    };
    if mas {
        let cat = catalog.as_ref().expect("built above");
        result["maximal_abelian_orders"] = json!(cat.orders);
        result["class_counts"] = json!(cat.class_counts);
        text.push_str(&format!("M(G) = {:?}\n", cat.orders));
    }
    if spectrum {
        let spec = g.spectrum();
        let cover = verify_omegakh(&spec, catalog.as_ref().expect("built above"));
        passed &= cover.passed();
        text.push_str(&format!("element orders = {spec:?}\n"));
        text.push_str(&format!(
            "element orders dividing no member of M(G): {:?}\n",
            cover.violations
        ));
        result["spectrum"] = json!(spec);
        result["spectrum_cover"] = json!(cover);
    }
    if graph {
        let pg = g.prime_graph();
        text.push_str(&pg.to_adjacency_text());
        if kind == GroupKind::PSU3 && q.value() >= 3 {
            let same = graph_psu3(q).map_err(compute)? == pg;
            passed &= same;
            text.push_str(&format!("formula graph agrees: {same}\n"));
            result["formula_graph_agrees"] = json!(same);
        }
        result["graph"] = json!({ "vertices": pg.vertices(), "edges": pg.edges() });
    }
    if malle {
        let (coprime_to, tori) = match kind {
            GroupKind::PSU3 => {
                let t = maximal_tori_psu3(q);
                (q.value() * t.d, t.orders.to_vec())
            }
            GroupKind::PSU2 => {
                let v = q.value();
                let e = if v % 2 == 1 { 2 } else { 1 };
                (v, vec![(v - 1) / e, (v + 1) / e])
            }
            _ => {
                return Err(Failure::Usage(format!(
                    "invalid value '{kind}' for '--kind': --malle needs PSU2 or PSU3"
                )))
            }
        };
        let r = verify_malle(
            &g,
            catalog.as_ref().expect("built above"),
            coprime_to,
            &tori,
        );
        passed &= r.passed();
        text.push_str(&format!(
            "abelian orders coprime to {coprime_to}: {:?}; tori {:?}; violations {:?}\n",
            r.checked_orders,
            r.tori,
            r.violations
                .iter()
                .map(|v| v.subgroup_order)
                .collect::<Vec<_>>()
        ));
        result["torus_divisibility"] = json!(r);
    }
    Ok(Outcome {
        value: result,
        text,
        passed,
    })
}

fn document(command: &str, value: Value, passed: bool) -> Value {
    json!({ "version": REPORT_VERSION, "command": command, "passed": passed, "result": value })
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), Failure> {
    fs::write(dir.join(name), body)
        .map_err(|e| Failure::Compute(format!("{}: {e}", dir.join(name).display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// The golden report set: one structured document and one text file per
/// check, plus a summary line per check.
fn write_reports(dir: &Path, workers: Option<usize>) -> Result<Outcome, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Compute(format!("{}: {e}", dir.display())))?;
    let mut summary = Vec::new();
    let mut all_passed = true;
    for case in 1..=11u8 {
        let mut cfg = CaseConfig::defaults(case);
        cfg.workers = workers;
        let r = run_case(case, &cfg).map_err(compute)?;
        let passed = r.passed();
        all_passed &= passed;
        let stem = format!("case-{case:02}");
        write_file(
            dir,
            &format!("{stem}.json"),
            &pretty(&document(
                "case",
                serde_json::to_value(&r).expect("json"),
                passed,
            )),
        )?;
        write_file(dir, &format!("{stem}.txt"), &render::case(&r))?;
        summary.push(format!(
            "{stem}: {} ({} near-misses)",
            if passed { "pass" } else { "FAIL" },
            r.near_misses.len()
        ));
    }
    let u = verify_u39();
    all_passed &= u.passed;
    write_file(
        dir,
        "u39.json",
        &pretty(&document(
            "u39",
            serde_json::to_value(&u).expect("json"),
            u.passed,
        )),
    )?;
    write_file(dir, "u39.txt", &render::u39(&u))?;
    summary.push(format!("u39: {}", if u.passed { "pass" } else { "FAIL" }));

    let kernels: Vec<_> = [4u64, 9]
        .iter()
        .map(|&q| kernel_obstruction_check(PrimePower::new(q).expect("prime power")))
        .collect();
    let k_passed = kernels.iter().all(|k| k.passed());
    all_passed &= k_passed;
    write_file(
        dir,
        "kernel.json",
        &pretty(&document("kernel", json!(kernels), k_passed)),
    )?;
    summary.push(format!(
        "kernel: {}",
        if k_passed { "pass" } else { "FAIL" }
    ));

    let qs: Vec<PrimePower> = prime_power_range(10_000)
        .into_iter()
        .filter(|q| q.value() >= 3)
        .collect();
    let table: Vec<_> = qs
        .iter()
        .filter_map(|&q| classify_extensions(q).ok())
        .filter(|c| c.q.alpha() > 1)
        .collect();
    let mismatches = extension_consistency(&qs);
    write_file(
        dir,
        "extensions.json",
        &pretty(&document(
            "classify",
            json!({ "classifications": table, "graph_mismatches": mismatches }),
            true,
        )),
    )?;
    summary.push(format!(
        "extensions: {} prime powers, {} graph mismatches recorded",
        table.len(),
        mismatches.len()
    ));

    let mut text = summary.join("\n");
    text.push('\n');
    write_file(dir, "summary.txt", &text)?;
    Ok(Outcome {
        value: json!({ "out": dir.display().to_string(), "summary": summary }),
        text,
        passed: all_passed,
    })
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let written = match cli.format {
                Format::Text => out.write_all(o.text.as_bytes()),
                Format::Json => out.write_all(
                    pretty(&document(command_name(&cli.command), o.value, o.passed)).as_bytes(),
                ),
            };
            if written.is_err() {
                return 2;
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Orders { .. } => "orders",
        Command::Graph { .. } => "graph",
        Command::Zsigmondy { .. } => "zsigmondy",
        Command::Catalan { .. } => "catalan",
        Command::Nagell { .. } => "nagell",
        Command::Case { .. } => "case",
        Command::U39 => "u39",
        Command::Kernel { .. } => "kernel",
        Command::Brute { .. } => "brute",
        Command::Classify { .. } => "classify",
        Command::Report { .. } => "report",
    }
}
