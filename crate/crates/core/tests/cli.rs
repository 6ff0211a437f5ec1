use std::fs;
use std::path::{Path, PathBuf};

use psu3kit::cli::run;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("psu3kit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../reports")
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn report_matches_golden_files_for_any_worker_count() {
    let golden = golden_dir();
    for workers in ["1", "4"] {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("reports");
        let o = cli(&[
            "--workers",
            workers,
            "report",
            "--all",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(listing(&out), listing(&golden));
        for name in listing(&golden) {
            let want = fs::read(golden.join(&name)).unwrap();
            let got = fs::read(out.join(&name)).unwrap();
            assert!(
                want == got,
                "{name} differs from the golden copy ({workers} workers)"
            );
        }
    }
}

#[test]
fn golden_documents_follow_the_schema() {
    for name in listing(&golden_dir())
        .iter()
        .filter(|n| n.ends_with(".json"))
    {
        let v: Value = serde_json::from_slice(&fs::read(golden_dir().join(name)).unwrap()).unwrap();
        assert_eq!(v["version"], 1, "{name}");
        assert_eq!(v["passed"], true, "{name}");
        assert!(v["command"].is_string() && !v["result"].is_null(), "{name}");
        if name.starts_with("case-") {
            let r = &v["result"];
            for key in ["case", "ranges", "candidates", "near_misses", "verdict"] {
                assert!(!r[key].is_null(), "{name}: {key}");
            }
            assert_eq!(r["verdict"], "no-survivor");
        }
    }
}

#[test]
fn orders_of_psu3_9() {
    let o = cli(&["orders", "9"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("2^5 * 3^6 * 5^2 * 73"));
    assert!(o.stdout.contains("odd component = 73"));
}

#[test]
fn graph_lists_rho_sets() {
    let o = cli(&["graph", "11"]);
    assert_eq!(o.code, 0);
    assert!(
        o.stdout.contains("components = [[2, 3, 5, 11], [37]]"),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("rho(2) = [2, 37]"));
}

#[test]
fn case_11_lists_j4() {
    let o = cli(&["case", "11"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("case 11: no-survivor"));
    assert!(o.stdout.contains("q = 11 (d = 3, target 37): J4"));
}

#[test]
fn classify_49() {
    let o = cli(&["--format", "json", "classify", "49"]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["command"], "classify");
    assert_eq!(v["result"]["outcome"], 6);
    assert_eq!(
        v["result"]["allowed_extension_orders"],
        serde_json::json!([1, 2])
    );
}

#[test]
fn structured_output_is_one_versioned_document() {
    for args in [
        &["--format", "json", "u39"][..],
        &["--format", "json", "zsigmondy", "2", "10"],
        &["--format", "json", "case", "all"],
        &["--format", "json", "catalan", "--prime-bound", "50"],
    ] {
        let o = cli(args);
        assert_eq!(o.code, 0, "{args:?}");
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn violations_exit_1() {
    assert_eq!(cli(&["kernel", "3"]).code, 1);
    assert_eq!(cli(&["kernel", "4"]).code, 0);
    let o = cli(&["brute", "5", "--kind", "psu2", "--malle"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("violations [4]"));
}

#[test]
fn injected_survivor_exits_1() {
    let o = cli(&[
        "--format",
        "json",
        "case",
        "11",
        "--inject",
        "11:157:2,3,7,157",
    ]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["result"]["verdict"], "survivor-found");
    let o = cli(&["case", "11", "--inject", "11:157:2,3,101,157"]);
    assert_eq!(o.code, 0);
}

#[test]
fn usage_errors_exit_2_and_name_the_problem() {
    for (args, needle) in [
        (&["orders", "12"][..], "'<Q>'"),
        (&["orders"], "<Q>"),
        (&["case", "12"], "'<WHICH>'"),
        (&["case", "3", "--q-max", "10"], "--q-max"),
        (&["--workers", "0", "case", "1"], "--workers"),
        (&["--format", "yaml", "u39"], "--format"),
        (&["brute", "3", "--kind", "SL9"], "--kind"),
        (&["case", "1", "--inject", "11:x"], "--inject"),
        (&["classify", "5"], "Fermat"),
        (&["frobnicate"], "frobnicate"),
        (&["report", "--out", "/tmp/x"], "--all"),
    ] {
        let o = cli(args);
        assert_eq!(o.code, 2, "{args:?}");
        assert!(o.stderr.contains(needle), "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("report"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn brute_cache_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        dir,
        "brute",
        "3",
        "--mas",
        "--spectrum",
        "--graph",
        "--malle",
    ];
    let first = cli(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let files = listing(tmp.path());
    assert!(files.len() >= 2, "{files:?}");
    let bytes: Vec<Vec<u8>> = files
        .iter()
        .map(|f| fs::read(tmp.path().join(f)).unwrap())
        .collect();
    let second = cli(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(listing(tmp.path()), files);
    for (f, b) in files.iter().zip(&bytes) {
        assert_eq!(&fs::read(tmp.path().join(f)).unwrap(), b, "{f} rewritten");
    }
    assert!(first.stdout.contains("M(G) = [7, 8, 9, 12, 16]"));
    assert!(first.stdout.contains("formula graph agrees: true"));
}

#[test]
fn corrupt_cache_is_rebuilt_not_trusted() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let args = ["--cache-dir", dir, "brute", "4", "--kind", "PSU3"];
    let first = cli(&args);
    assert_eq!(first.code, 0);
    for f in listing(tmp.path()) {
        fs::write(tmp.path().join(f), b"garbage").unwrap();
    }
    let again = cli(&args);
    assert_eq!(again.code, 0, "{}", again.stderr);
    assert_eq!(first.stdout, again.stdout);
}
