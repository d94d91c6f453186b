use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn distpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distpat"))
        .args(args)
        .env_remove("DISTPAT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn count_column(out: &Output) -> Vec<u64> {
    stdout(out).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

#[test]
fn count_far_inversion() {
    let out = distpat(&["count", "-p", "2 #1 1", "-n", "3..6", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(count_column(&out), [3, 5, 8, 13]);
}

#[test]
fn count_point_values() {
    let out = distpat(&["count", "-p", "1 #1 2 3 4", "-n", "7", "--format", "csv"]);
    assert_eq!(count_column(&out), [3612]);
    let out = distpat(&["count", "-p", "21", "-n", "5", "--format", "csv"]);
    assert_eq!(count_column(&out), [1]);
}

#[test]
fn text_table_output() {
    let out = distpat(&["count", "-p", "2 #1 1", "-n", "3..4"]);
    assert_eq!(stdout(&out), "n  count\n-  -----\n3  3\n4  5\n");
}

#[test]
fn cap_refusal_exits_3() {
    let out = distpat(&["count", "-p", "21", "-n", "13"]);
    assert_eq!(out.status.code(), Some(3));
    let out = distpat(&["--cap", "4", "list", "-p", "21", "-n", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(distpat(&["count", "-p", "1 #x 2"]).status.code(), Some(1));
    assert_eq!(distpat(&["run", "no-such-experiment"]).status.code(), Some(1));
    assert_eq!(distpat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(distpat(&["--help"]).status.code(), Some(0));
}

#[test]
fn seq_list_expand() {
    assert_eq!(stdout(&distpat(&["seq", "-p", "1 3 2", "--max", "5"])), "1, 1, 2, 5, 14, 42\n");
    let out = stdout(&distpat(&["list", "-p", "2 #1 1", "-n", "3", "--format", "csv"]));
    assert_eq!(out, "permutation\n123\n132\n213\n");
    let out = stdout(&distpat(&["expand", "1 #1 2", "--format", "csv"]));
    assert_eq!(out, "classical\n123\n132\n213\n");
}

#[test]
fn run_reports_and_json() {
    let out = distpat(&["run", "corollary-venn", "--n", "6..8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("X < Y (exception)"));
    assert!(text.ends_with("verdict: PASS (12 rows, 0 failed)\n"));

    let out = distpat(&["run", "bijection-roundtrip", "--n", "7", "--r", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");

    assert!(distpat(&["run", "kuszmaul-6", "--n", "9"]).status.success());
    let listing = stdout(&distpat(&["run", "--list", "--format", "csv"]));
    assert_eq!(listing.lines().count(), 24);
}

#[test]
fn reports_are_reproducible() {
    let a = distpat(&["run", "table1-classes", "--n", "4..6"]);
    let b = distpat(&["run", "table1-classes", "--n", "4..6", "--workers", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bijection_commands() {
    assert_eq!(stdout(&distpat(&["bij", "f", "352149867", "-r", "3"])), "(1 3 4)(2 5)(6 7 9 8)\n");
    assert_eq!(stdout(&distpat(&["bij", "finv", "(1352)(4)(687)", "-r", "4"])), "41352867\n");
    assert_eq!(stdout(&distpat(&["bij", "g", "231", "-j", "1"])), "3142\n");
    let out = distpat(&["bij", "f", "321", "-r", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contains"));
}

#[test]
fn oeis_comparisons() {
    let sidecar = data("oeis.toml");
    let cases = [
        ("b049124.txt", "1 2 #1 3"),
        ("b071726.txt", "1 3 #1 2; 1324; 2431; 3142; 4132"),
        ("b071742.txt", "#1 1 3 2; 1 3 2 #1; 1 3 4 2"),
    ];
    for (file, ps) in cases {
        let out = distpat(&["oeis-compare", &data(file), "-p", ps, "--sidecar", &sidecar]);
        assert!(out.status.success(), "{file}: {}", stdout(&out));
    }
    // Without the sidecar the n = 3 deviation shows up as a failure.
    let out = distpat(&["oeis-compare", &data("b071742.txt"), "-p", "#1 1 3 2; 1 3 2 #1; 1 3 4 2"]);
    assert_eq!(out.status.code(), Some(2));
    // Two shared sizes are not enough.
    let out = distpat(&["oeis-compare", &data("b049124.txt"), "-p", "1 2 #1 3", "-n", "1..2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sw_tables() {
    let out = stdout(&distpat(&["sw", "-p", "21", "-n", "1..3", "--format", "csv"]));
    assert_eq!(out, "n,count,root\n1,1,1.000000\n2,1,1.000000\n3,1,1.000000\n");
    let out = stdout(&distpat(&["sw", "--linear-gap", "1/2", "-n", "2..8", "--format", "csv"]));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")), "{out}");
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("counts.jsonl");
    let cache = path.to_str().unwrap();
    assert!(distpat(&["--cache", cache, "cache", "verify"]).status.success());
    assert!(distpat(&["--cache", cache, "count", "-p", "2 #1 1", "-n", "3..5"]).status.success());
    let shown = stdout(&distpat(&["--cache", cache, "cache", "show"]));
    assert!(shown.contains("3 rows"), "{shown}");
    assert!(shown.contains("2 #1 1  n = 3,4,5"), "{shown}");
    let out = Command::new(env!("CARGO_BIN_EXE_distpat"))
        .args(["cache", "verify"])
        .env("DISTPAT_CACHE", cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(distpat(&["--cache", cache, "cache", "clear"]).status.success());
    assert!(stdout(&distpat(&["--cache", cache, "cache", "show"])).contains("0 rows"));
    assert_eq!(distpat(&["cache", "show"]).status.code(), Some(1));
}
