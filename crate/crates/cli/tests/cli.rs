//! Command-line contract: exit codes, help coverage, deterministic
//! outputs, and the file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_period-atlas"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn period-atlas")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("period_atlas_cli_{name}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn help_is_available_everywhere() {
    for sub in ["period", "criterion", "certify", "map", "sturm"] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("--help"), "{sub} help misses flags");
    }
    assert!(run(&["--help"]).status.success());
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = run(&["period", "--system", "loud", "--D", "-0.25", "--wat", "1"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["period", "--system", "loud"]);
    assert_eq!(out.status.code(), Some(64), "missing grid is a usage error");
}

#[test]
fn period_sweep_is_deterministic_and_well_formed() {
    let dir = tmpdir("period");
    let out_path = dir.join("sweep.csv");
    let args = [
        "period",
        "--system",
        "loud",
        "--D",
        "-0.25",
        "--h",
        "0.01:100:log:50",
        "--out",
        out_path.to_str().unwrap(),
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(&out_path).unwrap();
    let rows: Vec<&str> = first
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("param"))
        .collect();
    assert_eq!(rows.len(), 50);
    assert!(first.contains("# monotonicity: strictly decreasing"));
    // footer carries the boundary limit 4π/3
    assert!(first.contains("# asymptotic_limit: 4.188790204786"));
    // second run must be byte-identical
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let second = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn period_zk_sweep_decreases_toward_limit() {
    let out = run(&[
        "period", "--system", "zk", "--n", "1", "--k", "1", "--rho", "0.05:2.0:lin:40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("param"))
        .collect();
    assert_eq!(rows.len(), 40);
    assert!(text.contains("# monotonicity: strictly decreasing"));
    let limit = 4.0 * std::f64::consts::PI / 3.0;
    let last_period: f64 = rows.last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(last_period > limit && last_period < 2.0 * std::f64::consts::PI);
}

#[test]
fn period_json_format() {
    let out = run(&[
        "period", "--system", "loud", "--D", "-0.5", "--h", "0.1:10:log:10", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 10);
    assert_eq!(v["monotonicity"], "constant");
    assert_eq!(v["status"], "ok");
}

#[test]
fn criterion_scan_rejects_bad_grid_and_reports_single_sign() {
    let out = run(&["criterion", "--D", "-0.25", "--u", "0:0.9:lin:16"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["criterion", "--D", "-0.25", "--u", "0.01:0.99:lin:64"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("single-signed: yes"));
}

#[test]
fn map_subcommand_cases() {
    let out = run(&["map", "--n", "1", "--k", "1", "--rho", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("b = 1 + 2n/k = 3.0"));
    assert!(text.contains("-2.5000000000000000e-1"));
    assert!(text.contains("(0.0000000000000000e0, -4.0000000000000000e0)"));
    assert!(text.contains("4.1887902047863905e0"));

    let out = run(&["map", "--n", "0", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("isochronous"));

    let out = run(&["map", "--k", "0", "--n", "2", "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("u <= 1.0000000000000000e0"));
    assert!(text.contains("boundary"));
}

#[test]
fn sturm_subcommand_examples() {
    let dir = tmpdir("sturm");
    // u² - 1/4 on (0, 1): one root
    let poly = dir.join("quad.poly");
    std::fs::write(&poly, "-1/4 0 0 0\n1/1 2 0 0\n").unwrap();
    let out = run(&["sturm", "--poly", poly.to_str().unwrap(), "--lo", "0", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");

    // endpoint root: exit 2
    let out = run(&["sturm", "--poly", poly.to_str().unwrap(), "--lo", "-1/2", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed file: exit 2 with a line number
    let bad = dir.join("bad.poly");
    std::fs::write(&bad, "1/2 0 0 0\nnot numbers\n").unwrap();
    let out = run(&["sturm", "--poly", bad.to_str().unwrap(), "--lo", "0", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn certify_writes_report_and_polys() {
    let dir = tmpdir("certify");
    let report = dir.join("report.json");
    let polys = dir.join("polys");
    let out = run(&[
        "certify",
        "--branch",
        "decreasing",
        "--direct-budget-secs",
        "0",
        "--out",
        report.to_str().unwrap(),
        "--emit-polys",
        polys.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["branch"], "decreasing");
    for name in ["R2", "Delta_u", "K0", "K1", "W", "U_D2"] {
        let p = polys.join(format!("decreasing_{name}.poly"));
        assert!(p.exists(), "missing {}", p.display());
    }
    std::fs::remove_dir_all(&dir).ok();
}
