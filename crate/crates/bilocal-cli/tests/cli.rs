use std::process::{Command, Output};

use bilocal_cli::{parse_scan_config, BilocalMode, OutFormat};
use bilocal_core::network::{analytic_bound, maximize_bilocal};
use bilocal_core::scan::{format_real, render_csv, render_json, run_scan, Figure, ScanConfig};
use bilocal_core::states::{concurrence_x, horodecki, TParams};

fn bilocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilocal")).args(args).output().unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn line_value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|line| line.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{report}"))
}

#[test]
fn assess_singlet_matches_library_bit_for_bit() {
    let out = bilocal(&["assess", "t:-1,-1,-1"]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    let x = TParams::new(-1.0, -1.0, -1.0).unwrap().to_x();
    let h = horodecki(&x.matrix()).unwrap();
    assert_eq!(line_value(&report, "horodecki_m"), format_real(h.m));
    assert_eq!(line_value(&report, "chsh"), format_real(h.chsh));
    assert_eq!(line_value(&report, "concurrence"), format_real(concurrence_x(&x)));
    for key in ["margin_xy", "margin_zx", "margin_zy"] {
        assert_eq!(line_value(&report, key), format_real(-1.0));
    }
    assert_eq!(line_value(&report, "chsh_verdict"), "nonlocal");
    assert_eq!(line_value(&report, "swap_nonbilocal"), "true");
}

#[test]
fn assess_werner_half_is_local() {
    let out = bilocal(&["assess", "werner:0.5"]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    let x = TParams::werner(0.5).unwrap().to_x();
    let h = horodecki(&x.matrix()).unwrap();
    assert_eq!(line_value(&report, "horodecki_m"), format_real(h.m));
    assert_eq!(line_value(&report, "chsh_verdict"), "local");
    assert_eq!(line_value(&report, "concurrence"), format_real(0.25));
}

#[test]
fn assess_rejects_invalid_coherence_naming_the_constraint() {
    let out = bilocal(&["assess", "x:0.5,0,0,0.5,0.6,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("outer coherence exceeds its population bound"), "stderr: {err}");
}

#[test]
fn assess_rejects_unknown_family_and_bad_arity() {
    let out = bilocal(&["assess", "foo:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("unknown state family"));
    let out = bilocal(&["assess", "t:1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("takes 3 value(s)"));
}

#[test]
fn bilocal_singlets_reach_sqrt_two() {
    let out = bilocal(&["bilocal", "t:-1,-1,-1", "t:-1,-1,-1"]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    let x = TParams::new(-1.0, -1.0, -1.0).unwrap().to_x();
    let bound = analytic_bound(&x, &x);
    let numeric = maximize_bilocal(&x, &x).unwrap();
    assert_eq!(line_value(&report, "analytic_b1"), format_real(bound.value));
    assert_eq!(line_value(&report, "numeric_b"), format_real(numeric.b_value));
    assert_eq!(line_value(&report, "gap"), format_real(numeric.b_value - bound.value));
    assert_eq!(line_value(&report, "verdict"), "nonbilocal");
    assert_eq!(line_value(&report, "analytic_b1"), "1.41421356237e0");
}

#[test]
fn bilocal_weak_werner_pair_not_refuted() {
    let out = bilocal(&["bilocal", "werner:1", "werner:0.4", "--mode", "analytic"]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    assert_eq!(line_value(&report, "verdict"), "bilocal_not_refuted");
    assert!(!report.contains("numeric_b"));
    let out = bilocal(&["bilocal", "werner:1", "werner:0.4", "--mode", "numeric"]);
    assert!(!stdout_of(&out).contains("analytic_b1"));
}

#[test]
fn swap_of_singlets_gives_uniform_branches() {
    let out = bilocal(&["swap", "t:-1,-1,-1", "t:-1,-1,-1"]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    for label in ["phi_plus", "phi_minus", "psi_plus", "psi_minus"] {
        assert_eq!(line_value(&report, &format!("{label}_probability")), format_real(0.25));
    }
    // swapping two singlets leaves each branch in a Bell state
    assert_eq!(line_value(&report, "phi_plus_coh_outer"), format_real(0.5));
}

#[test]
fn filter_reveals_hidden_nonlocality() {
    let l2 = 1e-3 / 0.5f64.sqrt();
    let out = bilocal(&["filter", "hidden:0.5", "--l1", "0.001", "--l2", &l2.to_string()]);
    assert!(out.status.success());
    let report = stdout_of(&out);
    let ground: f64 = line_value(&report, "chsh_ground_truth").parse().unwrap();
    assert!((ground - 2.0 * 1.5f64.sqrt()).abs() < 1e-4);
    let out = bilocal(&["filter", "hidden:0.5", "--l1", "0", "--l2", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_stdout_matches_library_rendering() {
    let out = bilocal(&["scan", "--fig", "5", "--step", "0.25"]);
    assert!(out.status.success());
    let cfg = ScanConfig::figure(Figure::Fig5).with_step(0.25);
    let table = run_scan(&cfg).unwrap();
    assert_eq!(stdout_of(&out), render_csv(&table));
    let out = bilocal(&["scan", "--fig", "5", "--step", "0.25", "--format", "json"]);
    assert_eq!(stdout_of(&out), render_json(&table));
}

#[test]
fn scan_writes_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = bilocal(&["scan", "--fig", "2", "--step", "0.5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("25 records"));
    let cfg = ScanConfig::figure(Figure::Fig2).with_step(0.5);
    let expected = render_csv(&run_scan(&cfg).unwrap());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), expected);
}

#[test]
fn scan_json_file_parses_and_matches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig6.json");
    let out = bilocal(&[
        "scan", "--fig", "6", "--step", "0.5", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let records = parsed.as_array().unwrap();
    assert_eq!(records.len(), 25);
    assert!(records[0].get("delta1").is_some());
}

#[test]
fn scan_env_var_directs_relative_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bilocal"))
        .args(["scan", "--fig", "3", "--step", "0.1", "--out", "fig3.csv"])
        .env("BILOCAL_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("fig3.csv").is_file());
}

#[test]
fn scan_error_exit_codes() {
    let out = bilocal(&["scan", "--fig", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bilocal(&["scan"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bilocal(&["scan", "--fig", "2", "--step", "0.5", "--out", "/nonexistent/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bilocal(&["scan", "--config", "/nonexistent/scan.conf"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bilocal(&["scan", "--fig", "2", "--step", "-0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_config_file_customizes_axes() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("scan.conf");
    let text = "# custom visibility sweep\nfigure = 3\nstep = 0.05\nphi1.max = 0.1\n";
    std::fs::write(&conf, text).unwrap();
    let path = dir.path().join("custom.csv");
    let out = bilocal(&[
        "scan", "--config", conf.to_str().unwrap(), "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let expected = render_csv(&run_scan(&parse_scan_config(text).unwrap()).unwrap());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), expected);
}

#[test]
fn scan_config_rejects_bad_keys_and_values() {
    assert!(parse_scan_config("step = 0.1\n").is_err()); // no figure
    assert!(parse_scan_config("figure = 9\n").is_err());
    assert!(parse_scan_config("figure = 2\nbogus = 1\n").is_err());
    assert!(parse_scan_config("figure = 2\nc9.min = 0\n").is_err());
    assert!(parse_scan_config("figure = 2\nc1.weird = 0\n").is_err());
    assert!(parse_scan_config("figure = 2\nc1.min = abc\n").is_err());
    assert!(parse_scan_config("figure = 2\nno equals sign\n").is_err());
    let cfg = parse_scan_config("figure = 4\ncoh_outer = 0.1\ncoh_inner = 0.05\n").unwrap();
    assert_eq!(cfg.coh_outer, 0.1);
    assert_eq!(cfg.coh_inner, 0.05);
}

#[test]
fn usage_errors_exit_two() {
    let out = bilocal(&["assess"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bilocal(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bilocal(&["bilocal", "t:-1,-1,-1", "t:-1,-1,-1", "--mode", "weird"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bilocal(&["scan", "--fig", "2", "--config", "x.conf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mode_enum_round_trips() {
    // value_enum wiring: all three modes are accepted
    for mode in ["analytic", "numeric", "both"] {
        let out = bilocal(&["bilocal", "werner:0.9", "werner:0.9", "--mode", mode]);
        assert!(out.status.success(), "mode {mode}");
    }
    assert_eq!(BilocalMode::Both, BilocalMode::Both);
    assert_ne!(OutFormat::Csv, OutFormat::Json);
}
