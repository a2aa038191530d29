use std::fs;
use std::process::{Command, Output};

fn mcbdqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcbdqm"))
        .args(args)
        .env_remove("MCBDQM_OUT")
        .output()
        .expect("launch binary")
}

#[test]
fn solve_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mcbdqm(&[
        "--nx",
        "6",
        "--dt",
        "1e-3",
        "--t-end",
        "0.01",
        "--snapshots",
        "0.005",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("linf_u"), "{stdout}");
    for f in ["field_t0.005000.csv", "field_t0.010000.csv", "summary.json"] {
        assert!(dir.path().join(f).exists(), "missing {f}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "problem = \"sincos\"\nnx = 5\ndt = 1e-3\nt-end = 0.004\ndump-weights = true\n",
    )
    .unwrap();
    let out = dir.path().join("res");
    let o = mcbdqm(&[
        "--config",
        cfg.to_str().unwrap(),
        "--nx",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["problem"], "sincos");
    assert_eq!(summary["nx"], 7);
    assert_eq!(summary["ny"], 7);
    assert_eq!(summary["steps"], 4);
    assert!(summary["linf_u"].is_null());
    assert!(out.join("wx1.csv").exists());
}

#[test]
fn bad_arguments_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for args in [
        vec!["--re", "0", "--out", out],
        vec!["--mode", "bogus", "--out", out],
        vec!["--mode", "table-check", "--out", out],
        vec!["--mode", "converge", "--grids", "4,6", "--out", out],
    ] {
        let o = mcbdqm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "colour = 3\n").unwrap();
    let o = mcbdqm(&["--config", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let o = mcbdqm(&["--config", "/nonexistent/run.toml"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn converge_mode() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mcbdqm(&[
        "--mode", "converge", "--grids", "4,8", "--dt", "1e-3", "--t-end", "0.05", "--out", out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("intervals,l2_u,rate_l2_u,linf_u,rate_linf_u,"));
}

#[test]
fn table_check_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mcbdqm(&[
        "--mode",
        "table-check",
        "--table",
        "6",
        "--nx",
        "10",
        "--dt",
        "1e-3",
        "--out",
        out,
    ]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    let lines: Vec<_> = stdout.lines().filter(|l| l.contains("table 6")).collect();
    assert_eq!(lines.len(), 16, "{stdout}");
    let failed = lines.iter().any(|l| l.starts_with("FAIL"));
    assert_eq!(o.status.code(), Some(if failed { 5 } else { 0 }));
    assert!(dir.path().join("table6_check.json").exists());
}
