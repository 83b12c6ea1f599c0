use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quinpi_cli::error::{EXIT_CONFIG, EXIT_SOLVER};

fn quinpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quinpi")).args(args).output().expect("binary runs")
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn run_writes_solution_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = quinpi(&["run", "--problem", "burgers", "--ic", "double-step", "--n", "40", "--nu", "5", "--tfinal", "0.5", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let sol = read(&dir.path().join("solution.csv"));
    let mut lines = sol.lines();
    assert_eq!(lines.next(), Some("x,u"));
    assert_eq!(lines.clone().count(), 40);
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    // 17 significant digits: d.dddddddddddddddde..
    assert_eq!(first[0].trim_start_matches('-').split('e').next().unwrap().len(), 18);
    // cell centers of [-1, 1] with h = 0.05
    assert!((first[0].parse::<f64>().unwrap() + 0.975).abs() < 1e-15);

    let diag = read(&dir.path().join("diag.csv"));
    let mut lines = diag.lines();
    assert_eq!(lines.next(), Some("t,mass_dev,tv,newton_total,step_seconds"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0], 0.5);
    assert!(rows.iter().all(|r| r[1].abs() < 1e-12 && r[3] >= 6.0));
}

#[test]
fn runs_are_deterministic() {
    let solution = |dir: &Path| {
        let o = quinpi(&["run", "--problem", "advection", "--ic", "sine-jump", "--n", "60", "--tfinal", "0.4", "--out", dir.to_str().unwrap()]);
        assert!(o.status.success());
        read(&dir.join("solution.csv"))
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(solution(a.path()), solution(b.path()));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("res");
    fs::write(&cfg, format!("problem = \"burgers\"\nic = \"sine-smooth\"\nn = 32\nnu = 2.0\ntfinal = 0.25\nout = {:?}\n", out)).unwrap();

    let o = quinpi(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&out.join("solution.csv")).lines().count(), 33);
    // nu = 2 on h = 1/16 gives two steps
    assert_eq!(read(&out.join("diag.csv")).lines().count(), 3);

    let o = quinpi(&["run", "--config", cfg.to_str().unwrap(), "--n", "48", "--nu", "8"]);
    assert!(o.status.success());
    assert_eq!(read(&out.join("solution.csv")).lines().count(), 49);
    // dt = 1/3 exceeds tfinal, so a single clipped step
    assert_eq!(read(&out.join("diag.csv")).lines().count(), 2);
}

#[test]
fn config_errors_have_their_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = |args: &[&str]| quinpi(args).status.code();

    assert_eq!(code(&["run", "--n", "3", "--out", out]), Some(EXIT_CONFIG));
    assert_eq!(code(&["run", "--scheme", "RK4", "--out", out]), Some(EXIT_CONFIG));
    assert_eq!(code(&["run", "--eps-t-exp", "4", "--out", out]), Some(EXIT_CONFIG));
    assert_eq!(code(&["run", "--config", "/nonexistent/x.toml"]), Some(EXIT_CONFIG));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "colour = \"blue\"\n").unwrap();
    assert_eq!(code(&["run", "--config", bad.to_str().unwrap()]), Some(EXIT_CONFIG));

    // no exact solution for Buckley-Leverett
    assert_eq!(code(&["converge", "--problem", "buckley", "--ns", "32,64", "--out", out]), Some(EXIT_CONFIG));
    assert_eq!(code(&["newton-log", "--scheme", "SSPRK3", "--cfl", "0.4", "--out", out]), Some(EXIT_CONFIG));
}

#[test]
fn solver_failures_have_their_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    // SSPRK3 far above its stability limit
    let o = quinpi(&["run", "--scheme", "SSPRK3", "--n", "40", "--nu", "5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_SOLVER));
}

#[test]
fn converge_and_newton_log_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = quinpi(&["converge", "--problem", "burgers", "--ic", "sine-smooth", "--nu", "1", "--tfinal", "1", "--ns", "32,64,128", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = read(&dir.path().join("table.csv"));
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("N,L1,rate,Linf,rate"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], "");
    assert!(rows[2][2].parse::<f64>().unwrap() > 2.0);

    let o = quinpi(&["newton-log", "--problem", "advection", "--ic", "sine-jump", "--n", "50", "--tfinal", "0.5", "--out", out]);
    assert!(o.status.success());
    let log = read(&dir.path().join("newton.csv"));
    let mut lines = log.lines();
    assert_eq!(lines.next(), Some("step,total_iterations"));
    assert_eq!(lines.next(), Some("1,6"));
}

#[test]
fn timing_table_has_a_row_per_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = quinpi(&["timing", "--ns", "50,100", "--steps", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = read(&dir.path().join("table.csv"));
    assert_eq!(table.lines().next(), Some("N,explicit,implicit,ratio"));
    assert_eq!(table.lines().count(), 3);
}
