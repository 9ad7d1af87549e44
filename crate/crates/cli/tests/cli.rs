use std::fs;
use std::process::{Command, Output};

fn fpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpa")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn no_arguments_prints_usage() {
    let o = fpa(&[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(fpa(&["run", "--benchmark", "sphere", "--colour", "red"]).status.code(), Some(2));
}

#[test]
fn invalid_values_are_validation_errors() {
    assert_eq!(fpa(&["run", "--benchmark", "sphere", "--p", "1.5"]).status.code(), Some(3));
    assert_eq!(fpa(&["run", "--benchmark", "nosuch"]).status.code(), Some(3));
    assert_eq!(fpa(&["run", "--benchmark", "easom", "--dim", "3"]).status.code(), Some(3));
    assert_eq!(fpa(&["run", "--benchmark", "sphere", "--algorithm", "sa"]).status.code(), Some(3));
    assert_eq!(fpa(&["run", "--benchmark", "sphere", "--runs", "0"]).status.code(), Some(3));
    assert_eq!(fpa(&["run", "--benchmark", "sphere", "--tol", "0"]).status.code(), Some(3));
    assert_eq!(fpa(&["run"]).status.code(), Some(3));
}

#[test]
fn unwritable_output_is_runtime_error() {
    let o = fpa(&["run", "--benchmark", "sphere", "--dim", "2", "--runs", "1", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn list_benchmarks_shows_all_ten() {
    let o = fpa(&["list-benchmarks"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("name=sphere dim=256"));
}

#[test]
fn run_reports_summary() {
    let o = fpa(&["run", "--benchmark", "ackley", "--dim", "2", "--algorithm", "fpa", "--runs", "5", "--seed", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("(100%)"), "{}", stdout(&o));
}

#[test]
fn config_file_sits_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.txt");
    let out = dir.path().join("s.csv");
    fs::write(&cfg, format!("benchmark=sphere\ndim=2\nruns=3\nalgorithm=ga\nout={}\n", out.display())).unwrap();
    let o = fpa(&["run", "--config-file", cfg.to_str().unwrap(), "--algorithm", "fpa"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("sphere,2,fpa,"), "{csv}");
    let meta = fs::read_to_string(out.with_extension("meta")).unwrap();
    assert!(meta.contains("runs=3"));

    fs::write(&cfg, "runs=3\nwidth=2\n").unwrap();
    assert_eq!(fpa(&["run", "--config-file", cfg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn table1_writes_thirty_rows_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = fpa(&["table1", "--runs", "2", "--seed", "9", "--max-iters", "20", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(dir.path().join("a.meta").exists());
}

#[test]
fn vessel_prints_best_and_writes_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = fpa(&["vessel", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let f: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("fpa: best f = "))
        .and_then(|v| v.trim().parse().ok())
        .expect("best value line");
    assert!(f <= 6060.5, "{text}");
    assert!(text.contains("feasible = true"), "{text}");
    assert!(text.contains("d1 = 0.8125") && text.contains("d2 = 0.4375"), "{text}");
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next(), Some("algorithm,iteration,mean_abs_error"));
    assert_eq!(csv.lines().count(), 1 + 2001);
}

#[test]
fn curve_needs_output() {
    assert_eq!(fpa(&["curve", "--benchmark", "sphere", "--dim", "2", "--runs", "2"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = fpa(&["curve", "--benchmark", "sphere", "--dim", "2", "--runs", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    for alg in ["ga", "pso", "fpa"] {
        assert!(csv.lines().any(|l| l.starts_with(&format!("{alg},0,"))), "{csv}");
    }
}
