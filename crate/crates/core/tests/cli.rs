use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lie-squeeze"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn figure_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, err) = run(&["figure", "fig1a", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,vx,vy,kz,sx,sy,product,bound"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[4] + 0.4).abs() < 1e-9);
    assert_eq!(text.lines().count(), 2002);
}

#[test]
fn sweep_to_stdout_with_flags() {
    let (code, out, _) = run(&[
        "sweep", "--state", "bloch", "--j", "2", "--mu-abs", "0.5", "--mu-arg", "1.5707963267948966",
        "--lambda", "0.1,0.25,1", "--tmax", "1", "--steps", "0",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let sx: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
    assert!(sx > 0.0);
}

#[test]
fn degenerate_bound_prints_nan() {
    // |μ| = 1 puts <Kz> at zero initially
    let (code, out, _) = run(&["sweep", "--state", "bloch", "--j", "1", "--mu-abs", "1", "--mu-arg", "0", "--steps", "0"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[4], "nan");
    assert_eq!(cols[5], "nan");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "bogus"]).0, 2);
    assert_eq!(run(&["figure", "fig9"]).0, 2);
    assert_eq!(run(&["sweep", "--model", "su11", "--state", "bloch"]).0, 2);
    assert_eq!(run(&["sweep", "--lambda", "1,2"]).0, 2);
    assert_eq!(run(&["sweep", "--tail-tol", "0.1"]).0, 2);
    assert_eq!(run(&["sweep", "--xi-abs", "1.2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn unwritable_output_exits_nonzero() {
    let (code, _, err) = run(&["figure", "fig2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot write output"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["algebra", "states", "oracle"] {
        let (code, out, _) = run(&["verify", suite]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().any(|l| l.starts_with("PASS")));
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn matrix_dump_starts_at_identity() {
    let (code, out, _) = run(&["matrix", "--model", "su2", "--tmax", "2", "--steps", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,m11,m12,m13,m21,m22,m23,m31,m32,m33");
    assert_eq!(lines.len(), 6);
    let m0: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(&m0[1..], &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
}
