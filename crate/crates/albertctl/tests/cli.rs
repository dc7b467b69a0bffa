use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use albertctl::config::{parse_config, AlgebraSpec, SuiteName};
use albertctl::{CtlError, SuiteReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_albertctl"))
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn reports(out: &Output) -> Vec<SuiteReport> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn schema_instance_parses() {
    let cfg = parse_config(
        r#"{"field":{"kind":"prime","p":7},"algebra":{"kind":"tits1","D":{"kind":"matrix3"},"mu":"1"},"suites":[{"name":"jordan","samples":1000}],"seed":42}"#,
    )
    .unwrap();
    assert_eq!(cfg.seed, 42);
    assert_eq!(cfg.suites[0].name, SuiteName::Jordan);
    assert!(matches!(cfg.algebra, Some(AlgebraSpec::Tits1 { .. })));
}

#[test]
fn characteristic_three_is_rejected() {
    let err = parse_config(
        r#"{"field":{"kind":"prime","p":3},"algebra":{"kind":"tits1","D":{"kind":"matrix3"},"mu":"1"},"seed":1}"#,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        CtlError::Field(albert_core::field::FieldError::UnsupportedCharacteristic(3))
    ));
}

#[test]
fn zero_gamma_is_degenerate() {
    let err = parse_config(
        r#"{"field":{"kind":"rationals"},"algebra":{"kind":"h3","C":{"kind":"zorn"},"gamma":["1","1","0"]},"seed":1}"#,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        CtlError::Algebra(albert_core::error::AlgebraError::DegenerateParameter(_))
    ));
}

fn pointer_of(text: &str) -> String {
    match parse_config(text).unwrap_err() {
        CtlError::Schema { pointer, .. } => pointer,
        other => panic!("expected a schema error, got {other}"),
    }
}

#[test]
fn schema_errors_carry_json_pointers() {
    assert_eq!(pointer_of(r#"{"field":{"kind":"rationals"},"fixture":"split-q","seed":1,"bogus":2}"#), "/bogus");
    assert_eq!(
        pointer_of(
            r#"{"field":{"kind":"rationals"},"algebra":{"kind":"tits1","D":{"kind":"matrix3","extra":0},"mu":"1"},"seed":1}"#
        ),
        "/algebra/D/extra"
    );
    assert_eq!(
        pointer_of(r#"{"field":{"kind":"prime","p":"7"},"algebra":{"kind":"plus-of-matrix3"},"seed":1}"#),
        "/field/p"
    );
    assert_eq!(
        pointer_of(
            r#"{"field":{"kind":"rationals"},"algebra":{"kind":"plus-of-matrix3"},"suites":[{"name":"jordan","samples":-1}],"seed":1}"#
        ),
        "/suites/0/samples"
    );
    assert_eq!(
        pointer_of(
            r#"{"field":{"kind":"rationals"},"algebra":{"kind":"h3","C":{"kind":"cayley-dickson","params":["-1"]},"gamma":["1","1","1"]},"seed":1}"#
        ),
        "/algebra/C/params"
    );
    // seed is mandatory: no wall-clock seeding
    assert_eq!(pointer_of(r#"{"fixture":"split-q"}"#), "");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_config(
        dir.path(),
        "good.json",
        r#"{"fixture":"split-f7","suites":[{"name":"jordan","samples":50},{"name":"norm","samples":20}],"seed":42}"#,
    );
    let out = run(&["check", "--config", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    assert_eq!(rs.len(), 2);
    assert!(rs.iter().all(|r| r.passed && r.failures.is_empty()));

    let bad = write_config(dir.path(), "bad.json", r#"{"field":{"kind":"prime","p":3},"seed":1}"#);
    let out = run(&["check", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported characteristic 3"));

    let corrupted = fixture_dir().join("corrupted.json");
    let out = run(&["check", "--config", corrupted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rs = reports(&out);
    assert!(!rs[0].passed);
    assert_eq!(rs[0].failures[0].values["x"].len(), 27);

    assert_eq!(run(&["check", "--config", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fixture", "nope", "norm(unit)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn out_file_is_appended() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"fixture":"split-f7","suites":[{"name":"jordan","samples":10}],"seed":1,"output":"r.jsonl"}"#,
    );
    for _ in 0..2 {
        assert!(run(&["check", "--config", cfg.to_str().unwrap()]).status.success());
    }
    let text = std::fs::read_to_string(dir.path().join("r.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 2);
    let explicit = dir.path().join("x.jsonl");
    let out = run(&["check", "--config", cfg.to_str().unwrap(), "--out", explicit.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(explicit).unwrap().lines().count(), 1);
}

#[test]
fn seed_override_changes_the_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"fixture":"split-f7","suites":[{"name":"jordan","samples":5}],"seed":1}"#);
    let a = reports(&run(&["check", "--config", cfg.to_str().unwrap()]));
    let b = reports(&run(&["check", "--config", cfg.to_str().unwrap(), "--seed", "2"]));
    assert_ne!(a[0].config_fingerprint, b[0].config_fingerprint);
    assert_ne!(a[0].seed, b[0].seed);
}

fn eval(fixture: &str, expr: &str) -> String {
    let out = run(&["eval", "--fixture", fixture, expr]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn eval_examples() {
    for f in ["split-f7", "split-q", "h3-zorn", "cyclic7-q"] {
        assert_eq!(eval(f, "norm(unit)"), "1");
    }
    let two_d = r#"["2","0","0","0","2","0","0","0","2"]"#;
    assert_eq!(eval("split-q", "tilde(unit)"), two_d);
    assert_eq!(eval("split-q", "cross(unit, unit)"), two_d);
    assert_eq!(eval("split-q", "tilde([1,0,0,0,1,0,0,0,1])"), two_d);
    assert_eq!(eval("split-q", "tilde(e0)"), r#"["0","0","0","0","1","0","0","0","1"]"#);
    assert_eq!(eval("split-q", "trace-coeff(unit)"), r#"{"n":"1","s":"3","t":"3"}"#);
    let unit = eval("split-q", "product(unit, unit)");
    assert_eq!(eval("split-q", "inverse(unit)"), unit);
    assert_eq!(eval("split-q", "u-op(unit; e5)"), eval("split-q", "product(unit, e5)"));
    assert_eq!(eval("split-q", "isotope-product(unit; e3, e1)"), eval("split-q", "product(e3, e1)"));
    assert_eq!(eval("split-q", "norm(adjoint(e0))"), "0");
    assert_eq!(eval("h3-zorn", "cross(unit, unit)"), eval("h3-zorn", "product(unit, [2,2,2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0])"));
    let l = "[\"(s+1)/(s^2)\",0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]";
    assert_eq!(eval("division-qs", &format!("norm({l})")), "(s^3+3*s^2+3*s+1)/(s^6)");
}

#[test]
fn eval_errors_name_the_subterm() {
    let out = run(&["eval", "--fixture", "split-q", "tilde(product(unit, unit))"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("\"product(unit, unit)\""), "{err}");
    let out = run(&["eval", "--fixture", "split-q", "norm([1, 2])"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"[1, 2]\""));
    let out = run(&["eval", "--fixture", "split-q", "u-op(unit, e1)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("(p; x)"));
    let out = run(&["eval", "--fixture", "split-q", "inverse(e0)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invertible"));
}

#[test]
fn build_roundtrips_through_a_table_config() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("h3.table.json");
    let out = run(&["build", "--fixture", "h3-zorn", "--out", table.to_str().unwrap()]);
    assert!(out.status.success());
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"algebra":{"kind":"table","path":"h3.table.json"},"suites":[{"name":"jordan","samples":20},{"name":"isotope","samples":3}],"seed":5}"#,
    );
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let a = run(&["eval", "--config", cfg.to_str().unwrap(), "norm([1,2,3,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0])"]);
    assert_eq!(String::from_utf8(a.stdout).unwrap().trim(), "6");
}

#[test]
fn probe_division_reports_witnesses() {
    let out = run(&["probe-division", "--fixture", "split-q", "--trials", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counterexample"][0], "1");
    let out = run(&["probe-division", "--fixture", "division-qs", "--trials", "3", "--seed", "9"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["counterexample"].is_null());
    assert_eq!(v["cubic_fields"], 3);
}

#[test]
fn thread_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"algebra":{"kind":"table","path":"CORRUPT"},"suites":[{"name":"jordan","samples":40},{"name":"norm","samples":10}],"seed":3}"#
            .replace("CORRUPT", fixture_dir().join("split-f7-corrupted.table.json").to_str().unwrap())
            .as_str(),
    );
    let strip = |out: Output| {
        reports(&out)
            .into_iter()
            .map(|mut r| {
                r.wall_time_ms = 0;
                r
            })
            .collect::<Vec<_>>()
    };
    let one = strip(bin().env("ALBERTCTL_THREADS", "1").args(["check", "--config", cfg.to_str().unwrap()]).output().unwrap());
    let three = strip(bin().env("ALBERTCTL_THREADS", "3").args(["check", "--config", cfg.to_str().unwrap()]).output().unwrap());
    assert!(!one[0].passed);
    assert_eq!(one, three);
    let bad = bin().env("ALBERTCTL_THREADS", "zero").args(["check", "--config", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
