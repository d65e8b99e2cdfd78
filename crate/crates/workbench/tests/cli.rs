//! The `gis` binary end to end: output, exit codes and JSON.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn gis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gis")).args(args).env_remove("GIS_MAX_ORDER").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_rz2() {
    let o = gis(&["classify", &fixture("rz2.sgp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("band: right normal, right regular; right generalized inverse"));
}

#[test]
fn gamma_quotient_of_i2_is_a_copy() {
    let o = gis(&["--json", "quotient", "--rel", "gamma", &fixture("i2.sgp")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient"]["order"], 7);
    assert_eq!(v["projection"], serde_json::json!([0, 1, 2, 3, 4, 5, 6]));
}

#[test]
fn lambda_needs_generalized_inverse() {
    // the 2-element null semigroup is not regular
    let dir = std::env::temp_dir().join(format!("gis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("null2.sgp");
    std::fs::write(&path, "2\n0 0\n0 0\n").unwrap();
    let o = gis(&["quotient", "--rel", "lambda", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn madhavan_full_relation_on_two_points() {
    let o = gis(&["madhavan", "--size", "2", "--partition", "1 2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "3"));
    assert!(out.contains("labels: -- 11 22"));
}

#[test]
fn yamada_and_tensor_commands() {
    let o = gis(&["--json", "yamada", "build", &fixture("yamada_order5.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = gis(&["tensor", "verify", &fixture("yamada_y3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("θ is an isomorphism"));
    let o = gis(&["yamada", "decompose", &fixture("y3.sgp")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn morita_suite_passes_from_the_command_line() {
    let o = gis(&["suite", "thm5.1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn enumerate_respects_the_order_bound() {
    let o = gis(&["enumerate", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# 5 semigroups of order 2"));

    let o = Command::new(env!("CARGO_BIN_EXE_gis"))
        .args(["enumerate", "--order", "4"])
        .env("GIS_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("OrderBoundExceeded"));

    let o = Command::new(env!("CARGO_BIN_EXE_gis"))
        .args(["enumerate", "--order", "2"])
        .env("GIS_MAX_ORDER", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("BadMaxOrder"));
}

#[test]
fn errors_and_usage() {
    let o = gis(&["--json", "classify", "/nonexistent/x.sgp"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"], "Io");

    let o = gis(&["suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnknownSuite"));

    let o = gis(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
