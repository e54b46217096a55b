use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cyclocat::arith::Field;
use cyclocat::gradedmod::{
    example_v, is_isomorphic, map_to_json, module_from_json, module_to_json, submodule, v_k, HomogeneousVector,
};
use cyclocat::hopf::HnStructure;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclocat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn fixtures() -> (TempDir, PathBuf, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let s = HnStructure::rational(6).unwrap();
    let v = example_v(&s).unwrap();
    let v2 = write(dir.path(), "v2.json", &module_to_json(&v_k(&s, 1, 0).unwrap()));
    let vfile = write(dir.path(), "v.json", &module_to_json(&v));
    let sub = submodule(&v, &[HomogeneousVector::new(1, vec![s.field().one()])]).unwrap();
    let map = write(dir.path(), "inclusion.json", &map_to_json(&sub.inclusion));
    (dir, v2, vfile, map)
}

#[test]
fn examples_for_six() {
    let out = run(&["--n", "6", "examples"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("MEMBER  V_2{-1} V_2{0}"), "{text}");
    assert!(text.contains("1 + v + v^2 + v^3 + v^4 + v^5"), "{text}");
}

#[test]
fn examples_for_incompatible_n() {
    let out = run(&["--n", "4", "examples"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not divisible by 6"));
}

#[test]
fn all_checks_small_n() {
    let out = run(&["--n", "2", "all-checks"]);
    assert!(out.status.success(), "{}{}", stdout(&out), stderr(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn unusable_prime_field_is_reported() {
    let out = run(&["--n", "6", "--field", "fp:5", "verify-hopf"]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.contains("fp:5") && err.contains('6'), "{err}");
    assert!(run(&["--n", "6", "--field", "fp:7", "verify-hopf"]).status.success());
}

#[test]
fn missing_n_is_an_error() {
    let out = run(&["k0-ideal"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--n is required"));
}

#[test]
fn json_output_is_deterministic() {
    let (_dir, _, v, _) = fixtures();
    let v = v.to_str().unwrap();
    let args = ["--n", "6", "--seed", "3", "--json", "ideal-test", v];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, run(&args).stdout);
    let value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(value.is_object());
}

#[test]
fn ideal_test_reports_members_and_obstructions() {
    let (dir, v2, v, _) = fixtures();
    let out = run(&["--n", "6", "ideal-test", "--k", "2", v.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("MEMBER"), "{}", stdout(&out));
    let out = run(&["--n", "6", "ideal-test", "--k", "1", v2.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("NOT-MEMBER"), "{}", stdout(&out));
    let k = write(dir.path(), "k.json", r#"{"n": 6, "degrees": {"0": 1}, "actions": {}}"#);
    let out = run(&["--n", "6", "ideal-test", k.to_str().unwrap()]);
    assert!(stdout(&out).contains("divisibility"), "{}", stdout(&out));
}

#[test]
fn shift_stable_hom_and_k0() {
    let (dir, v2, v, _) = fixtures();
    let out_path = dir.path().join("shifted.json");
    let out = run(&["--n", "6", "--out", out_path.to_str().unwrap(), "shift", "--times", "-1", v2.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let shifted = fs::read_to_string(&out_path).unwrap();
    let s = HnStructure::rational(6).unwrap();
    assert_eq!(module_from_json(&s, &shifted).unwrap().total_dim(), 3);

    let out = run(&["--n", "6", "stable-hom", v2.to_str().unwrap(), v2.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "degree 0: total 1, null-homotopic 0, stable 1");

    let out = run(&["--n", "6", "k0", "--ring", "stmod", v.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "1 + v + v^2 + v^3 + v^4 + v^5");
    let out = run(&["--n", "6", "k0", "--ring", "on", v.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = run(&["--n", "6", "k0-ideal"]);
    assert!(stdout(&out).contains("equal: true"));
}

#[test]
fn cone_of_an_inclusion() {
    let (_dir, _, _, map) = fixtures();
    let out = run(&["--n", "6", "--json", "cone", "--strip", map.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let s = HnStructure::rational(6).unwrap();
    let c = module_from_json(&s, &stdout(&out)).unwrap();
    assert!(is_isomorphic(&c, &v_k(&s, 1, 0).unwrap()).unwrap().is_isomorphic());
}

#[test]
fn malformed_modules_name_the_invariant() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n": 6, "degrees": {"0": 1, "3": 1, "6": 1}, "actions": {"d1": [{"from_degree": 0, "matrix": [["1"]]}, {"from_degree": 3, "matrix": [["1"]]}]}}"#,
    );
    let out = run(&["--n", "6", "k0", "--ring", "on", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("d1^p is nonzero"), "{}", stderr(&out));
    let garbage = write(dir.path(), "garbage.json", "{");
    assert!(!run(&["--n", "6", "shift", garbage.to_str().unwrap()]).status.success());
}

#[test]
fn cyclotomic_range() {
    let out = run(&["--n", "2", "cyclotomic", "--to", "60"]);
    assert!(out.status.success(), "{}", stderr(&out));
}
