use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Self { dir: tempfile::tempdir().unwrap() };
        ws.file("ball.json", r#"{"dim": 3, "kind": "ball", "radius": 1.0}"#);
        ws.file("ball2.json", r#"{"dim": 2, "kind": "ball", "radius": 1.0}"#);
        ws.file(
            "cube.json",
            r#"{"dim": 3, "kind": "polytope", "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#,
        );
        ws.file("reuleaux.json", r#"{"dim": 2, "kind": "reuleaux", "n": 3, "width": 1.0}"#);
        ws.file("one.json", r#"{"kind": "constant", "value": 1.0}"#);
        ws.file("f.json", r#"{"kind": "legendre", "dim": 3, "coeffs": {"0": 1.0, "2": 1.0}}"#);
        ws.file("probe.json", r#"{"kind": "probe", "k": 4}"#);
        ws.file("atoms.json", r#"{"kind": "discrete", "dim": 3, "atoms": [{"u": [1,0,0], "v": [0,0,1], "c": 2.0}]}"#);
        ws
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") && !a.starts_with('/') { self.path(a).display().to_string() } else { a.to_string() })
            .collect();
        Command::new(env!("CARGO_BIN_EXE_paircrofton")).args(&args).output().unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let out = self.run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    }
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn body_info_reports_globals() {
    let ws = Workspace::new();
    let ball = ws.json(&["body-info", "--body", "ball.json"]);
    assert!((f(&ball["W"]) - 2.0).abs() < 1e-12);
    assert!((f(&ball["S"]) - 4.0 * PI).abs() < 1e-12);
    let cube = ws.json(&["body-info", "--body", "cube.json"]);
    assert!((f(&cube["W"]) - 1.5).abs() < 1e-10);
    assert!((f(&cube["S"]) - 6.0).abs() < 1e-12);
    let r = ws.json(&["body-info", "--body", "reuleaux.json"]);
    assert!((f(&r["width_min"]) - 1.0).abs() < 1e-12 && (f(&r["width_max"]) - 1.0).abs() < 1e-12);
}

#[test]
fn pair_all_agrees_on_the_ball_calibration() {
    let ws = Workspace::new();
    let out = ws.json(&["pair", "--body", "ball.json", "--measure", "one.json", "--method", "all", "--samples", "20000", "--seed", "5"]);
    let results = out["results"].as_array().unwrap();
    let methods: Vec<&str> = results.iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["spectral", "direct", "montecarlo"]);
    for r in results {
        assert!((f(&r["value"]) - 64.0 * PI * PI).abs() < 1e-8 * 64.0 * PI * PI);
    }
    assert_eq!(out["discrepancies"].as_array().unwrap().len(), 3);
}

#[test]
fn probe_measure_vanishes_on_balls() {
    let ws = Workspace::new();
    let out = ws.json(&["pair", "--body", "ball.json", "--measure", "probe.json"]);
    for r in out["results"].as_array().unwrap() {
        assert!(f(&r["value"]).abs() < 1e-9);
    }
    assert_eq!(out["skipped"][0]["method"], "montecarlo");
}

#[test]
fn discrete_atoms_are_exact() {
    let ws = Workspace::new();
    let out = ws.json(&["pair", "--body", "ball.json", "--body2", "cube.json", "--measure", "atoms.json"]);
    let r = &out["results"][0];
    assert_eq!(r["method"], "discrete");
    assert!(r.get("stderr").is_none());
    // 2 · w_ball(e1) · w_cube(e3)
    assert!((f(&r["value"]) - 4.0).abs() < 1e-14);
}

#[test]
fn beta_of_the_constant_density() {
    let ws = Workspace::new();
    let out = ws.json(&["beta", "--measure", "one.json", "--dim", "3", "--modes", "6"]);
    let values: Vec<f64> = out["values"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(values.len(), 7);
    assert!((values[0] - 4.0 * PI).abs() < 1e-13);
    assert!(values[1..].iter().all(|v| v.abs() < 1e-13));
    let csv = ws.run(&["beta", "--measure", "one.json", "--dim", "3", "--modes", "6", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.starts_with("m,beta\n0,1.2566370614359172e1\n"));
}

#[test]
fn classify_rejects_the_cube_at_mode_four() {
    let ws = Workspace::new();
    let out = ws.json(&["classify", "--body", "cube.json"]);
    assert_eq!(out["constant_width"], false);
    assert_eq!(out["width"]["first_failing_mode"], 4);
    let ball = ws.json(&["classify", "--body", "ball.json"]);
    assert_eq!(ball["constant_width"], true);
    assert_eq!(ball["constant_brightness"], true);
}

#[test]
fn theorem_residuals() {
    let ws = Workspace::new();
    let out = ws.json(&["theorem", "--theorem", "T1.3", "--body", "ball.json", "--body2", "cube.json", "--measure", "f.json"]);
    assert!(f(&out["residuals"][0]["relative"]) <= 1e-6);
    let all = ws.json(&[
        "theorem", "--theorem", "T1.2", "--body", "ball.json", "--measure", "one.json", "--method", "all", "--samples", "1000",
        "--seed", "1",
    ]);
    for r in all["residuals"].as_array().unwrap() {
        assert!(f(&r["relative"]) <= 1e-8, "{r}");
    }
}

#[test]
fn spectrum_tables() {
    let ws = Workspace::new();
    let out = ws.run(&["spectrum", "--body", "cube.json", "--modes", "8", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("m,energy"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn crofton_matches_globals() {
    let ws = Workspace::new();
    let out = ws.json(&["crofton", "--body", "cube.json"]);
    assert!((f(&out["hyperplanes"]) - 1.5).abs() < 1e-8);
    assert!((f(&out["lines"]) - f(&out["lines_predicted"])).abs() < 1e-8 * f(&out["lines"]));
}

#[test]
fn output_is_deterministic_and_reparses() {
    let ws = Workspace::new();
    let args = [
        "pair", "--body", "cube.json", "--body2", "ball.json", "--measure", "f.json", "--method", "montecarlo", "--samples",
        "5000", "--seed", "42", "--workers", "3", "--elements", "lines",
    ];
    let a = ws.run(&args);
    let b = ws.run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"][0]["n"], 5000);
    assert!(f(&v["results"][0]["stderr"]) > 0.0);
    // every float carries 17 significant digits
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains(&format!("\"value\": {:.16e}", f(&v["results"][0]["value"]))));
}

#[test]
fn writes_to_a_file() {
    let ws = Workspace::new();
    let target = ws.path("out.json");
    let out = ws.run(&["crofton", "--body", "ball.json", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&target)).unwrap()).unwrap();
    assert!((f(&v["hyperplanes"]) - 2.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    ws.file("bad.json", r#"{"dim": 3, "kind": "ball", "radius": -1.0}"#);
    ws.file("garbled.json", "{ not json");
    ws.file("huge.json", r#"{"dim": 3, "kind": "ball", "radius": 1e200}"#);
    ws.file("big.json", r#"{"kind": "constant", "value": 1e100}"#);
    assert_eq!(code(&ws.run(&["body-info", "--body", "bad.json"])), 2);
    assert_eq!(code(&ws.run(&["body-info", "--body", "garbled.json"])), 2);
    assert_eq!(code(&ws.run(&["body-info"])), 2);
    assert_eq!(code(&ws.run(&["pair", "--body", "ball.json", "--measure", "one.json", "--method", "montecarlo"])), 2);
    assert_eq!(code(&ws.run(&["body-info", "--body", "ball.json", "--dim", "2"])), 3);
    assert_eq!(code(&ws.run(&["pair", "--body", "ball.json", "--body2", "ball2.json", "--measure", "one.json"])), 3);
    assert_eq!(code(&ws.run(&["pair", "--body", "ball.json", "--measure", "atoms.json", "--method", "spectral"])), 4);
    assert_eq!(code(&ws.run(&["theorem", "--theorem", "T1.3", "--body", "ball.json", "--measure", "atoms.json"])), 4);
    assert_eq!(code(&ws.run(&["body-info", "--body", "ball.json", "--format", "csv"])), 4);
    assert_eq!(code(&ws.run(&["pair", "--body", "huge.json", "--measure", "big.json", "--method", "direct"])), 5);
}
