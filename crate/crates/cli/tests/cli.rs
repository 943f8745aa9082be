use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnn"))
        .args(args)
        .env_remove("HNN_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hnn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_matches_library() {
    for word in ["TkT", "kaK", "tkTaK", ""] {
        let out = hnn(&["solve", word]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let nf = hnn_core::normal_form(&hnn_core::Word::parse(word).unwrap());
        assert_eq!(v["theta_part"], nf.theta_part.to_string());
        assert_eq!(v["ak_part"], nf.ak_part.to_string());
        assert_eq!(v["is_identity"], nf.is_identity());
        assert_eq!(v["schema_version"], 1);
    }
    let v = json(&hnn(&["solve", "[k^2,t^2U^2]"]));
    assert_eq!(v["is_identity"], true);
}

#[test]
fn trapezium_then_analyze() {
    let path = scratch("t3.json");
    let p = path.to_str().unwrap();
    let out = hnn(&["trapezium", "--n", "3", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["area"], 36);
    let out = hnn(&["analyze", p]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["area"], 36);
    assert_eq!(v["reduced"], true);
    assert_eq!(v["annuli"].as_array().unwrap().len(), 0);
    assert_eq!(v["census"]["perimeter"], 18);

    let out = hnn(&["render", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph"));
    let svg = scratch("t3.svg");
    let out = hnn(&["render", p, "--svg", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn fill_round_trips() {
    let path = scratch("f.json");
    let p = path.to_str().unwrap();
    let out = hnn(&["fill", "--word", "[k^2, t^2 U^2]", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["area"], 12);
    assert_eq!(v["census"]["bound_checks"].as_array().unwrap().len(), 5);
    assert_eq!(hnn(&["analyze", p]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let out = hnn(&["fill", "--word", "tU"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "not_null_homotopic");
    assert_eq!(hnn(&["trapezium", "--n", "0"]).status.code(), Some(1));
    assert_eq!(hnn(&["solve", "kx"]).status.code(), Some(2));
    assert_eq!(hnn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hnn(&["solve", "k", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        hnn(&["analyze", "/nonexistent/d.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hnn(&["solve", "k", "--format", "csv"]).status.code(),
        Some(2)
    );
    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\"vertices\": [0], \"half_edges\": [], \"cells\": [], \"outer_face\": 3, \"basepoint\": 0}").unwrap();
    assert_eq!(
        hnn(&["analyze", broken.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hnn"))
        .args(["curve", "--max-n", "2"])
        .env("HNN_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(hnn_core::experiments::CURVE_COLUMNS));
    assert!(lines.next().unwrap().starts_with("1,6,2,2,"));
}

#[test]
fn curve_json_and_csv_file() {
    let path = scratch("curve.csv");
    let out = hnn(&["curve", "--max-n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert_eq!(v["points"][4]["trapezium_area"], 150);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);
}

#[test]
fn deterministic_outputs() {
    let a = hnn(&[
        "partition-search",
        "--n",
        "6",
        "--pieces",
        "2",
        "--trials",
        "200",
        "--seed",
        "9",
    ]);
    let b = hnn(&[
        "partition-search",
        "--n",
        "6",
        "--pieces",
        "2",
        "--trials",
        "200",
        "--seed",
        "9",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["constraint_ok_hits"], 0);

    let a = hnn(&["geodesic", "--max-m", "4", "--cap", "8"]);
    let b = hnn(&["geodesic", "--max-m", "4", "--cap", "8"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rows"][1]["distance"]["value"], 3);

    let v = json(&hnn(&["dist", "kak", "--cap", "6"]));
    assert_eq!(
        (v["distance"].clone(), v["exact"].clone()),
        (Value::from(3), Value::from(true))
    );
}
