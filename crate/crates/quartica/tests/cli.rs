use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quartica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartica")).args(args).output().expect("binary runs")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("quartica-cli-{}-{name}", std::process::id()))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn passing_scenarios_exit_zero() {
    for name in ["fermat_lines.qsc", "kk_lines.qsc", "sextactic.qsc", "conics.qsc"] {
        let o = quartica(&["run", &scenario(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}:\n{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn negative_control_exits_one_with_location() {
    let o = quartica(&["run", &scenario("negative_control.qsc")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("6:1"), "{text}");
}

#[test]
fn json_report_schema() {
    let out = temp_path("report.json");
    let o = quartica(&["run", &scenario("negative_control.qsc"), "--report", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    let checks = v["checks"].as_array().expect("checks array");
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["status"], "fail");
    assert_eq!(checks[0]["computed"], "4");
    assert_eq!(checks[0]["expected"], "5");
}

#[test]
fn inconclusive_scenario_exits_two() {
    let path = temp_path("inconclusive.qsc");
    std::fs::write(&path, "field K = Q(i: -1)\nassert len(factors(x^2 - 2*y^2)) == 2\nassert 1 + 1 == 2\n").unwrap();
    let o = quartica(&["run", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("INCONCLUSIVE"));
}

#[test]
fn syntax_errors_report_position() {
    let path = temp_path("broken.qsc");
    std::fs::write(&path, "let a = 1\nassert b == 1\n").unwrap();
    let o = quartica(&["run", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":2:8"), "{err}");
}

fn reproduce_json(extra: &[&str]) -> Value {
    let mut args = vec!["reproduce", "--section", "2"];
    args.extend_from_slice(extra);
    let o = quartica(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut v: Value = serde_json::from_str(&stdout(&o)).expect("json on stdout");
    for c in v["checks"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn reproduce_section_is_deterministic() {
    let a = reproduce_json(&[]);
    let b = reproduce_json(&["--jobs", "1"]);
    assert_eq!(a, b);
    let ids: Vec<&str> = a["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids[0], "atlas.verify");
    assert!(ids[1..].iter().all(|id| id.starts_with("fermat.")));
    for c in a["checks"].as_array().unwrap() {
        for key in ["id", "description", "paper_ref", "status", "computed", "expected", "elapsed_ms"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
        assert_eq!(c["status"], "pass");
    }
    let t = &a["checks"].as_array().unwrap().iter().find(|c| c["id"] == "fermat.mtl.tvector").unwrap()["computed"]["t"];
    assert_eq!(t, &serde_json::json!([48, 0, 3]));
}

#[test]
fn reproduce_rejects_unknown_section() {
    let o = quartica(&["reproduce", "--section", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_in_a_field() {
    let o = quartica(&["eval", "(1 + i)^2", "--field", "Q(i: -1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*i");
    let o = quartica(&["eval", "r2^2 - 2", "--field", "Q(r2: 2)"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = quartica(&["eval", "1/0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn plot_writes_svg() {
    let out = temp_path("fig.svg");
    let o = quartica(&["plot", "--ids", "kk.fermat_lines", "--chart", "z=1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(stdout(&o).contains("6 real lines"), "{}", stdout(&o));
}

#[test]
fn plot_without_real_points_fails() {
    let out = temp_path("empty.svg");
    let o = quartica(&["plot", "--ids", "fermat.quartic", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn atlas_listing() {
    let o = quartica(&["atlas"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 26);
    let o = quartica(&["atlas", "no.such.entry"]);
    assert_eq!(o.status.code(), Some(1));
}
