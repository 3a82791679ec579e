use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ssetkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

fn verdicts(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["verdict"].as_str().unwrap().to_string()))
        .collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn circle_homology() {
    let (code, r) = run_json(&["compute", path(&data("circle.json")), "homology", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["homology"], serde_json::json!(["Z", "Z", "0"]));
    assert_eq!(r["bounds"]["max_dim"], 4);
}

#[test]
fn point_pi1_is_trivial() {
    let (code, r) = run_json(&["compute", path(&data("point.json")), "pi1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["order"], 1);
    assert_eq!(r["results"]["presentation"]["generators"], serde_json::json!([]));
}

#[test]
fn segal_map_of_a_group_is_iso() {
    let (code, r) = run_json(&["compute", path(&data("bz2.json")), "segal", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["segal"], "iso");
}

#[test]
fn horn_is_not_kan() {
    let (code, r) = run_json(&["compute", path(&data("horn.json")), "kan", "2"]);
    assert_eq!(code, 1);
    assert_eq!(verdicts(&r), vec![("kan".to_string(), "fail".to_string())]);
    assert!(r["checks"][0]["witness"].is_object());
}

#[test]
fn galois_round_trips() {
    let (code, r) = run_json(&["galois", path(&data("z2.json")), "4"]);
    assert_eq!(code, 0);
    let v = verdicts(&r);
    assert_eq!(v.iter().filter(|(n, _)| n.starts_with("round trip")).count(), 2);
    assert!(v.iter().all(|(_, x)| x == "pass"));
    assert!(v.iter().any(|(n, _)| n == "EG acyclic"));
    let (code, r) = run_json(&["galois", path(&data("trivial.json")), "4"]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&r).iter().filter(|(n, _)| n.starts_with("round trip")).count(), 1);
}

#[test]
fn galois_over_s3() {
    let (code, r) = run_json(&["galois", path(&data("s3.json")), "4"]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&r).iter().filter(|(n, x)| n.starts_with("round trip") && x == "pass").count(), 4);
}

#[test]
fn reconstruct_z2() {
    let (code, r) = run_json(&["reconstruct", path(&data("z2.json"))]);
    assert_eq!(code, 0);
    assert_eq!(verdicts(&r).len(), 4);
    let (code, _) = run_json(&["reconstruct", path(&data("trivial.json"))]);
    assert_eq!(code, 0);
}

#[test]
fn localize_interval() {
    let (code, r) = run_json(&["localize", path(&data("interval.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["hom_counts"], serde_json::json!([[1, 1], [1, 1]]));
    let (code, r) = run_json(&["localize", path(&data("wedge.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["hom_counts"][2], serde_json::json!([0, 0, 1]));
}

#[test]
fn inspect_documents() {
    let (code, r) = run_json(&["inspect", path(&data("cosets.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["transitive"], true);
    let (_, r) = run_json(&["inspect", path(&data("s3_presented.json"))]);
    assert_eq!(r["results"]["order"], 6);
    let (_, r) = run_json(&["inspect", path(&data("torus.json"))]);
    assert_eq!(r["results"]["euler_characteristic"], 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let (code, stdout) = run(&["galois", path(&data("z2.json")), "3", "--out", path(&out)]);
        assert_eq!(code, 0);
        assert!(stdout.is_empty());
        runs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let (_, stdout) = run(&["localize", path(&data("wedge.json"))]);
    assert_eq!(stdout, run(&["localize", path(&data("wedge.json"))]).1);
}

#[test]
fn text_format() {
    let (code, out) = run(&["compute", path(&data("circle.json")), "homology", "1", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("[pass] homology: H0 = Z, H1 = Z"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("faces.json", r#"{"dims": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v"}]}]}}"#),
        ("unknown.json", r#"{"dims": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v"}, {"base": "w"}]}]}}"#),
        ("degs.json", r#"{"dims": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v"}, {"base": "v"}]}], "2": [{"id": "t", "faces": [{"base": "a"}, {"base": "v", "degs": [0, 0]}, {"base": "a"}]}]}}"#),
        ("identity.json", r#"{"dims": {"0": ["p", "q"], "1": [{"id": "a", "faces": [{"base": "q"}, {"base": "p"}]}], "2": [{"id": "t", "faces": [{"base": "a"}, {"base": "a"}, {"base": "a"}]}]}}"#),
        ("group.json", r#"{"kind": "finite", "table": [[0, 1], [0, 1]]}"#),
        ("junk.json", "{not json"),
    ];
    for (name, text) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let (code, _) = run(&["inspect", path(&p)]);
        assert_eq!(code, 2, "{name}");
    }
    let (code, _) = run(&["inspect", path(&dir.path().join("missing.json"))]);
    assert_eq!(code, 2);
    // a category document is not a group
    let (code, _) = run(&["galois", path(&data("interval.json"))]);
    assert_eq!(code, 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, _) = run(&["galois", path(&data("s3.json")), "3", "--budget", "5"]);
    assert_eq!(code, 3);
}

#[test]
fn slice_documents() {
    let dir = tempfile::tempdir().unwrap();
    let circle = r#"{"dims": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v"}, {"base": "v"}]}]}}"#;
    let cover = r#"{"dims": {"0": ["p", "q"], "1": [
        {"id": "e", "faces": [{"base": "q"}, {"base": "p"}]},
        {"id": "f", "faces": [{"base": "p"}, {"base": "q"}]}]}}"#;
    let doc = format!(r#"{{"total": {cover}, "base": {circle}, "map": {{"p": {{"base": "v"}}, "q": {{"base": "v"}}, "e": {{"base": "a"}}, "f": {{"base": "a"}}}}}}"#);
    let p = dir.path().join("cover.json");
    std::fs::write(&p, doc).unwrap();
    let (code, r) = run_json(&["inspect", path(&p), "--max-dim", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["covering"], true);
    assert_eq!(r["results"]["vertex_fibers"], serde_json::json!([2]));
    assert_eq!(r["results"]["monodromy"]["permutations"], serde_json::json!([[1, 0]]));
}

#[test]
fn delta_space_documents() {
    // the constant Δ°-space on a point is Segal
    let dir = tempfile::tempdir().unwrap();
    let point = r#"{"dims": {"0": ["v"]}}"#;
    let id = r#"{"v": {"base": "v"}}"#;
    let doc = format!(
        r#"{{"levels": [{point}, {point}, {point}], "faces": [[{id}, {id}], [{id}, {id}, {id}]], "degeneracies": [[{id}], [{id}, {id}]]}}"#
    );
    let p = dir.path().join("delta.json");
    std::fs::write(&p, doc).unwrap();
    let (code, r) = run_json(&["compute", path(&p), "segal", "2"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["segal"], "iso");
    let (code, r) = run_json(&["inspect", path(&p)]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["m_bound"], 2);
}
