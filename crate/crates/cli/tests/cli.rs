use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const NODE: &str = r#"{"p":2,"ambient":{"gamma":[1,1],"small":[[0,0],[1,1]]}}"#;
const K_OF_A3: &str = r#"{"p":3,"ambient":{"gamma":[1,1,1],"small":[[0,0,0],[1,1,1]]},
  "ideal":{"mu":[0,0,0],"gammaE":[1,1,1],"small":[[0,0,0],[0,0,1],[0,1,0],[1,0,0],[1,1,1]]}}"#;
const BROKEN: &str = r#"{"p":2,"ambient":{"gamma":[1,1],"small":[[0,0],[1,1]]},
  "ideal":{"mu":[0,0],"gammaE":[1,1],"small":[[0,0],[0,1],[1,0],[1,1]]}}"#;
const AXES: &str = r#"{"m":3,"T":4,"branches":[{"x1":[[1,1,1]]},{"x2":[[1,1,1]]},{"x3":[[1,1,1]]}],"generators":["1"]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn valmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valmax")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn dual_of_node_is_node() {
    let ws = Workspace::new();
    let node = ws.file("node.json", NODE);
    let out = valmax(&["dual", arg(&node)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ideal"]["small"], serde_json::json!([[0, 0], [1, 1]]));
}

#[test]
fn symmetry_check_of_k_holds() {
    let ws = Workspace::new();
    let k = ws.file("k.json", K_OF_A3);
    let out = valmax(&["symmetry-check", arg(&k)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["holds"], true);
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["holds"] == true));
}

#[test]
fn broken_ideal_fails_validation() {
    let ws = Workspace::new();
    let broken = ws.file("broken.json", BROKEN);
    let out = valmax(&["validate", arg(&broken)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["valid"], false);
    let axioms: Vec<&str> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["axiom"].as_str().unwrap())
        .collect();
    assert!(axioms.contains(&"conductor-minimality"));
}

#[test]
fn valid_ideal_passes_validation() {
    let ws = Workspace::new();
    let k = ws.file("k.json", K_OF_A3);
    let out = valmax(&["validate", arg(&k)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["valid"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(valmax(&["bogus"]).status.code(), Some(2));
    assert_eq!(valmax(&["dual"]).status.code(), Some(2));
    assert_eq!(valmax(&["maximals", "x.json", "--kind", "nope"]).status.code(), Some(2));
    assert_eq!(valmax(&["fuzz", "--parallel", "0"]).status.code(), Some(2));
}

#[test]
fn invalid_input_exits_1() {
    let ws = Workspace::new();
    let garbage = ws.file("garbage.json", "{not json");
    assert_eq!(valmax(&["dual", arg(&garbage)]).status.code(), Some(1));
    assert_eq!(valmax(&["dual", arg(&ws.path("missing.json"))]).status.code(), Some(1));
    let k = ws.file("k.json", K_OF_A3);
    let out = valmax(&["stdbasis-report", arg(&k), "--nu", "0,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid nu"));
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    let ws = Workspace::new();
    let k = ws.file("k.json", K_OF_A3);
    for cmd in ["maximals", "symmetry-check", "check-generation", "stdbasis-report", "dual"] {
        let one = valmax(&[cmd, arg(&k), "--parallel", "1"]);
        let four = valmax(&[cmd, arg(&k), "--parallel", "4"]);
        assert_eq!(one.stdout, four.stdout, "{cmd}");
        assert_eq!(one.stdout, valmax(&[cmd, arg(&k)]).stdout, "{cmd}");
    }
}

#[test]
fn output_flag_writes_canonical_file() {
    let ws = Workspace::new();
    let k = ws.file("k.json", K_OF_A3);
    let target = ws.path("dual.json");
    let out = valmax(&["dual", arg(&k), "-o", arg(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&target).unwrap();
    assert_eq!(
        text.trim_end(),
        r#"{"ambient":{"gamma":[1,1,1],"small":[[0,0,0],[1,1,1]]},"ideal":{"gammaE":[1,1,1],"mu":[0,0,0],"small":[[0,0,0],[1,1,1]]},"p":3}"#
    );
    let back = valmax(&["dual", arg(&target)]);
    assert_eq!(json_of(&back)["ideal"]["small"].as_array().unwrap().len(), 5);
}

#[test]
fn reconstruct_from_emitted_inputs() {
    let ws = Workspace::new();
    let k = ws.file("k.json", K_OF_A3);
    let inputs = ws.path("inputs.json");
    assert_eq!(valmax(&["reconstruct", arg(&k), "--emit-inputs", "-o", arg(&inputs)]).status.code(), Some(0));
    let rebuilt = valmax(&["reconstruct", arg(&inputs)]);
    assert_eq!(rebuilt.status.code(), Some(0));
    let direct = valmax(&["reconstruct", arg(&k), "--window", "0,0,0:2,2,2"]);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(rebuilt.stdout, direct.stdout);
    assert_eq!(json_of(&direct)["ideal"]["small"].as_array().unwrap().len(), 5);
}

#[test]
fn maximals_kinds() {
    let ws = Workspace::new();
    let node = ws.file("node.json", NODE);
    let all = json_of(&valmax(&["maximals", arg(&node)]));
    for key in ["maximals", "absolute", "relative", "irreducible-absolute"] {
        assert_eq!(all[key], serde_json::json!([[0, 0]]), "{key}");
    }
    let k = ws.file("k.json", K_OF_A3);
    let abs = json_of(&valmax(&["maximals", arg(&k), "--kind", "absolute"]));
    assert_eq!(abs["points"], serde_json::json!([]));
}

#[test]
fn fuzz_runs_and_handles_empty_ranges() {
    let out = valmax(&["fuzz", "--seeds", "1..20", "-p", "2", "--bound", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["instances"], 20);
    assert_eq!(v["passed"], 20);
    let empty = valmax(&["fuzz", "--seeds", "5..4"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json_of(&empty)["instances"], 0);
    assert_eq!(valmax(&["fuzz", "-p", "7"]).status.code(), Some(1));
}

#[test]
fn from_curve_three_axes() {
    let ws = Workspace::new();
    let axes = ws.file("axes.json", AXES);
    let out = valmax(&["from-curve", arg(&axes), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ambient"]["gamma"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["ambient"]["small"], serde_json::json!([[0, 0, 0], [1, 1, 1]]));
}

#[test]
fn from_curve_reports_parse_position() {
    let ws = Workspace::new();
    let bad = ws.file("bad.json", &AXES.replace("[\"1\"]", "[\"x1 + * x2\"]"));
    let out = valmax(&["from-curve", arg(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:6"));
}
