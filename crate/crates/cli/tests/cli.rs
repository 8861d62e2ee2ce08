use std::collections::HashSet;
use std::process::{Command, Output};

fn asmdpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asmdpp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn counts_for_three() {
    let o = asmdpp(&["counts", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    let values: Vec<&str> = lines.iter().take(6).map(|l| l.rsplit(" = ").next().unwrap()).collect();
    assert_eq!(values, ["7", "(2,3,2)", "7", "(2,3,2)", "21", "(6,9,6)"]);
}

#[test]
fn counts_edge_sizes() {
    let v: serde_json::Value = serde_json::from_slice(&asmdpp(&["counts", "--n", "1", "--format", "json"]).stdout).unwrap();
    for key in ["asm", "dpp", "b"] {
        assert_eq!(v[key], 1);
    }
    let v: serde_json::Value = serde_json::from_slice(&asmdpp(&["counts", "--n", "4", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["asm"], 42);
    assert_eq!(v["asm_i"], serde_json::json!([7, 14, 14, 7]));
    assert_eq!(v["ok"], true);
}

fn halves_unique(text: &str) {
    let mut left = HashSet::new();
    let mut right = HashSet::new();
    for line in text.lines() {
        let (l, r) = line.split_once(" ↔ ").unwrap();
        assert!(left.insert(l.to_string()), "{l} twice");
        assert!(right.insert(r.to_string()), "{r} twice");
    }
}

#[test]
fn main_table() {
    let o = asmdpp(&["table", "main", "--n", "3", "--i", "2", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 36);
    halves_unique(&text);
    assert!(text.contains("(∅, 12345, [[0,1,0],[1,0,0],[0,0,1]]) ↔ "));
    let again = asmdpp(&["table", "main", "--n", "3", "--i", "2", "--x", "0"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn asmdpp_table() {
    let o = asmdpp(&["table", "asmdpp", "--n", "4", "--i", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 98);
    halves_unique(&text);
    assert!(text.lines().all(|l| l.ends_with(')')));
}

#[test]
fn trivial_tables() {
    for p in ["main", "asmdpp"] {
        let o = asmdpp(&["table", p, "--n", "1", "--i", "1"]);
        assert_eq!(stdout(&o).lines().count(), 1);
    }
}

#[test]
fn json_table_and_out_file() {
    let dir = std::env::temp_dir().join(format!("asmdpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let o = asmdpp(&["table", "asmdpp", "--n", "3", "--i", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["problem"], "asmdpp");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let left = sijection::Element::from_json(&rows[0]["left"]).unwrap();
    assert_eq!(left.pair_parts().0.ints(), &[] as &[i64]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_targets() {
    for args in [vec!["verify", "alpha"], vec!["verify", "main", "--n", "3"], vec!["verify", "fromdet", "--n", "3"]] {
        let o = asmdpp(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains(": pass"));
    }
}

#[test]
fn corrupted_fixture_fails_with_counterexample() {
    let o = asmdpp(&["verify", "corrupted"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("does not cross signs"));
    let o = asmdpp(&["verify", "corrupted", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert!(v["failure"]["counterexample"].is_object());
}

#[test]
fn usage_errors() {
    assert_eq!(asmdpp(&["selftest", "--budget-sec", "0"]).status.code(), Some(2));
    assert_eq!(asmdpp(&["table", "main", "--n", "2", "--i", "3"]).status.code(), Some(2));
    assert_eq!(asmdpp(&["table", "main", "--n", "3", "--i", "2", "--impl", "parti"]).status.code(), Some(2));
    assert_eq!(asmdpp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(asmdpp(&["counts", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(asmdpp(&["counts", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn selftest_json() {
    let o = asmdpp(&["selftest", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], true);
    let c = v["criteria"].as_array().unwrap();
    assert_eq!(c.len(), 8);
    assert!(c.iter().all(|x| x["ok"] == true && x["seconds"].is_number() && x["title"].is_string()));
}
