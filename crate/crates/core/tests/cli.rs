use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use markov_atf::document::DiagramDocument;

fn atf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atf")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("atf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pack_five_for_p114_verifies() {
    let file = scratch("five.json");
    let out = atf(&["pack", "1,1,2", "--goal", "five", "-o", path(&file)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = DiagramDocument::parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc.regions.len(), 5);

    let out = atf(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("5 regions"));
}

#[test]
fn every_pack_goal_round_trips_through_verify() {
    let goals = [
        ("1,1,1", "single"),
        ("1,1,1", "five"),
        ("1,1,1", "nine"),
        ("1,1,1", "diamond:clifford"),
        ("1,2,5", "diamond:c_ge_2"),
        ("2,5,29", "diamond:general"),
        ("1,5,13", "report"),
    ];
    for (t, goal) in goals {
        let file = scratch(&format!("{t}-{}.json", goal.replace(':', "_")));
        assert_eq!(atf(&["pack", t, "--goal", goal, "-o", path(&file)]).status.code(), Some(0), "{t} {goal}");
        assert_eq!(atf(&["verify", path(&file)]).status.code(), Some(0), "{t} {goal}");
    }
}

#[test]
fn tampered_certificate_fails_verification() {
    let file = scratch("tampered.json");
    atf(&["pack", "1,1,1", "--goal", "diamond:clifford", "-o", path(&file)]);
    let text = std::fs::read_to_string(&file).unwrap().replace("\"99/100\"", "\"3/2\"");
    std::fs::write(&file, text).unwrap();
    let out = atf(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let file = scratch("broken.json");
    std::fs::write(&file, "{\n  \"version\": 1,\n  \"triple\": [\"1\",").unwrap();
    let out = atf(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let out = atf(&["build", "2,2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.1"));
    assert_eq!(atf(&["pack", "1,1,2", "--goal", "seven"]).status.code(), Some(2));
}

#[test]
fn render_is_byte_identical_and_marks_clustered_nodes() {
    let doc = scratch("clustered.json");
    assert_eq!(atf(&["build", "1,1,1", "--cluster", "1/10", "-o", path(&doc)]).status.code(), Some(0));
    let (a, b) = (scratch("a.svg"), scratch("b.svg"));
    assert_eq!(atf(&["render", path(&doc), "-o", path(&a)]).status.code(), Some(0));
    assert_eq!(atf(&["render", path(&doc), "-o", path(&b)]).status.code(), Some(0));
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    assert_eq!(svg.matches("class=\"node\"").count(), 3);
    assert!(svg.contains("class=\"cluster\""));
}

#[test]
fn mutate_records_a_replayable_trace() {
    let file = scratch("mutated.json");
    assert_eq!(atf(&["mutate", "1,1,1", "--word", "cba", "-o", path(&file)]).status.code(), Some(0));
    let doc = DiagramDocument::parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc.trace.as_ref().unwrap().steps.len(), 3);
    assert_eq!(atf(&["verify", path(&file)]).status.code(), Some(0));
}

#[test]
fn moment_suite_passes() {
    let out = atf(&["moment", "1,2,5", "--samples", "200", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples"], 200);
}
