//! End-to-end checks of the `cospectra` binary: document formats on stdout,
//! exit codes, and agreement between the plan and preset rewiring routes.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cospectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cospectra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

/// Writes a scratch file unique to the calling test.
fn tmpfile(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cospectra-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const FLAGSHIP_PLAN: &str =
    r#"{"X":[4,5],"removed":[[4,1],[5,3]],"added":[[4,3],[5,1]],"side":"out"}"#;

#[test]
fn gen_emits_graph_documents() {
    let out = run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["arcs"].as_array().unwrap().len(), 16);
    assert_eq!(doc["labels"][2], serde_json::json!([0, 1, 0]));

    let out = run(&["gen", "kautz", "--d", "2", "--ell", "3"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 12);
    assert_eq!(doc["arcs"].as_array().unwrap().len(), 24);
}

#[test]
fn gen_emits_dot() {
    let out = run(&["gen", "de-bruijn", "--d", "2", "--ell", "3", "--dot"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph {\n"));
    assert!(dot.ends_with("}\n"));
    assert!(dot.contains("  \"010\" -> \"100\";\n"));
    assert!(dot.contains("  \"010\" -> \"101\";\n"));
}

#[test]
fn spectrum_document_golden() {
    let graph = stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"]));
    let out = run_with_stdin(&["spectrum", "--json"], &graph);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"charpoly":[0,0,0,0,0,0,0,-2,1],"spectrum":{"0":7,"2":1}}"#
    );
}

#[test]
fn spectrum_text_output() {
    let graph = stdout(&run(&["gen", "kautz", "--d", "2", "--ell", "3"]));
    let out = run_with_stdin(&["spectrum"], &graph);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("charpoly:"));
    assert!(text.contains("spectrum:"));
    assert!(text.contains("-1^2"));
    assert!(text.contains("0^9"));
    assert!(text.contains("2^1"));
}

#[test]
fn modify_plan_rewires_the_block() {
    let graph = tmpfile("host.json", &stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"])));
    let plan = tmpfile("plan.json", FLAGSHIP_PLAN);
    let out = run(&[
        "modify",
        "--graph",
        graph.to_str().unwrap(),
        "--plan",
        plan.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arcs = doc["arcs"].as_array().unwrap();
    let has = |u: u64, v: u64| arcs.iter().any(|a| a[0] == u && a[1] == v);
    assert!(has(4, 0) && has(4, 3) && has(5, 1) && has(5, 2));
    assert!(!has(4, 1) && !has(5, 3));
}

#[test]
fn preset_route_matches_plan_route() {
    let graph = tmpfile("preset-host.json", &stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"])));
    let plan = tmpfile("preset-plan.json", FLAGSHIP_PLAN);
    let via_plan = run(&[
        "modify",
        "--graph",
        graph.to_str().unwrap(),
        "--plan",
        plan.to_str().unwrap(),
    ]);
    let via_preset = run(&[
        "modify",
        "de-bruijn",
        "--d",
        "2",
        "--ell",
        "3",
        "--prefix",
        "10",
        "--perms",
        "01;10",
    ]);
    assert_eq!(code(&via_plan), 0);
    assert_eq!(code(&via_preset), 0);
    assert_eq!(stdout(&via_plan), stdout(&via_preset));
}

#[test]
fn modify_emits_dot_when_asked() {
    let out = run(&[
        "modify", "--dot", "de-bruijn", "--d", "2", "--ell", "3", "--prefix", "10", "--perms",
        "01;10",
    ]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph {\n"));
    assert!(dot.contains("  \"100\" -> \"011\";\n")); // the rewired arc
}

#[test]
fn check_reachability_exit_codes() {
    let b = stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"]));
    let k = stdout(&run(&["gen", "kautz", "--d", "2", "--ell", "3"]));

    let out = run_with_stdin(&["check", "upp", "--ell", "3"], &b);
    assert_eq!((code(&out), stdout(&out).trim().to_owned()), (0, "true".into()));
    let out = run_with_stdin(&["check", "upp", "--ell", "2"], &b);
    assert_eq!((code(&out), stdout(&out).trim().to_owned()), (1, "false".into()));
    let out = run_with_stdin(&["check", "kautz", "--ell", "3"], &k);
    assert_eq!(code(&out), 0);
    let out = run_with_stdin(&["check", "upp", "--ell", "3"], &k);
    assert_eq!(code(&out), 1);
    let out = run_with_stdin(&["check", "scaled", "--ell", "3", "--c", "1"], &b);
    assert_eq!(code(&out), 0);
}

#[test]
fn check_cospectral_and_isomorphic_pair() {
    let host = tmpfile("pair-host.json", &stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"])));
    let rewired = tmpfile(
        "pair-rewired.json",
        &stdout(&run(&[
            "modify", "de-bruijn", "--d", "2", "--ell", "3", "--prefix", "10", "--perms", "01;10",
        ])),
    );
    let out = run(&[
        "check",
        "cospectral",
        host.to_str().unwrap(),
        rewired.to_str().unwrap(),
    ]);
    assert_eq!((code(&out), stdout(&out).trim().to_owned()), (0, "true".into()));
    let out = run(&[
        "check",
        "isomorphic",
        host.to_str().unwrap(),
        rewired.to_str().unwrap(),
    ]);
    assert_eq!((code(&out), stdout(&out).trim().to_owned()), (1, "false".into()));
}

#[test]
fn canon_ignores_vertex_numbering() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"]))).unwrap();
    // renumber v -> (v + 3) mod 8 and drop the labels
    let arcs: Vec<serde_json::Value> = doc["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            serde_json::json!([
                (a[0].as_u64().unwrap() + 3) % 8,
                (a[1].as_u64().unwrap() + 3) % 8
            ])
        })
        .collect();
    let scrambled = serde_json::json!({"n": 8, "arcs": arcs}).to_string();

    let a = run_with_stdin(&["canon"], &doc.to_string());
    let b = run_with_stdin(&["canon"], &scrambled);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));

    // a genuinely different graph canonicalizes differently
    let rewired = stdout(&run(&[
        "modify", "de-bruijn", "--d", "2", "--ell", "3", "--prefix", "10", "--perms", "01;10",
    ]));
    let c = run_with_stdin(&["canon", "-"], &rewired);
    assert_eq!(code(&c), 0);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn enumerate_upp_reports_one_class_at_order_four() {
    let out = run(&["enumerate", "upp", "--d", "2", "--ell", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["classes"], 1);
    assert_eq!(doc["certificates"].as_array().unwrap().len(), 1);

    let threaded = run(&["enumerate", "upp", "--d", "2", "--ell", "2", "--jobs", "3", "--json"]);
    assert_eq!(stdout(&threaded), stdout(&out));
}

#[test]
fn enumerate_perm_sweep_summary() {
    let out = run(&[
        "enumerate",
        "perm-sweep",
        "--d",
        "2",
        "--ell",
        "3",
        "--prefix",
        "10",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["families"], 4);
    assert_eq!(doc["all_cospectral"], true);
    assert_eq!(doc["all_reachability"], true);
    let classes = doc["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(
        classes
            .iter()
            .filter(|c| c["isomorphic_to_host"] == true)
            .count(),
        1
    );
}

#[test]
fn usage_and_domain_errors_are_distinguished() {
    // missing required arguments and unknown commands are usage errors
    assert_eq!(code(&run(&["gen", "de-bruijn", "--d", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["modify"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["info"])), 0);

    // out-of-range parameters and malformed documents are domain errors
    let out = run(&["gen", "de-bruijn", "--d", "0", "--ell", "3"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("at least 1"));
    let out = run(&["gen", "de-bruijn", "--d", "2", "--ell", "40"]);
    assert_eq!(code(&out), 3);
    let out = run_with_stdin(&["spectrum"], "not json");
    assert_eq!(code(&out), 3);
    let out = run(&["spectrum", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(code(&out), 3);
    let out = run(&["enumerate", "upp", "--d", "3", "--ell", "3"]);
    assert_eq!(code(&out), 3); // search scale not supported

    // a structurally invalid plan is a domain error, not a crash
    let graph = tmpfile("bad-host.json", &stdout(&run(&["gen", "de-bruijn", "--d", "2", "--ell", "3"])));
    let plan = tmpfile(
        "bad-plan.json",
        r#"{"X":[4,5],"removed":[[4,1]],"added":[],"side":"out"}"#,
    );
    let out = run(&[
        "modify",
        "--graph",
        graph.to_str().unwrap(),
        "--plan",
        plan.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}
