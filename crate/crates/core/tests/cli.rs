//! End-to-end runs of the `hubauth` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn hubauth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hubauth")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn rank_prints_exact_hub_table() {
    let out = stdout(&hubauth(&["rank", "--input", &data("example1.txt"), "--method", "exp-exact", "--side", "hub"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("node,score,rank"));
    assert_eq!(lines.next(), Some("1,2.3319,1"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn rank_by_in_degree() {
    let out =
        stdout(&hubauth(&["rank", "--input", &data("example3.txt"), "--method", "degree", "--side", "authority"]));
    assert_eq!(out.lines().nth(1), Some("1,4.0000,1"));
    // Nodes 2..5 share rank 2 and are listed by ascending id.
    let rows = csv_rows(&out);
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["1", "2", "3", "4", "5", "6"]);
    assert!(rows[1..5].iter().all(|r| r[2] == "2"));
    assert_eq!(rows[5][2], "6");
}

#[test]
fn top_truncates_the_table() {
    let out = stdout(&hubauth(&["rank", "--input", &data("example1.txt"), "--method", "hits", "--top", "2"]));
    assert_eq!(out, "node,score,rank\n1,0.3383,1\n3,0.2798,2\n");
}

#[test]
fn empty_input_fails_without_output() {
    let dir = std::env::temp_dir().join(format!("hubauth-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    let out = hubauth(&["rank", "--input", empty.to_str().unwrap(), "--method", "exp-exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let target = dir.join("scores.csv");
    let out =
        hubauth(&["rank", "--input", empty.to_str().unwrap(), "--method", "degree", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!target.exists());
}

#[test]
fn malformed_input_and_bad_parameters() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hubauth"))
        .args(["rank", "--input", "-", "--method", "degree"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 2\n2 three\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let ex1 = data("example1.txt");
    for args in [
        vec!["rank", "--input", &ex1, "--method", "pagerank", "--alpha", "1.2"],
        vec!["rank", "--input", &ex1, "--method", "katz", "--c", "5"],
        vec!["rank", "--input", &ex1, "--method", "resolvent", "--c", "0.6"],
        vec!["rank", "--input", &ex1, "--method", "bogus"],
        vec!["topk", "--input", &ex1, "--k", "10"],
        vec!["topk", "--input", &ex1, "--k", "2", "--m", "1"],
        vec!["compare", "--input", &ex1, "--method", "hits"],
    ] {
        let out = hubauth(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hubauth"))
        .args(["rank", "--input", "-", "--method", "degree", "--side", "authority"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 2\n3 2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().nth(1), Some("2,2.0000,1"));
}

#[test]
fn topk_certifies_single_hub_with_exact_bracket() {
    let out = stdout(&hubauth(&["topk", "--input", &data("example3.txt"), "--k", "1", "--side", "hub"]));
    assert!(out.contains("certified=true"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "6");
    assert_eq!(rows[0][1], "3.7622");
    assert_eq!(rows[0][4], "true");
}

#[test]
fn topk_authorities_json() {
    let v = json(&hubauth(&["topk", "--input", &data("example1.txt"), "--k", "2", "--side", "authority", "--json"]));
    let members: Vec<u64> = v["members"].as_array().unwrap().iter().map(|m| m["node"].as_u64().unwrap()).collect();
    assert_eq!(members, [2, 3]);
    assert_eq!(v["certified"], true);
    assert_eq!(v["base"], 1);
    assert!(v["max_iterations"].as_u64().unwrap() >= 1);
}

#[test]
fn compare_reports_tau_and_overlap() {
    let ex1 = data("example1.txt");
    let out = stdout(&hubauth(&[
        "compare",
        "--input",
        &ex1,
        "--method",
        "exp-exact",
        "--method",
        "hits",
        "--side",
        "authority",
        "--k",
        "4",
    ]));
    assert!(out.contains("overlap,4,1.0000"));
    assert!(out.contains("kendall_tau_b,,1.0000"));

    let out = stdout(&hubauth(&["compare", "--input", &ex1, "--method", "katz", "--method", "katz"]));
    assert!(out.contains("kendall_tau_b,,1.0000"));

    let v = json(&hubauth(&[
        "compare",
        "--input",
        &ex1,
        "--method",
        "exp-exact",
        "--method",
        "katz",
        "--k",
        "1,2,3",
        "--json",
    ]));
    assert_eq!(v["methods"], serde_json::json!(["exp-exact", "katz"]));
    assert!(v["kendall_tau_b"].is_f64());
    assert_eq!(v["overlap_at_k"].as_array().unwrap().len(), 3);
    assert_eq!(v["top_k"][2]["a"].as_array().unwrap().len(), 3);
}

#[test]
fn spectrum_summaries() {
    let out = stdout(&hubauth(&["spectrum", "--input", &data("example2.txt")]));
    assert!(out.contains("relative_gap,0.0000"));
    assert!(out.contains("annotation,degenerate"));
    let v = json(&hubauth(&["spectrum", "--input", &data("two_cycle.mtx"), "--json", "--ritz", "2"]));
    assert!((v["sigma1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["symmetry_fraction"].as_f64(), Some(1.0));
    assert!((v["estrada_index"].as_f64().unwrap() - 4.0 * 1f64.cosh()).abs() < 1e-10);
    assert!(v["ritz_values"].is_array());
}

#[test]
fn ids_follow_the_input_base() {
    let dir = std::env::temp_dir().join(format!("hubauth-base-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let zero = dir.join("zero.txt");
    std::fs::write(&zero, "0 1\n0 2\n1 2\n").unwrap();
    let out = stdout(&hubauth(&["rank", "--input", zero.to_str().unwrap(), "--base", "0", "--method", "degree"]));
    assert_eq!(out.lines().nth(1), Some("0,2.0000,1"));
    let v = json(&hubauth(&[
        "topk",
        "--input",
        zero.to_str().unwrap(),
        "--base",
        "0",
        "--k",
        "1",
        "--side",
        "authority",
        "--json",
    ]));
    assert_eq!(v["members"][0]["node"], 2);
    assert_eq!(v["base"], 0);
}

#[test]
fn csv_and_json_agree_to_twelve_digits() {
    let ex1 = data("example1.txt");
    for method in ["exp-exact", "exp-quadrature", "hits", "katz", "resolvent", "expa-sums", "pagerank", "truncated"] {
        let base = ["rank", "--input", ex1.as_str(), "--method", method, "--side", "authority"];
        let csv = stdout(&hubauth(&[&base[..], &["--precision", "full"]].concat()));
        let v = json(&hubauth(&[&base[..], &["--json"]].concat()));
        let nodes = v["nodes"].as_array().unwrap();
        for (row, node) in csv_rows(&csv).iter().zip(nodes) {
            assert_eq!(row[0], node["node"].to_string());
            let (a, b): (f64, f64) = (row[1].parse().unwrap(), node["score"].as_f64().unwrap());
            assert!((a - b).abs() <= 5e-12 * b.abs().max(1e-300), "{method}: {a} vs {b}");
            assert_eq!(row[2], node["rank"].to_string());
        }
    }
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let ex1 = data("example1.txt");
    let runs = [
        vec!["rank", "--input", &ex1, "--method", "exp-quadrature", "--precision", "full", "--json"],
        vec!["topk", "--input", &ex1, "--k", "3", "--side", "hub", "--precision", "full"],
    ];
    for args in runs {
        let reference = stdout(&hubauth(&args));
        for threads in ["1", "3", "8"] {
            let again = stdout(&hubauth(&[&args[..], &["--threads", threads]].concat()));
            assert_eq!(again, reference, "{args:?} with {threads} threads");
        }
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hubauth-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("spectrum.csv");
    let out = hubauth(&["spectrum", "--input", &data("example1.txt"), "--out", target.to_str().unwrap()]);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("quantity,value\nn,4\nm,7\n"));
}
