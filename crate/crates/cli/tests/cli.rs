use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antimagic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn manifest_lines(dir: &Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(dir.join("manifest.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn table_pt2_is_the_printed_matrix() {
    let o = run(&["table", "--kind", "pt", "--k", "2", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "i,1,2,3,4,5\nR1,1,3,5,2,4\nR2,10,9,8,7,6\nR3,13,12,11,15,14\nR4,20,19,18,17,16\nR5,21,23,25,22,24\n"
    );
}

#[test]
fn table_k0_is_a_usage_error() {
    assert_eq!(run(&["table", "--kind", "m1", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--kind", "m9", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn build_gn_reports_its_bracelets() {
    let o = run(&["build", "--family", "gn", "--n", "10", "--indices", "1", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("TB(7)+TB(2), certified: 3 colors"), "{}", stderr(&o));
}

#[test]
fn build_fb9_dot_has_hub_864() {
    let o = run(&["build", "--family", "fb", "--n", "9", "--emit", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"x\" [label=\"x\\n864\"];"));
}

#[test]
fn parity_and_palette_errors() {
    assert_eq!(run(&["build", "--family", "fb", "--n", "8"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--family", "gn", "--n", "10"]).status.code(), Some(2));
    let o = run(&["build", "--family", "fb", "--n", "9", "--expect-palette", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["build", "--family", "fb", "--n", "9", "--expect-palette", "42,46,864"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn tfb_with_printed_blocks() {
    let o = run(&["build", "--family", "tfb", "--t", "3", "--s", "3", "--blocks", "1,5,9;3,4,8;2,6,7", "--certify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("288"));
}

#[test]
fn partition_csv() {
    let o = run(&["partition", "--first", "1", "--step", "1", "--t", "3", "--s", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("block,sum,v1,v2,v3"));
    for l in lines {
        let cells: Vec<i64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells[1], 15);
        assert_eq!(cells[2..].iter().sum::<i64>(), 15);
    }
    let o = run(&["partition", "--first", "1", "--step", "1", "--t", "3", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_excludes_fb1_residue_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let o = run(&[
        "sweep", "--family", "fb1", "--k-min", "1", "--k-max", "14", "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for line in std::fs::read_to_string(&report).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let k = v["spec"]["r"].as_u64().unwrap() * v["spec"]["s"].as_u64().unwrap() / 2;
        let want = if k % 4 == 2 { "excluded" } else { "pass" };
        assert_eq!(v["outcome"], want, "{line}");
    }
    assert_eq!(run(&["sweep", "--family", "fb", "--k-min", "3", "--k-max", "2"]).status.code(), Some(2));
}

#[test]
fn solve_named_graphs() {
    let o = run(&["solve", "--graph", "fb1"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["chi_la"], 3);
    assert_eq!(r["status"], "exact");
    assert_eq!(run(&["solve", "--graph", "p2"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--graph", "c7", "--max-edges", "5"]).status.code(), Some(2));
}

#[test]
fn out_dir_files_manifest_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "build", "--family", "pt", "--n", "4", "--certify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = dir.path().join("pt-n4.json");
    assert!(doc.exists());
    let first = std::fs::read(&doc).unwrap();

    // same command, same bytes
    let again = tempfile::tempdir().unwrap();
    run(&["--out", again.path().to_str().unwrap(), "build", "--family", "pt", "--n", "4", "--certify"]);
    assert_eq!(std::fs::read(again.path().join("pt-n4.json")).unwrap(), first);

    let o = run(&["--out", out, "certify", "--input", doc.to_str().unwrap(), "--expect-palette", "auto"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("pt-n4-certificate.json")).unwrap()).unwrap();
    let embedded: serde_json::Value = serde_json::from_slice::<serde_json::Value>(&first).unwrap()["certificate"].clone();
    assert_eq!(cert, embedded);
    assert_eq!(cert["palette"], serde_json::json!([24, 26, 54]));

    let lines = manifest_lines(dir.path());
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["command"], "build");
    assert_eq!(lines[0]["outcome"], "pass");
    assert_eq!(lines[1]["command"], "certify");
    assert_eq!(lines[1]["inputs"][doc.to_str().unwrap()].as_str().unwrap().len(), 64);
}

#[test]
fn certify_catches_a_tampered_label() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run(&["--out", out, "build", "--family", "fb", "--n", "3"]);
    let path = dir.path().join("fb-n3.json");
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = doc["edges"][0]["label"].clone();
    doc["edges"][0]["label"] = doc["edges"][1]["label"].clone();
    doc["edges"][1]["label"] = a;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = run(&["certify", "--input", bad.to_str().unwrap(), "--expect-palette", "auto"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn solve_uses_document_labels_as_incumbent() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run(&["--out", out, "build", "--family", "fb", "--n", "3"]);
    let doc = dir.path().join("fb-n3.json");
    let o = run(&["--out", out, "solve", "--input", doc.to_str().unwrap(), "--max-edges", "15"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("solve-fb-n3.json")).unwrap()).unwrap();
    assert_eq!(r["chi_la"], 3);
}
