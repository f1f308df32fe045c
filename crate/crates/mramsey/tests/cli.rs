//! Golden-format tests of the `mramsey` command line.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mramsey"))
        .args(args)
        .env("MRAMSEY_SAT_SOLVER", env!("CARGO_BIN_EXE_mramsey-sat"))
        .output()
        .expect("mramsey runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn formula_lines() {
    for (args, expect) in [
        (["star-path-stripe", "4", "6"], "Finite 4\n"),
        (["stripe-c7", "2", "9"], "Infinite\n"),
        (["stripe-c7", "5", "6"], "Unknown lower_bound=3\n"),
        (["stripe-c7", "4", "4"], "Finite 3\n"),
        (["stripe-c6", "3", "3"], "Finite 3\nnote: external citation\n"),
    ] {
        let o = mramsey(&["formula", "--family", args[0], "--j", args[1], "--n", args[2]]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), expect);
    }
    let o = mramsey(&["formula", "--family", "stripe-c7", "--j", "1", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("j >= 2"), "{}", stderr(&o));
    let o = mramsey(&["formula", "--family", "stripe-c6", "--j", "3", "--n", "4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn formula_json() {
    let o = mramsey(&["--format", "json", "formula", "--family", "stripe-c7", "--j", "5", "--n", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["display"], "Unknown lower_bound=3");
    assert_eq!(v["family"], "stripe-c7");
}

#[test]
fn search_verdicts() {
    let o = mramsey(&["search", "--j", "3", "--t", "3", "--targets", "2K2;C7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("not_colorable"));

    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k4x1.json");
    let o = mramsey(&["search", "--j", "4", "--t", "1", "--targets", "2K2;C7", "--out", path_str(&cert)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "colorable");
    assert!(lines[1].starts_with("backtrack: colorable nodes="));
    assert_eq!(lines[2], format!("certificate: {}", cert.display()));
    let v = mramsey(&["verify", path_str(&cert)]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).ends_with("PASS\n"));

    let o = mramsey(&["search", "--j", "3", "--t", "2", "--targets", "K1,2;P4;2K2", "--expect", "colorable"]);
    assert_eq!(stdout(&o).lines().next(), Some("not_colorable"));
    assert_eq!(code(&o), 1);
}

#[test]
fn search_both_backends_agree() {
    let o = mramsey(&["search", "--j", "3", "--t", "2", "--targets", "2K2;C7", "--backend", "both"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "colorable");
    assert!(lines[1].starts_with("backtrack: colorable nodes="));
    assert!(lines[2].starts_with("cegar: colorable iterations="));
}

#[test]
fn search_scan() {
    let o = mramsey(&["search", "--j", "3", "--targets", "K1,2;P4;2K2", "--scan-to", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("t=1 outcome=colorable nodes="));
    assert!(lines[1].starts_with("t=2 outcome=not_colorable nodes="));
    assert_eq!(lines[2], "value: Finite 2");
}

#[test]
fn search_errors() {
    let o = mramsey(&["search", "--j", "3", "--t", "2", "--targets", "K1,2;Q4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`Q4`"));
    let o = mramsey(&["search", "--j", "3", "--targets", "2K2"]);
    assert_eq!(code(&o), 2);
    let o = mramsey(&["search", "--j", "4", "--t", "3", "--targets", "4K2;C7", "--no-symmetry", "--node-budget", "1000"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o).lines().next(), Some("budget"));
}

#[test]
fn witness_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = mramsey(&["witness", "--kind", "null-star-rest", "--j", "3", "--n", "4", "--out", path_str(&path)]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        format!(
            "PASS witness:null-star-rest(j=3,n=4) host=K_{{3x2}}\ncertificate: {}\n",
            path.display()
        )
    );
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("    [1, 2, 2],\n"));
    let o = mramsey(&["verify", path_str(&path)]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "certificate K_{3x2} colors=3 targets=K1,2;P4;4K2 provenance=witness:null-star-rest(j=3,n=4)\n\
         color 0 K1,2: clean\ncolor 1 P4: clean\ncolor 2 4K2: clean\nPASS\n"
    );

    // red is empty, so two green edges at vertex 1 become a red K_{1,2}
    let tampered = text
        .replace("    [1, 2, 2],\n", "    [1, 2, 0],\n")
        .replace("    [1, 3, 2],\n", "    [1, 3, 0],\n");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, tampered).unwrap();
    let o = mramsey(&["verify", path_str(&bad)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("color 0 K1,2: FOUND [[1,2],[1,3]]\n"), "{out}");
    assert!(out.ends_with("FAIL\n"));

    // without --out the certificate is the only thing on stdout
    let o = mramsey(&["witness", "--kind", "bipartite-split3", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("{\n  \"format\": \"mramsey-cert-v1\","));
    assert!(stderr(&o).starts_with("PASS witness:bipartite-split3(n=4) host=K_{3x3}"));

    let o = mramsey(&["witness", "--kind", "part-vs-rest", "--j", "4", "--n", "2"]);
    assert_eq!(code(&o), 2);
    let o = mramsey(&["witness", "--kind", "nope", "--n", "4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hand_built_all_blue_certificate_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blue.json");
    fs::write(
        &path,
        r#"{
  "format": "mramsey-cert-v1",
  "j": 3,
  "t": 1,
  "colors": 2,
  "targets": [{"kind": "stripe", "param": 2}, {"kind": "cycle", "param": 7}],
  "edges": [
    [0, 1, 1],
    [0, 2, 1],
    [1, 2, 1]
  ],
  "provenance": "hand"
}
"#,
    )
    .unwrap();
    let o = mramsey(&["verify", path_str(&path)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "certificate K_{3x1} colors=2 targets=2K2;C7 provenance=hand\ncolor 0 2K2: clean\ncolor 1 C7: clean\nPASS\n"
    );
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&mramsey(&["verify", path_str(&path)])), 2);
    fs::write(
        &path,
        r#"{"format": "mramsey-cert-v1", "j": 3, "t": 1, "colors": 2,
            "targets": [{"kind": "stripe", "param": 2}, {"kind": "cycle", "param": 7}],
            "edges": [[0, 1, 1], [0, 2, 1]], "provenance": "short"}"#,
    )
    .unwrap();
    let o = mramsey(&["verify", path_str(&path)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("incomplete coloring"), "{}", stderr(&o));
    assert_eq!(code(&mramsey(&["verify", "/nonexistent/cert.json"])), 2);
}

#[test]
fn obscheck_report() {
    let o = mramsey(&["obscheck"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("neither=0"));
    assert!(text.ends_with("PASS\n"));
}

#[test]
fn table_theorem1_small_envelope_agrees() {
    let o = mramsey(&["table", "--theorem", "1", "--max-n", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("j=")).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.ends_with("status=AGREE")), "{text}");
    assert!(text.contains("rows=9 agree=9 skipped=0 disagree=0 n/a=0"), "{text}");
}

#[test]
fn table_theorem2_rows() {
    let o = mramsey(&["table", "--theorem", "2", "--max-n", "4"]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.contains("j=4 n=2 formula=Finite 2 witness=PASS(search,t=1) search=not_colorable(t=2,"), "{text}");
    assert!(text.contains("j=2 n=3 formula=Infinite witness=n/a search=n/a status=N/A"), "{text}");
}

#[test]
fn table_theorem2_default_envelope() {
    let o = mramsey(&["table", "--theorem", "2"]);
    let text = stdout(&o);
    assert!(
        text.contains("j=3 n=5 formula=Finite 5 witness=PASS(bipartite-split3,t=4) search=skipped(t=5) status=SKIPPED(budget)"),
        "{text}"
    );
    // K_{4x3} has a (5K2, C7)-avoiding colouring although the closed form says 3
    assert!(text.contains("j=4 n=5 formula=Finite 3 witness=PASS(part-vs-rest,t=2) search=colorable(t=3,"), "{text}");
    assert!(text.contains("rows=12 agree=6 skipped=1 disagree=1 n/a=4"), "{text}");
    assert_eq!(code(&o), 1);
}
