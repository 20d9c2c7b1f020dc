use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Runs the binary from the data directory, so report subjects are the
/// bare file names and goldens do not depend on the checkout location.
fn hkdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkdiag"))
        .current_dir(data_dir())
        .env_remove("HKDIAG_DATA")
        .args(args)
        .output()
        .expect("spawn hkdiag")
}

fn hkdiag_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hkdiag"))
        .current_dir(data_dir())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hkdiag");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn ok(args: &[&str]) -> String {
    let o = hkdiag(args);
    assert!(
        o.status.success(),
        "{args:?} exited {:?}\n{}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

/// Compares against `tests/golden/<name>`. Set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, want, "output differs from {}", path.display());
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("valid json")
}

/// (section, key, value, tag) for every fact of a JSON report.
fn json_facts(v: &Value) -> Vec<(String, String, String, String)> {
    let mut out = Vec::new();
    for s in v["sections"].as_array().unwrap() {
        for f in s["facts"].as_array().unwrap() {
            out.push((
                s["title"].as_str().unwrap().to_string(),
                f["key"].as_str().unwrap().to_string(),
                f["value"].as_str().unwrap().to_string(),
                f["tag"].as_str().unwrap().to_string(),
            ));
        }
    }
    out
}

/// Same tuples recovered from the text rendering.
fn text_facts(text: &str) -> Vec<(String, String, String, String)> {
    let mut out = Vec::new();
    let mut title = String::new();
    for line in text.lines() {
        if let Some(t) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            title = t.to_string();
        } else if let Some(body) = line.strip_prefix("  ") {
            let (key, rest) = body.split_once(" : ").unwrap();
            let (value, tag) = rest.rsplit_once("  (").unwrap();
            let tag = tag.trim_end_matches(')');
            let tag = tag.split(':').next().unwrap();
            out.push((
                title.clone(),
                key.trim_end().to_string(),
                value.to_string(),
                tag.to_string(),
            ));
        }
    }
    out
}

#[test]
fn enumerate_text_golden() {
    golden("enumerate.txt", &ok(&["enumerate"]));
}

#[test]
fn enumerate_json_has_thirteen_entries() {
    let v = json(&["enumerate"]);
    assert_eq!(v["sections"].as_array().unwrap().len(), 13);
}

#[test]
fn enumerate_is_deterministic_across_strategies() {
    assert_eq!(ok(&["enumerate"]), ok(&["enumerate", "--sequential"]));
    assert_eq!(ok(&["enumerate"]), ok(&["--jobs", "1", "enumerate"]));
}

#[test]
fn json_and_text_carry_the_same_facts() {
    for args in [
        vec!["enumerate"],
        vec!["classify", "fourone.txt"],
        vec!["symmetry", "fourone.txt"],
        vec!["validate", "bigon.txt"],
    ] {
        let text = stdout(&hkdiag(&args));
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(&args);
        let v: Value = serde_json::from_str(&stdout(&hkdiag(&full))).unwrap();
        assert_eq!(text_facts(&text), json_facts(&v), "{args:?}");
    }
}

#[test]
fn bogus_format_is_a_usage_error() {
    assert_eq!(
        hkdiag(&["--format", "bogus", "enumerate"]).status.code(),
        Some(2)
    );
}

#[test]
fn ablation_without_bigon_rule() {
    let v = json(&["enumerate", "--without", "C-vi"]);
    let sections = v["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 1);
    let facts = json_facts(&v);
    assert!(facts
        .iter()
        .any(|(_, k, val, _)| k == "type" && val == "(2,0,1,solid)"));
    assert_eq!(
        hkdiag(&["enumerate", "--without", "C-xx"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_fourone() {
    let out = ok(&["classify", "fourone.txt"]);
    assert!(out.contains("(3,0,3,solid); equivalent to 4_1"), "{out}");
    golden("classify_fourone.txt", &out);
}

#[test]
fn symmetry_fourone_is_exact() {
    let out = ok(&["symmetry", "fourone.txt"]);
    golden("symmetry_fourone.txt", &out);
    let v = json(&["symmetry", "fourone.txt"]);
    golden(
        "symmetry_fourone.json",
        &serde_json::to_string_pretty(&v).unwrap(),
    );
    let facts = json_facts(&v);
    let get = |k: &str| {
        facts
            .iter()
            .find(|f| f.1 == k)
            .map(|f| f.2.clone())
            .unwrap()
    };
    assert_eq!(get("Sym+"), "Z2");
    assert_eq!(get("Sym"), "Z2xZ2");
    assert_eq!(get("exact"), "true");
}

#[test]
fn single_h2_with_k_edge_has_trivial_groups() {
    let v = json(&["symmetry", "single_h2_k1.txt"]);
    let facts = json_facts(&v);
    assert!(
        facts.iter().any(|f| f.1 == "Sym" && f.2 == "1"),
        "{facts:?}"
    );
}

#[test]
fn validate_reports_r2() {
    let o = hkdiag(&["validate", "h1_extra_edge.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("R2"), "{}", stdout(&o));
}

#[test]
fn validate_bigon_fails_constraint_vi() {
    let o = hkdiag(&["validate", "bigon.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("C-vi"), "{}", stdout(&o));
}

#[test]
fn truncated_file_is_a_parse_error_with_position() {
    let o = hkdiag(&["classify", "truncated.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    assert_eq!(
        hkdiag(&["classify", "no_such_file.txt"]).status.code(),
        Some(2)
    );
}

#[test]
fn batch_keeps_input_order() {
    let files = ["fourone.txt", "single_h2_k1.txt", "fourone.txt"];
    let mut args = vec!["--jobs", "3", "--format", "json", "classify"];
    args.extend(files);
    let v: Value = serde_json::from_str(&ok(&args)).unwrap();
    let subjects: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["subject"].as_str().unwrap())
        .collect();
    assert_eq!(subjects, files);
}

#[test]
fn family_pipes_into_linking() {
    let code = ok(&["family", "torus-link", "-n", "4", "--tunnel"]);
    let o = hkdiag_stdin(&["linking", "-", "--components", "a,b"], code.as_bytes());
    assert!(o.status.success());
    assert!(stdout(&o).contains("lk(a,b) : 2"), "{}", stdout(&o));

    let mirrored = ok(&["--mirror", "family", "torus-link", "-n", "4", "--tunnel"]);
    let o = hkdiag_stdin(
        &["linking", "-", "--components", "a,b"],
        mirrored.as_bytes(),
    );
    assert!(stdout(&o).contains("lk(a,b) : -2"), "{}", stdout(&o));
}

#[test]
fn linking_rejects_unknown_component() {
    let code = ok(&["family", "torus-link", "-n", "4", "--tunnel"]);
    let o = hkdiag_stdin(&["linking", "-", "--components", "a,zz"], code.as_bytes());
    assert!(!o.status.success());
}

#[test]
fn disconnecting_loop_fails() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("tl.sg");
    std::fs::write(&src, ok(&["family", "torus-link", "-n", "4", "--tunnel"])).unwrap();
    let o = hkdiag(&[
        "loop",
        src.to_str().unwrap(),
        "--vertex",
        "va",
        "--pair",
        "a.0,a.1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("connected"));
}

#[test]
fn written_codes_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.sg");
    let out = dir.path().join("looped.sg");
    ok(&["family", "five-two", "-o", src.to_str().unwrap()]);
    ok(&[
        "loop",
        src.to_str().unwrap(),
        "--vertex",
        "a",
        "--pair",
        "e1.0,e2.1",
        "-o",
        out.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&out).unwrap();
    let parsed = hkdiag::spatial::parse_code(&written).unwrap();
    assert_eq!(hkdiag::spatial::write_code(&parsed), written);
    assert!(hkdiag::spatial::validate_code(&parsed).is_empty());
    ok(&["validate", out.to_str().unwrap()]);
}

fn five_two_prediction(double: bool) -> String {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.sg");
    let looped = dir.path().join("looped.sg");
    ok(&["family", "five-two", "-o", src.to_str().unwrap()]);
    let mut args = vec![
        "loop",
        src.to_str().unwrap(),
        "--vertex",
        "a",
        "--pair",
        "e1.0,e2.1",
    ];
    if double {
        args.push("--double");
    }
    args.extend(["-o", looped.to_str().unwrap()]);
    ok(&args);
    let text = ok(&[
        "analyze",
        looped.to_str().unwrap(),
        "--source",
        src.to_str().unwrap(),
        "--assert",
        "atoroidal=true",
        "--assert",
        "irreducible=true",
    ]);
    // Drop the subject line, which names the temporary file.
    text.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n"
}

#[test]
fn five_two_single_looping() {
    let out = five_two_prediction(false);
    assert!(
        out.contains("annulus diagram           : (1,1,0,hollow) {h1}"),
        "{out}"
    );
    golden("analyze_five_two_single.txt", &out);
}

#[test]
fn five_two_double_looping() {
    let out = five_two_prediction(true);
    assert!(out.contains("(3,0,3,hollow) {h2,h2,l0}"), "{out}");
    golden("analyze_five_two_double.txt", &out);
}

#[test]
fn analyze_without_assertions_predicts_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.sg");
    let looped = dir.path().join("looped.sg");
    ok(&["family", "five-two", "-o", src.to_str().unwrap()]);
    ok(&[
        "loop",
        src.to_str().unwrap(),
        "--vertex",
        "a",
        "--pair",
        "e1.0,e2.1",
        "-o",
        looped.to_str().unwrap(),
    ]);
    let out = ok(&["analyze", looped.to_str().unwrap()]);
    assert!(
        out.contains("annulus diagram           : not determined"),
        "{out}"
    );
    assert!(out.contains("atoroidality not asserted"), "{out}");
}

#[test]
fn unknown_assertion_key_is_a_usage_error() {
    let o = hkdiag(&["analyze", "fourone.txt", "--assert", "hyperbolic=true"]);
    assert_eq!(o.status.code(), Some(2));
}
