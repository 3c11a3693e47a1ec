use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn file_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let o = run(&["validate", "-i", "fixture:g1-chain"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["valid"], true);

    let dir = TempDir::new().unwrap();
    let bad_relation = path(&dir, "bad.json");
    fs::write(
        &bad_relation,
        r#"{"genus": 1, "boundary": "closed", "twists": [{"coords": [1, 0]}]}"#,
    )
    .unwrap();
    let o = run(&["validate", "-i", s(&bad_relation)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["product_is_identity"], false);

    let malformed = path(&dir, "malformed.json");
    fs::write(&malformed, r#"{"genus": 1, "boundary": "closed", "twists": [{"coords": [1]}], "x": 1}"#).unwrap();
    assert_eq!(code(&run(&["validate", "-i", s(&malformed)])), 3);
    assert_eq!(code(&run(&["validate", "-i", s(&path(&dir, "missing.json"))])), 3);
}

#[test]
fn invariants_report() {
    let o = run(&["invariants", "--fixture", "g1-chain", "--reproducible"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["e"], 12);
    assert_eq!(v["sigma"], -8);
    assert_eq!(v["spin"]["verdict"], "NotSpin");
    assert!(v.get("generated_at").is_none());

    let again = run(&["invariants", "--fixture", "g1-chain", "--reproducible"]);
    assert_eq!(o.stdout, again.stdout);

    let stamped = stdout_json(&run(&["invariants", "--fixture", "g1-chain"]));
    assert!(stamped["generated_at"].is_u64());

    let text = run(&["invariants", "-i", "fixture:g2-matsumoto", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("signature             -4"), "{text}");
}

#[test]
fn invariants_reject_relative_input() {
    let dir = TempDir::new().unwrap();
    let rel = path(&dir, "rel.json");
    fs::write(
        &rel,
        r#"{"genus": 1, "boundary": "relative", "twists": [{"coords": [1, 0]}]}"#,
    )
    .unwrap();
    let o = run(&["invariants", "-i", s(&rel)]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn recipe_pipeline_issues_certificates() {
    let dir = TempDir::new().unwrap();
    let y = path(&dir, "y.json");
    let z = path(&dir, "z.json");
    assert_eq!(code(&run(&["build", "stack", "--fixture", "g2-chain5", "-o", s(&y), "--reproducible"])), 0);
    let stack_log = file_json(&dir.path().join("y.json.log.json"));
    assert_eq!(stack_log["twist_count"], 120);

    assert_eq!(code(&run(&["build", "z", "--seed", s(&y), "-o", s(&z), "--reproducible"])), 0);
    let log = file_json(&dir.path().join("z.json.log.json"));
    let issued = log["certificates"]["issued"].as_array().unwrap();
    assert_eq!(issued.len(), 3, "{log}");
    let schedules = log["schedules"].as_array().unwrap();
    assert!(schedules.iter().any(|s| s["kind"] == "normalize"));

    let o = run(&["invariants", "-i", s(&z), "--certify", "--reproducible"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 3);
    assert_eq!(v["sigma"], -144);

    let grown = path(&dir, "g.json");
    assert_eq!(code(&run(&["build", "grow", "-i", s(&z), "--summand", s(&y), "-o", s(&grown)])), 0);
    let e_z = v["e"].as_i64().unwrap();
    let e_y = stdout_json(&run(&["invariants", "-i", s(&y)]))["e"].as_i64().unwrap();
    let e_g = stdout_json(&run(&["invariants", "-i", s(&grown)]))["e"].as_i64().unwrap();
    assert_eq!(e_g, e_z + e_y + 4 * 2 - 4);

    let zp = path(&dir, "zp.json");
    let o = run(&["build", "zprime", "-i", s(&y), "--x-prime", "fixture:g2-chain4", "-o", s(&zp)]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "build", "zprime", "-i", s(&y), "--x-prime", "fixture:g2-chain4", "--require-spin", "-o", s(&zp),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn build_preconditions_exit_2() {
    let o = run(&["build", "stack", "--fixture", "g2-matsumoto", "--cycle", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-separating"));

    let o = run(&["build", "normalize", "--fixture", "g2-chain4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("a2"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn twisted_build_drops_spin_on_genus_nine() {
    let dir = TempDir::new().unwrap();
    let y = path(&dir, "y.json");
    let t = path(&dir, "t.json");
    assert_eq!(code(&run(&["build", "stack", "--fixture", "g9-chain19", "-o", s(&y)])), 0);
    let o = run(&["build", "twisted", "-i", s(&y), "--phi", "t(a9)*t(b9)", "-o", s(&t)]);
    assert_eq!(code(&o), 0);
    let log = file_json(&dir.path().join("t.json.log.json"));
    assert_eq!(log["spin_declared"], false);
    assert_eq!(log["twist_count"], 2 * 18 * 380);
    assert_eq!(code(&run(&["build", "twisted", "-i", s(&y), "--phi", "t(z1)"])), 2);
}

#[test]
fn hurwitz_schedules() {
    let dir = TempDir::new().unwrap();
    let before = path(&dir, "before.json");
    let after = path(&dir, "after.json");
    let o = run(&["hurwitz", "--fixture", "g2-chain5", "--schedule", "", "-o", s(&before), "--reproducible"]);
    assert_eq!(code(&o), 0);
    let o = run(&["hurwitz", "-i", s(&before), "--schedule", "R1,L1", "-o", s(&after), "--reproducible"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["invariants_equal"], true);
    assert_eq!(file_json(&before)["twists"], file_json(&after)["twists"]);

    let o = run(&["hurwitz", "-i", s(&before), "--schedule", "C", "-o", s(&after)]);
    assert_eq!(code(&o), 0);
    let cmp = stdout_json(&o);
    assert_eq!(cmp["before"]["sigma"], cmp["after"]["sigma"]);
    assert_eq!(code(&run(&["validate", "-i", s(&after)])), 0);
    let rotated = file_json(&after)["twists"].clone();
    let original = file_json(&before)["twists"].clone();
    assert_eq!(rotated[29], original[0]);

    let o = run(&["hurwitz", "-i", s(&before), "--schedule", "R1,R40", "-o", s(&after)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 2"));
}
