use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn clawsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clawsq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let p = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend(["--out", &p]);
    let out = clawsq(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

const CLAW: &str = "p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n";

#[test]
fn analyze_reports_classification() {
    let dir = tempfile::tempdir().unwrap();
    let ico = generate(dir.path(), "icosahedron.col", &["icosahedron"]);
    let out = clawsq(&["analyze", &ico, "--no-timings"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["schema"], "clawsq/1");
    assert_eq!(r["classification"], "icosahedron");
    assert_eq!(r["omega"], 3);
    assert!(r["square_degrees"].as_array().unwrap().iter().all(|d| d == 10));
    assert!(r.get("timings").is_none());

    let oct = write(dir.path(), "lk4.col", &clawsq_named_line_k4());
    let r = json(&clawsq(&["analyze", &oct]));
    assert_eq!(r["classification"], "reducible v=0 case iii");
}

fn clawsq_named_line_k4() -> String {
    let out = clawsq(&["generate", "line-graph", "--of", "k4"]);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn claw_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let claw = write(dir.path(), "claw.col", CLAW);
    let out = clawsq(&["analyze", &claw]);
    assert!(out.status.success());
    assert_eq!(json(&out)["claw"]["center"], 0);
    assert_eq!(clawsq(&["analyze", &claw, "--require-claw-free"]).status.code(), Some(2));
    assert_eq!(clawsq(&["color", &claw]).status.code(), Some(2));
}

#[test]
fn color_examples() {
    let dir = tempfile::tempdir().unwrap();
    let sharp = generate(dir.path(), "sharp.col", &["blowup-c5", "--sizes", "1,1,1,2,2", "--line"]);
    let r = json(&clawsq(&["color", &sharp, "--oracle"]));
    assert_eq!((r["palette"].as_u64(), r["verified"].as_bool()), (Some(10), Some(true)));
    assert_eq!(r["oracle"]["chromatic"], 10);

    let ico = generate(dir.path(), "ico.col", &["icosahedron"]);
    assert_eq!(json(&clawsq(&["color", &ico]))["palette"], 6);

    let c7 = write(dir.path(), "c7.col", "p edge 7 7\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 1 7\n");
    let r = json(&clawsq(&["color", &c7, "--oracle"]));
    assert_eq!((r["palette"].as_u64(), r["bound"].as_u64()), (Some(4), Some(5)));
    assert_eq!(r["coloring"].as_array().unwrap().len(), 7);
}

#[test]
fn generate_outputs() {
    let out = clawsq(&["generate", "blowup-c5", "--sizes", "2,2,2,2,2"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p edge 10 20\n"));
    let out = clawsq(&["generate", "line-graph", "--of", "petersen"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p edge 15 30\n"));
    let out = clawsq(&["generate", "random", "--n", "12", "--strategy", "rejection", "--seed", "4"]);
    let again = clawsq(&["generate", "random", "--n", "12", "--strategy", "rejection", "--seed", "4"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, again.stdout);
    assert_eq!(clawsq(&["generate", "line-graph", "--of", "nothing"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.col", "p edge 3 1\ne 4 1\n");
    assert_eq!(clawsq(&["color", &bad]).status.code(), Some(1));
    assert_eq!(clawsq(&["analyze", "/nonexistent.col"]).status.code(), Some(1));
}

#[test]
fn corpus_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let status = clawsq(&["--jobs", "2", "generate", "corpus", "--out", out.to_str().unwrap(), "--seed", "9"]).status;
    assert!(status.success());
    let manifest = out.join("manifest.json").to_string_lossy().into_owned();

    let r = clawsq(&["verify-lemmas", &manifest]);
    assert!(r.status.success());
    let v = json(&r);
    assert!(v["checked"].as_u64().unwrap() > 0 && v["failures"].as_array().unwrap().is_empty());

    let r = clawsq(&["--jobs", "1", "cross-check", &manifest, "--oracle", "--oracle-max", "10"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let v = json(&r);
    assert_eq!(v["summary"]["graphs"], v["summary"]["verified"]);
}

#[test]
fn planted_claw_and_empty_manifest() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "claw.col", CLAW);
    write(dir.path(), "k3.col", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let manifest = write(
        dir.path(),
        "manifest.json",
        r#"[{"id":"claw","file":"claw.col","generator":"named","params":{"name":"claw"},"seed":0,"known":{"omega":2,"claw_free":false}},
            {"id":"k3","file":"k3.col","generator":"named","params":{"name":"complete3"},"seed":0,"known":{"omega":3,"claw_free":true}}]"#,
    );
    let r = clawsq(&["verify-lemmas", &manifest]);
    assert_eq!(r.status.code(), Some(2));
    let v = json(&r);
    assert!(v["errors"][0]["error"].as_str().unwrap().contains("claw"));

    let empty = write(dir.path(), "empty.json", "[]");
    let r = clawsq(&["verify-lemmas", &empty]);
    assert!(r.status.success());
    assert!(String::from_utf8_lossy(&r.stderr).contains("no graphs"));
}
