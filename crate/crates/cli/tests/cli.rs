use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn pgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).expect("readable")).expect("valid json")
}

fn out_dir(dir: &tempfile::TempDir) -> &str {
    dir.path().to_str().unwrap()
}

#[test]
fn catalog_lists_every_entry_in_both_formats() {
    let o = pgroup(&["catalog"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["huppert21", "huppert22", "noritzsch", "ex51", "ex52"]);

    let o = pgroup(&["catalog", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(&o.stdout[..]);
    assert_eq!(r.headers().unwrap().get(0), Some("name"));
    assert_eq!(r.records().count(), 5);
}

#[test]
fn build_writes_presentations_summary_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = pgroup(&["build", "ex52", "--quiet", "--out", out_dir(&dir)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    for f in ["ex52-p5.base.json", "ex52-p5.extension.json", "ex52-p5.summary.json", "ex52-p5.build.manifest.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let s = json(&dir.path().join("ex52-p5.summary.json"));
    assert_eq!(s["passed"], true);
    assert_eq!(s["extension"]["order"], 15625);
    assert_eq!(s["extension"]["degrees"]["degrees"], serde_json::json!({"1": 25, "5": 24, "25": 24}));

    // manifest digests agree with an independent hash of each output
    let m = json(&dir.path().join("ex52-p5.build.manifest.json"));
    assert_eq!(m["command"], "build");
    let outputs = m["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), 3);
    for o in outputs {
        let bytes = fs::read(dir.path().join(o["path"].as_str().unwrap())).unwrap();
        let hex: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(o["sha256"].as_str().unwrap(), hex);
    }
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(code(&pgroup(&["build", "ex51", "--quiet", "--out", out_dir(d)])), 0);
    }
    for f in ["ex51-p5.base.json", "ex51-p5.extension.json", "ex51-p5.summary.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn written_extension_reloads_with_the_same_degrees() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&pgroup(&["build", "huppert22", "--quiet", "--out", out_dir(&dir)])), 0);
    let ext = dir.path().join("huppert22-p5.extension.json");
    let o = pgroup(&["degrees", "--quiet", "--presentation", ext.to_str().unwrap(), "--out", out_dir(&dir)]);
    assert_eq!(code(&o), 0);
    let d = json(&dir.path().join("huppert22-p5.extension.degrees.json"));
    assert_eq!(d["order"], 15625);
    assert_eq!(d["report"]["degrees"], serde_json::json!({"1": 25, "5": 124, "25": 20}));
    // the input file is recorded in the manifest
    let m = json(&dir.path().join("huppert22-p5.degrees.manifest.json"));
    assert_eq!(m["inputs"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes_distinguish_usage_mismatch_and_success() {
    assert_eq!(code(&pgroup(&["build", "huppert22", "--prime", "3", "--quiet"])), 2);
    assert_eq!(code(&pgroup(&["build", "nosuchgroup", "--quiet"])), 2);
    assert_eq!(code(&pgroup(&["build", "ex52", "--bogus"])), 2);
    assert_eq!(code(&pgroup(&["build", "noritzsch", "--variant", "other", "--quiet"])), 2);
    assert_eq!(code(&pgroup(&["sweep", "huppert22", "--quiet"])), 2);
    assert_eq!(code(&pgroup(&["check", "--quiet"])), 2);
    // n2 = 0 leaves the map non-surjective
    let o = pgroup(&["verify", "ex51", "--tuple", "0,0,1,0,0,1,4,0,0", "--quiet"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["record"]["surj"], false);
}

#[test]
fn literal_order_nine_map_is_reported_as_non_homomorphism() {
    let o = pgroup(&["build", "noritzsch", "--variant", "literal", "--quiet"]);
    assert_eq!(code(&o), 0, "the failure is the expected outcome");
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["alpha"]["automorphism"], false);
    let viol: Vec<&str> = v["alpha"]["violations"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(viol.len(), 3);
    assert!(viol.iter().all(|s| s.contains("^p")));
    assert!(v["extension"].is_null());
}

#[test]
fn verify_csv_parses_and_all_checks_pass() {
    let o = pgroup(&["verify", "noritzsch", "--format", "csv", "--quiet"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(&o.stdout[..]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert!(rows.len() >= 10);
    assert!(rows.iter().all(|row| &row[4] == "true"));
    assert!(rows.iter().any(|row| &row[0] == "top_layer" && &row[3] == "[9,18]"));
}

fn sweep_args<'a>(dir: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["sweep", "ex52", "--end", "3000", "--checkpoint", "700", "--quiet", "--out", dir];
    v.extend_from_slice(extra);
    v
}

#[test]
fn sweep_records_match_summary_counts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&pgroup(&sweep_args(out_dir(&dir), &[]))), 0);
    let text = fs::read_to_string(dir.path().join("ex52-p5.sweep.jsonl")).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let s = json(&dir.path().join("ex52-p5.sweep.summary.json"));
    assert_eq!(lines.len() as u64, s["total"].as_u64().unwrap());
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["index"].as_u64(), Some(i as u64));
    }
    let count = |k: &str| lines.iter().filter(|l| l[k] == true).count() as u64;
    for k in ["hom", "surj", "dppos", "ordp"] {
        assert_eq!(count(k), s[k].as_u64().unwrap(), "{k}");
    }
}

#[test]
fn interrupted_sweep_resumes_to_identical_output() {
    let full = tempfile::tempdir().unwrap();
    assert_eq!(code(&pgroup(&sweep_args(out_dir(&full), &[]))), 0);
    let reference = fs::read(full.path().join("ex52-p5.sweep.jsonl")).unwrap();

    // Simulate a crash after the checkpoint at tuple 1400: a marker for that
    // point plus a torn, partially written line.
    let part = tempfile::tempdir().unwrap();
    let data = part.path().join("ex52-p5.sweep.jsonl");
    let text = String::from_utf8(reference.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let kept = &lines[..1400];
    let mut body: String = kept.iter().map(|l| format!("{l}\n")).collect();
    let bytes = body.len();
    body.push_str("{\"index\":1400,\"tup");
    fs::write(&data, body).unwrap();
    let mut counts = serde_json::json!({"total": 1400, "hom": 0, "surj": 0, "dppos": 0, "ordp": 0, "written": 1400});
    for l in kept {
        let v: Value = serde_json::from_str(l).unwrap();
        for k in ["hom", "surj", "dppos", "ordp"] {
            if v[k] == true {
                counts[k] = (counts[k].as_u64().unwrap() + 1).into();
            }
        }
    }
    let marker = serde_json::json!({
        "params": {"entry": "ex52", "prime": 5, "start": 0, "end": 3000, "valid_only": false,
                   "fingerprint": false, "strategy": "counting", "format": "json"},
        "next": 1400, "bytes": bytes, "counts": counts, "complete": false
    });
    fs::write(part.path().join("ex52-p5.sweep.resume.json"), marker.to_string()).unwrap();

    assert_eq!(code(&pgroup(&sweep_args(out_dir(&part), &["--resume"]))), 0);
    assert_eq!(fs::read(&data).unwrap(), reference);
    assert_eq!(
        json(&part.path().join("ex52-p5.sweep.summary.json")),
        json(&full.path().join("ex52-p5.sweep.summary.json"))
    );

    // a marker from different parameters is refused
    let o = pgroup(&sweep_args(out_dir(&part), &["--resume", "--valid-only"]));
    assert_eq!(code(&o), 2);
}

#[test]
fn valid_only_csv_sweep_keeps_only_valid_rows() {
    let dir = tempfile::tempdir().unwrap();
    // 18750..18900 holds the four valid tuples with n1..n6 = 0,0,1,1,0,0
    let o = pgroup(&[
        "sweep", "ex52", "--start", "18750", "--end", "18900", "--valid-only", "--format", "csv", "--quiet", "--out",
        out_dir(&dir),
    ]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_path(dir.path().join("ex52-p5.sweep.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    let s = csv::Reader::from_path(dir.path().join("ex52-p5.sweep.summary.csv"))
        .unwrap()
        .records()
        .next()
        .unwrap()
        .unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.len().to_string(), s[8]);
    for row in &rows {
        assert_eq!(&row[5], "true");
        assert_eq!(&row[10], "1:25;5:24;25:24");
        assert_eq!(&row[7], "15625");
    }
}

#[test]
fn property_checks_report_their_outcome() {
    assert_eq!(code(&pgroup(&["check", "--lemma", "41", "--example", "ex52", "--quiet"])), 0);
    assert_eq!(code(&pgroup(&["check", "--theorem", "33", "--prime", "5", "--trials", "30", "--quiet"])), 0);
    // the literal power identity fails on class-3 groups; the report says why
    let o = pgroup(&["check", "--lemma", "32", "--trials", "100", "--seed", "7", "--quiet"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["report"]["seed"], 7);
    assert_eq!(v["report"]["corrected_violations_h_in_derived"], 0);
}
