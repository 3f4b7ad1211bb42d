use std::process::Command;

use qcoh::cli::{run, Format, KeyPart, Report, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn qcoh(args: &[&str]) -> (String, String, i32) {
    run(std::iter::once("qcoh").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Report {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let (out, err, code) = qcoh(&v);
    assert_eq!(code, EXIT_OK, "{err}");
    Report::parse_json(&out).unwrap()
}

fn value(r: &Report, key: &[i64]) -> Option<String> {
    let key: Vec<KeyPart> = key.iter().map(|&k| KeyPart::Int(k)).collect();
    r.rows.iter().find(|row| row.key == key).map(|row| row.value.clone())
}

#[test]
fn nd_rows() {
    let r = json(&["nd", "--dmax", "4"]);
    let rows: Vec<(Vec<KeyPart>, &str)> = r.rows.iter().map(|x| (x.key.clone(), x.value.as_str())).collect();
    let expected = [(1, "1"), (2, "1"), (3, "12"), (4, "620")];
    assert_eq!(rows.len(), 4);
    for ((k, v), (d, n)) in rows.iter().zip(expected) {
        assert_eq!(k, &vec![KeyPart::Int(d)]);
        assert_eq!(*v, n);
    }
    let one = json(&["nd", "--dmax", "1"]);
    assert_eq!(one.rows.len(), 1);
    let six = json(&["nd", "--dmax", "6"]);
    assert_eq!(six.rows.last().unwrap().value, "26312976");
    assert_eq!(six.command, "nd");
    assert_eq!(six.bounds["dmax"], 6);
}

#[test]
fn fano3_rows() {
    assert_eq!(value(&json(&["fano3", "--space", "q3", "--dmax", "2"]), &[6, 0]).unwrap(), "5");
    assert_eq!(value(&json(&["fano3", "--space", "p3", "--dmax", "2"]), &[8, 0]).unwrap(), "92");
    let q = json(&["fano3", "--space", "q3", "--dmax", "5"]);
    assert_eq!(value(&q, &[13, 1]).unwrap(), "3136284");
    assert!(q.checks.iter().all(|c| c.pass));
    let (_, err, code) = qcoh(&["fano3", "--space", "p4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("p4"));
}

#[test]
fn wdvv_count_rows() {
    let r = json(&["wdvv-count", "--mmax", "7"]);
    let got: Vec<&str> = r.rows.iter().map(|x| x.value.as_str()).collect();
    assert_eq!(got, ["1", "6", "21", "55", "120", "231"]);
    assert!(r.passed());
}

#[test]
fn verify_suites() {
    let w = json(&["verify", "--suite", "wdvv", "--model", "p2", "--dmax", "5"]);
    assert!(w.passed());
    assert_eq!(w.rows.len(), 1);
    let rings = json(&["verify", "--suite", "rings", "--model", "pr", "--r", "3"]);
    assert!(rings.passed());
    assert!(rings.checks.iter().any(|c| c.name == "P^3 T^4=q" && c.pass));
    let b = json(&["verify", "--suite", "boundary", "--model", "p2", "--dmax", "6"]);
    assert!(b.passed());
    assert_eq!(b.checks.len(), 5);
    let (_, _, code) = qcoh(&["verify", "--suite", "boundary", "--model", "q3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.json");
    let entries = r#"[{"beta":[1],"insertions":[0,2],"value":"1"},{"beta":[1],"insertions":[4,0],"value":"3"}]"#;
    std::fs::write(&seeds, entries).unwrap();
    let s = seeds.to_str().unwrap();
    let (out, _, code) = qcoh(&["verify", "--model", "p3", "--seeds", s, "--dmax", "1", "--suite", "wdvv"]);
    assert_eq!(code, EXIT_FAILED, "{out}");
    assert!(out.contains("FAIL table"));
    let (_, err, code) = qcoh(&["solve", "--model", "p3", "--seeds", s, "--c1max", "4"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(err.starts_with("error:"));
}

#[test]
fn solve_from_seed_file() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.json");
    std::fs::write(&seeds, r#"[{"beta":[1],"insertions":[2],"value":"1"}]"#).unwrap();
    let r = json(&["solve", "--model", "p2", "--seeds", seeds.to_str().unwrap(), "--c1max", "9"]);
    assert_eq!(value(&r, &[3, 8]).unwrap(), "12");
}

#[test]
fn model_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.json");
    let file = qcoh::model::FanoModel::builtin(qcoh::model::Builtin::P2).to_file();
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let r = json(&["solve", "--model-file", path.to_str().unwrap(), "--c1max", "12"]);
    assert_eq!(value(&r, &[4, 11]).unwrap(), "620");
    let (_, _, code) = qcoh(&["solve", "--model-file", "/nonexistent/model.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn qring_tables() {
    let r = json(&["qring", "--model", "p2"]);
    assert_eq!(value(&r, &[2, 2]).unwrap(), "(q)*T1");
    assert!(r.passed());
    let g = json(&["qring", "--grassmannian", "2,4"]);
    assert_eq!(g.rows.len(), 21);
    assert!(g.passed());
}

#[test]
fn usage_errors() {
    assert_eq!(qcoh(&["nd", "--dmax", "0"]).2, EXIT_USAGE);
    assert_eq!(qcoh(&["bogus"]).2, EXIT_USAGE);
    assert_eq!(qcoh(&["nd", "--format", "xml"]).2, EXIT_USAGE);
    assert_eq!(qcoh(&["solve", "--model", "p9x"]).2, EXIT_USAGE);
    assert_eq!(qcoh(&["--help"]).2, EXIT_OK);
}

#[test]
fn formats() {
    let (csv, _, _) = qcoh(&["nd", "--dmax", "3", "--format", "csv"]);
    assert_eq!(csv, "d,value\n1,1\n2,1\n3,12\n");
    let (text, _, _) = qcoh(&["nd", "--dmax", "2"]);
    assert!(text.contains("d=2: 1"));
    let r = json(&["fano3", "--space", "q3", "--dmax", "3"]);
    let again = Report::parse_json(&r.emit(Format::Json).unwrap()).unwrap();
    assert_eq!(again, r);
    let mut keys: Vec<_> = r.rows.iter().map(|x| x.key.clone()).collect();
    let sorted = {
        let mut k = keys.clone();
        k.sort();
        k
    };
    assert_eq!(keys, sorted);
    keys.dedup();
    assert_eq!(keys.len(), r.rows.len());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qcoh");
    let ok = Command::new(bin).args(["nd", "--dmax", "5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("d=5: 87304"));
    let bad = Command::new(bin).args(["nd", "--dmax", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
