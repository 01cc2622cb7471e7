use std::path::Path;
use std::process::{Command, Output};

use chdiag::DiagramRecord;

const SPHERE_AND_P2: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], \
                         X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";

fn chd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chd"))
        .args(args)
        .env("CHD_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shadows_table() {
    let o = chd(&["shadows", "--n", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n\tS\n2\t1\n3\t1\n4\t2\n5\t3\n6\t9\n7\t18\n");
}

#[test]
fn enumerate_then_tables_and_dedup() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n7.jsonl");
    let o = chd(&["enumerate", "--n", "7", "--out", path(&file)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("S=18 diagrams=74880"));

    let text = std::fs::read_to_string(&file).unwrap();
    let records: Vec<DiagramRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 16);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec!["epd", "n", "m", "admissible", "hard", "components", "euler", "orientable", "name", "gons"];
    want.sort_unstable();
    let mut keys = keys;
    keys.sort_unstable();
    assert_eq!(keys, want);

    let o = chd(&["tables", "--in", path(&file)]);
    assert!(o.status.success());
    // cells without any record are blank: a records file cannot tell zero from not run
    let row = stdout(&o).lines().find(|l| l.starts_with('7')).unwrap().to_string();
    let cells: Vec<&str> = row.split('\t').collect();
    assert_eq!(cells, ["7", "", "", "2", "", "6", "3", "5", ""]);

    let o = chd(&["dedup", "--in", path(&file)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("7\t4\t6\t6"));
}

#[test]
fn tampered_record_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n4.jsonl");
    assert!(chd(&["enumerate", "--n", "4", "--out", path(&file)]).status.success());
    let text = std::fs::read_to_string(&file).unwrap().replace("\"euler\":0", "\"euler\":2");
    std::fs::write(&file, text).unwrap();
    assert_eq!(chd(&["tables", "--in", path(&file)]).status.code(), Some(1));
}

#[test]
fn classify_example() {
    let o = chd(&["classify", "--epd", SPHERE_AND_P2, "--index", "1"]);
    assert!(o.status.success());
    let r: DiagramRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(r.admissible && r.hard && !r.orientable);
    assert_eq!((r.components, r.euler), (2, 3));
    assert_eq!(r.name, "10^{2,3,Non}_{1,1}");
}

#[test]
fn bad_code_is_an_error() {
    assert_eq!(chd(&["classify", "--epd", "X[1,2,3"]).status.code(), Some(2));
}

#[test]
fn gen_genus_and_render() {
    let o = chd(&["gen-genus", "--k", "2"]);
    assert!(o.status.success());
    let r: DiagramRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((r.n, r.m, r.euler), (8, 8, -4));

    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d.svg");
    assert!(chd(&["render", "--epd", &r.epd, "--out", path(&svg)]).status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"marked\"").count(), 8);
}
