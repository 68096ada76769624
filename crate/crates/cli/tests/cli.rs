use std::path::Path;
use std::process::{Command, Output};

fn thinhom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinhom")).args(args).current_dir(dir).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_writes_family_files() {
    let dir = tempfile::tempdir().unwrap();
    for (desc, header, lines) in [("C:5", "graph 5", 5), ("K:4", "graph 4", 6), ("TT:4", "digraph 4", 6)] {
        let o = thinhom(&["gen", desc, "-o", "out.g"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{desc}");
        let text = std::fs::read_to_string(dir.path().join("out.g")).unwrap();
        let mut it = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        assert_eq!(it.next(), Some(header), "{desc}");
        assert_eq!(it.count(), lines, "{desc}");
    }
}

#[test]
fn gamma_t3_of_c5_is_k5() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(thinhom(&["gen", "C:5", "-o", "c5.g"], dir.path()).status.code(), Some(0));
    let o = thinhom(&["apply", "gamma:T3", "c5.g", "-o", "k5.g"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 vertices, 10 edges"));
    assert!(dir.path().join("k5.g.labels").exists());
    let o = thinhom(&["hom-eq", "k5.g", "K:5"], dir.path());
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
}

#[test]
fn invariants_of_c5() {
    let dir = tempfile::tempdir().unwrap();
    let o = thinhom(&["invariants", "C:5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["chi: 3", "chi_c: 5/2", "odd girth: 5", "core size: 5"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in {out}");
    }
}

#[test]
fn hom_exit_codes_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let o = thinhom(&["hom", "K:4", "K:3"], dir.path());
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "NONE"));

    let o = thinhom(&["hom", "C:5", "K:3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let witness = out.lines().find_map(|l| l.strip_prefix("witness: ")).expect("witness line");
    let o = thinhom(&["hom", "C:5", "K:3", "--check-witness", witness], dir.path());
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "VALID"));

    let o = thinhom(&["hom", "C:5", "K:3", "--check-witness", "0 0 0 1 2"], dir.path());
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "INVALID"));
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["gen", "Q:3"][..], &["apply", "gamma:T4", "C:5"], &["hom", "missing.g", "K:3"], &["frobnicate"]] {
        assert_eq!(thinhom(args, dir.path()).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = thinhom(&["verify", "adjunction:T3", "--graphs", "--max-n", "4", "-o", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PASS"));
    let json = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    let doc = thinhom::verify::ReportDocument::from_json(&json).unwrap();
    assert_eq!(doc.header.get("suite").map(String::as_str), Some("adjunction:T3"));
    assert!(doc.header.contains_key("seed"));
    assert!(doc.all_conform());
    assert_eq!(doc.reports[0].violations, 0);
    assert_eq!(doc.reports[0].checked, 5625);
}

#[test]
fn verify_exits_one_on_a_false_law() {
    let dir = tempfile::tempdir().unwrap();
    let o = thinhom(&["verify", "arc"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL arc-graph :: chi(S(n,2)) = min"));
}
