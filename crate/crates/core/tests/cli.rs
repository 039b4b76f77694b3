use std::path::PathBuf;
use std::process::{Command, Output};

use matlift::catalog::{self, cycle_matroid, Multigraph};
use matlift::BinaryMatroid;

fn matlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matlift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matlift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_catalog_name() {
    let o = matlift(&["classify", "F7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rank\t3"));
    assert!(out.contains("graphic\tfalse"));
    assert!(out.contains("eulerian\ttrue"));
}

#[test]
fn classify_graphic_matroid() {
    let out = stdout(&matlift(&["classify", "M(K5)"]));
    assert!(out.contains("graphic\ttrue"));
    assert!(out.contains("cographic\tfalse"));
    assert!(out.contains("cographic-obstruction\tM(K5)"));
}

#[test]
fn split_prints_a_matroid_file() {
    let m = catalog::named("M(K33)").unwrap();
    let set = format!("{},{}", m.label(0), m.label(1));
    let o = matlift(&["split", "M(K33)", "--set", &set]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let body: String = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let s = BinaryMatroid::parse(&body).unwrap();
    assert_eq!(s.len(), 9);
    assert_eq!(s.rank(), 6);
    assert!(out.contains("# graphic:"));
}

#[test]
fn split_with_unknown_label_is_a_usage_error() {
    let o = matlift(&["split", "F7", "--set", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minor_found_and_not_found() {
    let o = matlift(&["minor", "M*(K5)", "--target", "M(Q1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("minor M(Q1) found"));

    let o = matlift(&["minor", "M*(K33)", "--target", "M(Q2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no minor"));
}

#[test]
fn quotients_of_f7_star() {
    let o = matlift(&["quotients", "F7*", "--dedupe", "--graphic-only"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("M(Q1)"));
    assert!(out.contains("M(Q2)"));
    assert!(!out.contains("false"));
}

#[test]
fn verify_tsv_and_exit_status() {
    let o = matlift(&["verify", "lemma:qF7", "--tsv", "--replay"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("lemma:qF7\tpass\t"));

    let o = matlift(&["verify", "gate:e", "--tsv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("gate:e\tfail\t"));
}

#[test]
fn verify_rejects_oversized_corpus() {
    let o = matlift(&["verify", "remark:C1", "--max-edges", "11"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(matlift(&["bogus"]).status.code(), Some(2));
    assert_eq!(matlift(&["classify"]).status.code(), Some(2));
    assert_eq!(
        matlift(&["verify", "no-such-statement"]).status.code(),
        Some(2)
    );
    assert_eq!(
        matlift(&["classify", "no-such-matroid"]).status.code(),
        Some(2)
    );
}

#[test]
fn parse_errors_exit_2() {
    let path = scratch_file("broken.matroid", "X 2 3\na b c\n101\n");
    let o = matlift(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn list_shows_statements_and_catalog() {
    let out = stdout(&matlift(&["list"]));
    assert!(out.contains("theorem:C3-sufficiency"));
    assert!(out.contains("M*(K33)"));
}

#[test]
fn files_round_trip_through_the_cli() {
    let m = catalog::named("M*(K33)").unwrap();
    let path = scratch_file("k33star.matroid", &m.to_text());
    assert_eq!(
        BinaryMatroid::parse(&std::fs::read_to_string(&path).unwrap())
            .unwrap()
            .to_text(),
        m.to_text()
    );
    let out = stdout(&matlift(&["classify", path.to_str().unwrap()]));
    assert!(out.contains("rank\t4"));
    assert!(out.contains("graphic\tfalse"));
    assert!(out.contains("cographic\ttrue"));

    let g = Multigraph::complete(4);
    assert_eq!(
        Multigraph::parse(&g.to_text()).unwrap().to_text(),
        g.to_text()
    );
    let path = scratch_file("k4.graph", &g.to_text());
    let out = stdout(&matlift(&["classify", path.to_str().unwrap()]));
    assert!(out.contains(&format!("rank\t{}", cycle_matroid(&g).rank())));
    assert!(out.contains("graphic\ttrue"));
    assert!(out.contains("cographic\ttrue"));
}
