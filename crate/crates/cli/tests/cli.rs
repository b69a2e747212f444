use std::process::{Command, Output};

use ellsurf_cli::document::TripleDocument;
use ellsurf_cli::report::{ReportDocument, TopologyDoc};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn ellsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellsurf")).args(args).output().expect("runs")
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ellsurf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(ellsurf(&["validate", &data("w1.json")]).status.code(), Some(0));
    let bad = ellsurf(&["validate", &data("nonminimal.json")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("u=0"), "{}", stderr(&bad));
    let parse = ellsurf(&["validate", &data("bad_rational.json")]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(stderr(&parse).contains("parse error"));
    assert_eq!(ellsurf(&["validate", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn report_w1() {
    let text = ellsurf(&["report", &data("w1.json"), "--text"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("h0 = 1, h1 = 2"));
    assert!(stdout(&text).contains("V2 (Klein bottle)"));

    let json = ellsurf(&["report", &data("w1.json"), "--json"]);
    let r = ReportDocument::from_json(&stdout(&json)).unwrap();
    assert_eq!(r.euler_sum, 12);
    assert_eq!(r.fibers.iter().filter(|f| f.real_type.as_deref() == Some("I1+")).count(), 6);
    match r.topology {
        TopologyDoc::Computed { h0, h1, ref components, .. } => {
            assert_eq!((h0, h1), (1, 2));
            assert_eq!(components, &["V2"]);
        }
        _ => panic!("W1 is real-generic"),
    }
    assert!(!stdout(&json).contains('.'), "exact rationals only");
}

#[test]
fn report_refuses_non_nodal_fibers_without_failing() {
    let o = ellsurf(&["report", &data("two_i0star.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("I0*").count(), 2);
    assert!(stdout(&o).contains("refused: non-nodal real fibers at 0, ∞"));
    let json = stdout(&ellsurf(&["report", &data("two_i0star.json"), "--json"]));
    let r = ReportDocument::from_json(&json).unwrap();
    assert!(matches!(r.topology, TopologyDoc::NotRealGeneric { ref offenders } if offenders.len() == 2));
}

#[test]
fn report_without_real_singular_fibers() {
    let o = stdout(&ellsurf(&["report", &data("no_real_fibers.json")]));
    assert!(o.contains("no real singular fibers; 1 component; Klein bottle; see caveat"), "{o}");
}

#[test]
fn twist_twice_is_normalized_input() {
    let once = ellsurf(&["transform", &data("w1.json"), "--twist", "--verify"]);
    assert_eq!(once.status.code(), Some(0), "{}", stderr(&once));
    let path = tmp("twisted.json", &stdout(&once));
    let twice = ellsurf(&["transform", &path, "--twist"]);
    let w1 = TripleDocument::read(&data("w1.json")).unwrap().to_triple().unwrap().normalize();
    assert_eq!(TripleDocument::from_json(&stdout(&twice)).unwrap(), TripleDocument::from_triple(&w1));
}

#[test]
fn i0star_transform() {
    let o = ellsurf(&["transform", &data("w1.json"), "--i0star", "4", "5", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("all checks passed"));
    assert_eq!(TripleDocument::from_json(&stdout(&o)).unwrap().k, 2);
    let negative = ellsurf(&["transform", &data("w1.json"), "--i0star", "-1/2", "5/2", "--verify"]);
    assert_eq!(negative.status.code(), Some(0), "{}", stderr(&negative));
    assert_eq!(ellsurf(&["transform", &data("w1.json"), "--i0star", "1", "1"]).status.code(), Some(2));
    // 1 is a node of W1
    assert_eq!(ellsurf(&["transform", &data("w1.json"), "--i0star", "1", "7"]).status.code(), Some(2));
}

#[test]
fn fuzz_runs_and_is_deterministic() {
    let args = ["fuzz", "--k", "1", "--trials", "30", "--seed", "7"];
    let a = ellsurf(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains("violations: 0"));
    let b = Command::new(env!("CARGO_BIN_EXE_ellsurf")).args(args).env("ELLSURF_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let empty = ellsurf(&["fuzz", "--k", "1", "--trials", "0", "--seed", "7"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("violations: 0"));
}

#[test]
fn search_commands() {
    let rejected = ellsurf(&["search", "--k", "1", "--components", "6"]);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(stderr(&rejected).contains("5k = 5"));

    let two = ellsurf(&["search", "--k", "1", "--components", "2", "--seed", "3"]);
    assert_eq!(two.status.code(), Some(0), "{}", stderr(&two));
    let path = tmp("two.json", &stdout(&two));
    let r = ReportDocument::from_json(&stdout(&ellsurf(&["report", &path, "--json"]))).unwrap();
    assert!(matches!(r.topology, TopologyDoc::Computed { h0: 2, .. }));
    let check = ellsurf(&["oracle-check", &path]);
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout(&check).starts_with("agree: h0=2"));

    let none = ellsurf(&["search", "--k", "2", "--components", "10", "--budget", "5"]);
    assert_eq!(none.status.code(), Some(3));
}

#[test]
fn oracle_check_refuses_non_generic() {
    assert_eq!(ellsurf(&["oracle-check", &data("two_i0star.json")]).status.code(), Some(2));
    assert_eq!(ellsurf(&["oracle-check", &data("w1.json")]).status.code(), Some(0));
}
