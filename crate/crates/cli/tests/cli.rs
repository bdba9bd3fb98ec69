//! End-to-end behaviour of the command-line front end.

use std::fs;

use sumset_cli::{run, Envelope, Report, EXIT_OK, EXIT_USAGE};
use sumset_cli::report::ClassifyOutcome;

fn ok(args: &[&str]) -> Envelope {
    let mut argv = vec!["sumset"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.status, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid report json")
}

fn roundtrip(env: &Envelope) {
    let text = serde_json::to_string(env).unwrap();
    let back: Envelope = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, env);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["sumset", "frobnicate"]).status, EXIT_USAGE);
    assert_eq!(run(["sumset", "bounds", "--group", "Z7"]).status, EXIT_USAGE);
    assert_eq!(run(["sumset", "constants", "--group", "Z0"]).status, EXIT_USAGE);
    assert_eq!(run(["sumset", "reproduce", "no-such-example"]).status, EXIT_USAGE);
    let help = run(["sumset", "--help"]);
    assert_eq!(help.status, EXIT_OK);
    assert!(help.stdout.contains("survey"));
}

#[test]
fn every_report_kind_roundtrips() {
    let cases: &[&[&str]] = &[
        &["reproduce", "ex1"],
        &["reproduce", "noncoset_s"],
        &["construct", "--group", "Z15", "--b", "5", "--k", "1", "--l", "1"],
        &["classify", "--group", "Z15", "--a", "0,2,5,7,12", "--b", "0,1,2,4,5,6,7,9,11,12,14", "--s", "0"],
        &["bounds", "--group", "Z7", "--a", "0,1,2", "--b", "0,1,2,3,4", "--s", "0"],
        &["survey", "--group", "Z6", "--s-size", "1"],
        &["survey", "--max-order", "6", "--mode", "random", "--samples", "50", "--seed", "3"],
        &["kneser", "--group", "Z2xZ4", "--a", "(0,0),(1,0)", "--b", "(0,1),(0,3)"],
        &["constants", "--group", "Z4xZ6", "--s", "(0,0),(1,2)", "--method", "brute"],
    ];
    for args in cases {
        roundtrip(&ok(args));
    }
}

#[test]
fn table_format_renders_text() {
    let out = run(["sumset", "--format", "table", "constants", "--group", "Z12"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("L(G) = "));
    assert!(serde_json::from_str::<serde_json::Value>(&out.stdout).is_err());
}

#[test]
fn non_critical_file_input_is_reported_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triple.json");
    fs::write(&path, r#"{"group":"Z7","a":[0,1],"b":[0,1,2],"s":[0]}"#).unwrap();
    let env = ok(&["classify", "--input", path.to_str().unwrap()]);
    let Report::Classify(r) = env.report else { panic!("wrong report kind") };
    assert_eq!(r.outcome, ClassifyOutcome::NotCritical);
    assert!(r.witness.is_none());
}

fn constructed(args: &[&str]) -> sumset_core::TripleRecord {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let Report::Construct(c) = ok(&full).report else { panic!("wrong report kind") };
    c.triple
}

#[test]
fn classify_recipe_rebuilds_the_triple() {
    let triples = [
        sumset_core::TripleRecord {
            group: "Z15".into(),
            a: vec![0, 2, 5, 7, 12],
            b: vec![0, 1, 2, 4, 5, 6, 7, 9, 11, 12, 14],
            s: vec![0],
        },
        constructed(&["--group", "Z45", "--sigma", "<15>", "--b", "5", "--k", "1", "--l", "1"]),
        constructed(&["--group", "Z21", "--b", "7", "--k", "1", "--l", "2"]),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (i, triple) in triples.iter().enumerate() {
        let input = dir.path().join(format!("triple{i}.json"));
        fs::write(&input, serde_json::to_string(triple).unwrap()).unwrap();
        let Report::Classify(r) = ok(&["classify", "--input", input.to_str().unwrap()]).report else {
            panic!("wrong report kind")
        };
        assert_eq!(r.outcome, ClassifyOutcome::Critical, "{}", triple.group);
        let recipe = dir.path().join(format!("recipe{i}.json"));
        fs::write(&recipe, serde_json::to_string(&r.witness.unwrap().recipe).unwrap()).unwrap();
        assert_eq!(constructed(&["--input", recipe.to_str().unwrap()]), *triple, "{}", triple.group);
    }
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(["sumset", "--output", path.to_str().unwrap(), "reproduce", "ex2"]);
    assert_eq!(out.status, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    assert_eq!(out.output.as_deref(), Some(path.as_path()));
    let env: Envelope = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env.schema_version, 1);
    assert!(matches!(env.report, Report::Reproduce(ref r) if r.matches));
}

#[test]
fn survey_is_independent_of_thread_count() {
    let base = ["survey", "--max-order", "8", "--mode", "random", "--samples", "200", "--seed", "11"];
    let one = ok(&[&base[..], &["--jobs", "1"]].concat());
    let four = ok(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
}
