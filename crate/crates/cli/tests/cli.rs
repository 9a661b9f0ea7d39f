use std::path::PathBuf;
use std::process::{Command, Output};

use colourmodels::corpus;
use colourmodels_cli::{Check, GraphFile};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.g"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colourmodels")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn on(name: &str, args: &[&str]) -> Output {
    let path = fixture(name);
    let mut all = vec!["--graph", path.to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

#[test]
fn fixtures_match_the_corpus() {
    for f in corpus::fixtures() {
        let text = std::fs::read_to_string(fixture(f.name)).unwrap();
        let parsed = GraphFile::parse(&text).unwrap();
        assert_eq!(parsed, GraphFile::new(f.graph, f.pfaffian_compatible), "{}", f.name);
        assert_eq!(parsed.serialize(), text, "{}", f.name);
    }
}

#[test]
fn counts_flows_and_colourings() {
    let out = on("k4", &["flow", "--q", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "6");
    assert_eq!(stdout(&on("k4", &["chromatic", "--q", "4"])).trim(), "24");
    assert_eq!(stdout(&on("petersen", &["flow", "--q", "4"])).trim(), "0");
    assert_eq!(stdout(&on("theta", &["tutte"])).trim(), "x + y^2 + y");
}

#[test]
fn sine_model_reports_the_edge_colouring_count() {
    let out = on("prism", &["sine-model", "--q", "5", "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "magnitude 6.0"), "{}", stdout(&out));
    let out = on("k4", &["kplus1", "--k", "3"]);
    assert!(stdout(&out).lines().any(|l| l == "magnitude 6.0"), "{}", stdout(&out));
}

#[test]
fn xq_routes_agree() {
    let out = on("theta", &["xq", "--q", "3", "--s", "1,2,3", "--t", "1,i,i"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value 14.0-22.0i"), "{text}");
    assert!(text.contains("edge_model 14.0-22.0i"), "{text}");
    let out = on("theta", &["xq", "--group", "f4", "--s", "1,2,3,4", "--t", "1,0.5,0.5,0.5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_emits_passing_jsonl() {
    let out = on("theta", &["verify", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let checks: Vec<Check> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c.pass));
    assert!(checks.iter().any(|c| c.anchor == "macwilliams"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 failed"));
}

#[test]
fn failing_checks_exit_with_one() {
    let out = on("theta", &["--tol=-1", "verify", "--suite", "fourier", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g");
    std::fs::write(&path, "vertices 3\nedge 0 1\nedge 1 5\n").unwrap();
    let out = run(&["--graph", path.to_str().unwrap(), "tutte"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn oversized_sums_report_the_estimate() {
    let out = on("petersen", &["--max-terms", "1000", "sine-model", "--q", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1000"), "{err}");
}

#[test]
fn written_files_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prism.g");
    let f = GraphFile::new(corpus::prism(), true);
    std::fs::write(&path, f.serialize()).unwrap();
    assert_eq!(GraphFile::read(&path).unwrap(), f);
    let out = run(&["--graph", path.to_str().unwrap(), "flow", "--q", "3"]);
    assert_eq!(stdout(&out).trim(), "0");
}
