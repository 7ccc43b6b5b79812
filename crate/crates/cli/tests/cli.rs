use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_meyerkit"))
}

fn scheme(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemes")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, out)
}

#[test]
fn generate_integer_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let (code, report, _) = run(&["generate", "--scheme", &scheme("z1.json"), "--box", "0..3", "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["points"], 4);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn generate_fibonacci_matches_float_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let (code, report, _) =
        run(&["generate", "--scheme", &scheme("fibonacci.json"), "--box", "0..100", "--out", csv.to_str().unwrap(), "--exact"]);
    assert_eq!(code, 0);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut expected = 0;
    for a in -100i64..=100 {
        for b in -100i64..=100 {
            let x = a as f64 + b as f64 * phi;
            let y = a as f64 + b as f64 * (1.0 - phi);
            // no boundary ties occur for this window and box apart from the origin
            if (-1e-12..=100.0).contains(&x) && y.abs() <= 1.0 {
                expected += 1;
            }
        }
    }
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count() - 1;
    assert_eq!(rows, expected);
    assert_eq!(report["results"]["points"], expected);
    let exact = csv.with_extension("csv.exact.json");
    assert!(exact.exists());
}

#[test]
fn rank_deficient_scheme_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name":"dup","sqrt":null,"physical_dim":1,"internal_dim":1,"basis":[[{"a":"1"},{"a":"2"}],[{"a":"1"},{"a":"2"}]]}"#).unwrap();
    let (code, report, _) = run(&["generate", "--scheme", path.to_str().unwrap(), "--box", "0..3"]);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["validation"]["lattice_full_rank"], false);
    assert_eq!(report["verified"], false);
}

#[test]
fn missing_scheme_file_is_usage_error() {
    let (code, _, out) = run(&["generate", "--scheme", "/nonexistent/s.json"]);
    assert_eq!(code, 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_all_on_fibonacci() {
    let (code, report, _) = run(&["verify", "--scheme", &scheme("fibonacci.json")]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["verified"], true);
    assert_eq!(report["results"]["cover"]["size"], 2);
    let gap = report["results"]["graph"]["gap"].as_f64().unwrap();
    assert!((gap - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn larger_window_shrinks_the_cube_gap() {
    let gap = |w: &str| {
        let (code, report, _) =
            run(&["verify", "--scheme", &scheme("fibonacci.json"), "--window", w, "--box", "-20..20", "--checks", "discrete3"]);
        assert_eq!(code, 0);
        report["results"]["discrete3"]["gap"].as_f64().unwrap()
    };
    let small = gap("1");
    let large = gap("2");
    assert!(large > 1e-9 && large < small);
}

#[test]
fn empty_patch_is_degenerate() {
    let (code, report, _) = run(&["verify", "--scheme", &scheme("fibonacci.json"), "--box", "1/10..1/5"]);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["degenerate"], true);
}

#[test]
fn unknown_check_is_usage_error() {
    let (code, _, _) = run(&["verify", "--scheme", &scheme("fibonacci.json"), "--checks", "bogus"]);
    assert_eq!(code, 1);
}

#[test]
fn qm_defect_and_cover() {
    let (code, report, _) = run(&["qm", "--word", "ab", "defect", "--radius", "4"]);
    assert_eq!(code, 0);
    assert!(report["results"]["defect"]["max_defect"].as_i64().unwrap() <= 3);

    let (code, report, _) = run(&["qm", "--word", "ab", "cover", "--R", "6", "--radius", "4"]);
    assert_eq!(code, 0);
    let cert = &report["results"]["cover"]["certificate"];
    assert_eq!(cert["verified"], true);
    assert!(cert["F"].as_array().unwrap().len() <= 6);
}

#[test]
fn qm_generator_pattern_warns() {
    let (code, report, _) = run(&["qm", "--word", "a", "defect", "--radius", "3"]);
    assert_eq!(code, 0);
    assert!(!report["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn qm_cover_below_defect_violates_hypothesis() {
    let (code, report, _) = run(&["qm", "--word", "ab", "cover", "--R", "3", "--radius", "3"]);
    assert_eq!(code, 2);
    assert!(report["results"]["hypothesis_violated"].is_string());
}

#[test]
fn bounds_values_and_domain() {
    let (code, report, _) = run(&["bounds", "--K", "1", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["massicot_wagner"]["n"], 0);
    let (code, report, _) = run(&["bounds", "--K", "2", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["massicot_wagner"]["n"], 6);
    let (code, _, _) = run(&["bounds", "--K", "0", "--m", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn help_and_bad_flags() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["--bogus"]).0, 1);
    assert_eq!(run(&[]).0, 1);
}

#[test]
fn report_file_and_digest_ignore_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (c1, _, _) = run(&["bounds", "--K", "3", "--m", "2", "--jobs", "1", "--report", a.to_str().unwrap()]);
    let (c2, _, _) = run(&["bounds", "--K", "3", "--m", "2", "--jobs", "4", "--report", b.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
