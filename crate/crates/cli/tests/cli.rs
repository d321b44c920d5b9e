use std::path::Path;
use std::process::{Command, Output};

use surflines::algebra::PrimeField;
use surflines::io::{parse_surface, render_census};
use surflines::lineenum::{Census, LineKind, LineRecord, LineSource};
use surflines::projgeom::LineP3;

fn surflines(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surflines"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// `x0^4 - x1^4` contains the plane `x0 = x1`; a fake census of 75 lines in
/// that plane, each claimed reduced, breaks the quartic line bound.
#[test]
fn over_count_fixture_fails_audit() {
    let f = PrimeField::new(13).unwrap();
    let text = "x0^4 - x1^4";
    let x = parse_surface(text, &f).unwrap();
    let mut records = vec![];
    'outer: for a in 1..13u64 {
        for b in 0..13u64 {
            // distinct lines joining (1, 1, b, 0) and (0, 0, 1, a)
            let p = [1, 1, b, 0];
            let q = [0, 0, 1, a];
            if let Ok(line) = LineP3::from_span(&f, &p, &q) {
                records.push(LineRecord {
                    line,
                    kind: LineKind::FirstKind,
                    flec_mult: Some(1),
                    source: LineSource::UserSupplied,
                });
            }
            if records.len() == 75 {
                break 'outer;
            }
        }
    }
    let census = Census::new(x, records).unwrap();
    assert_eq!(census.len(), 75);
    let dir = tempfile::tempdir().unwrap();
    let surface = write(dir.path(), "surface.txt", text);
    let census_path = write(dir.path(), "census.json", &render_census(&census, None));
    let out = surflines(&["audit", &surface, "--census", &census_path]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let surface = write(dir.path(), "bad.txt", "x0^4 + x4");
    let out = surflines(&["scan", &surface, "--field", "F13"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:8"));
}

#[test]
fn observed_count_above_bound_exits_with_two() {
    assert_eq!(
        surflines(&["bounds", "4", "--observed", "74"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        surflines(&["bounds", "4", "--observed", "75"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(surflines(&["bounds", "2"]).status.code(), Some(1));
}

#[test]
fn verify_rejects_lines_off_the_surface() {
    let dir = tempfile::tempdir().unwrap();
    let surface = write(dir.path(), "cubic.txt", "x0^3 + x1^3 + x2^3 + x3^3");
    let lines = write(
        dir.path(),
        "lines.txt",
        "1 -1 0 0 ; 0 0 1 -1\n1 0 0 0 ; 0 1 0 0\n",
    );
    let out = surflines(&["verify", &surface, "--lines", &lines, "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    let census: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(census["lines"].as_array().unwrap().len(), 1);
    assert_eq!(census["lines"][0]["source"], "user");
}

#[test]
fn scan_census_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let surface = write(dir.path(), "cubic.txt", "x0^3 + x1^3 + x2^3 + x3^3");
    let census = dir.path().join("census.json");
    let out = surflines(&[
        "scan",
        &surface,
        "--field",
        "F7",
        "--out",
        census.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = surflines(&["classify", &surface, "--census", census.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 27);
    assert!(lines.iter().all(|l| l["kind"] == "first"));
    // a tampered census is refused
    let text =
        std::fs::read_to_string(&census)
            .unwrap()
            .replacen("\"unclassified\"", "\"second\"", 1);
    let tampered = write(dir.path(), "tampered.json", &text);
    assert_eq!(
        surflines(&["classify", &surface, "--census", &tampered])
            .status
            .code(),
        Some(1)
    );
}
