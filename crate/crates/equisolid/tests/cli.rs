//! End-to-end checks of the command-line interface: exit codes, JSON shape,
//! determinism of the catalog report, and cache behavior.

use std::process::Command;

fn equisolid() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equisolid"))
}

fn run(args: &[&str], cache_dir: &std::path::Path) -> (String, String, i32) {
    let out = equisolid()
        .args(args)
        .env("EQUISOLID_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn classify_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    // solid and not-solid both exit 0
    let (stdout, _, code) = run(&["classify", "--entry", "p1p1/Z2sqZ4-trh"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("\"verdict\": \"G-solid\""));
    let (stdout, _, code) = run(&["classify", "--entry", "p1p1/D4-rs"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("\"verdict\": \"not G-solid\""));
    // not minimal exits 2
    let (stdout, _, code) = run(&["classify", "--entry", "dp5/Z4"], tmp.path());
    assert_eq!(code, 2);
    assert!(stdout.contains("\"verdict\": \"not minimal\""));
    // errors exit 1
    let (_, stderr, code) = run(&["classify", "--entry", "no/such-entry"], tmp.path());
    assert_eq!(code, 1);
    assert!(stderr.contains("error"));
}

#[test]
fn classify_from_file_and_parse_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = tmp.path().join("r.spec");
    std::fs::write(
        &spec,
        "name = demo/Z4-r\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&["classify", spec.to_str().unwrap()], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("equisolid-report/1"));
    assert!(stdout.contains("not G-solid"));

    let bad = tmp.path().join("bad.spec");
    std::fs::write(&bad, "surface = P1xP1\ngen = [[z5^^,0],[0,1]] ; [[1,0],[0,1]]\n").unwrap();
    let (_, stderr, code) = run(&["classify", bad.to_str().unwrap()], tmp.path());
    assert_eq!(code, 1);
    assert!(stderr.contains("line 2"), "position-annotated error: {stderr}");
}

#[test]
fn catalog_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let (first, _, code) = run(&["catalog", "--no-cache"], tmp.path());
    assert_eq!(code, 0);
    let (second, _, code) = run(&["catalog", "--no-cache"], tmp.path());
    assert_eq!(code, 0);
    assert_eq!(first, second, "catalog output must be byte-identical");
    // and the cached path reproduces the same bytes
    let (third, _, _) = run(&["catalog"], tmp.path());
    let (fourth, _, _) = run(&["catalog"], tmp.path());
    assert_eq!(first, third);
    assert_eq!(third, fourth);
}

#[test]
fn identify_and_goursat_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let (stdout, _, code) = run(&["identify", "--entry", "p1p1/contrex"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("\"order\": 16"));
    assert!(stdout.contains("Z2^2:Z4"));
    assert!(stdout.contains("\"has_d4_subgroup\": false"));

    let (stdout, _, code) = run(&["goursat", "--entry", "p1p1/contrex-ext"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("\"reconstruction_ok\": true"));

    let (stdout, _, code) = run(
        &["orbits", "--entry", "p1p1/D4-r-negs", "--max-length", "2"],
        tmp.path(),
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("\"realized_lengths\""));

    let (stdout, _, code) = run(&["fixed-points", "--entry", "dp6/D6-rs"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("(1:1:1)x(1:1:1)"));

    let (stdout, _, code) = run(&["links", "--entry", "p2/S4"], tmp.path());
    assert_eq!(code, 0);
    assert!(stdout.contains("\"link_type\": \"I\""));
}
