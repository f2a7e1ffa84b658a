use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use simplex_ramsey::exactgeom::{circumcenter_barycentric, SquaredDistanceMatrix};
use simplex_ramsey::Rational;

const TETRA: &str =
    r#"{"sqdist": [["0","7","4","7"],["7","0","4","4"],["4","4","0","4"],["7","4","4","0"]]}"#;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simplex-ramsey"));
    cmd.env_remove("SIMPLEX_RAMSEY_MAX_N")
        .env_remove("SIMPLEX_RAMSEY_COLOR_CAP");
    cmd
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simplex-ramsey-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn check_tetrahedron() {
    let out = run_stdin(&["check"], TETRA);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "DIAMETER_RAMSEY");
    assert_eq!(v["in_hull"], false);
    assert_eq!(
        strings(&v["circumcenter"]["lambdas"]),
        ["20/47", "14/47", "-1/47", "14/47"]
    );
    assert_eq!(v["diameter_pairs"], serde_json::json!([[1, 2], [1, 4]]));
}

#[test]
fn check_from_file_matches_stdin() {
    let path = tmp("tetra.json", TETRA);
    let from_file = run(&["check", path.to_str().unwrap()]);
    let from_stdin = run_stdin(&["check", "-"], TETRA);
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn check_flat_triangle_is_obstructed() {
    // legs² 13/50 under a base of length 1
    let rows = [
        ["0", "13/50", "13/50"],
        ["13/50", "0", "1"],
        ["13/50", "1", "0"],
    ];
    let m = SquaredDistanceMatrix::new(
        rows.iter()
            .map(|row| row.iter().map(|x| x.parse().unwrap()).collect())
            .collect(),
    )
    .unwrap();
    let rho_sq = circumcenter_barycentric(&m).unwrap().rho_sq();
    assert_eq!(rho_sq, Rational::new(169, 100));
    assert!(rho_sq > Rational::new(1, 2));

    let input = serde_json::json!({ "sqdist": rows }).to_string();
    let out = run_stdin(&["check"], &input);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "NOT_DIAMETER_RAMSEY");
    assert_eq!(v["cf_obstructed"], true);
    assert_eq!(v["circumcenter"]["rho_sq"], "169/100");
}

#[test]
fn check_regular_simplex() {
    let input = r#"{"points": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
    let out = run_stdin(&["check"], input);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "DIAMETER_RAMSEY");
    assert_eq!(v["in_hull"], true);
    assert_eq!(v["pairwise"]["holds"], true);
}

#[test]
fn check_human_names_the_criterion() {
    let out = run_stdin(&["check", "--human"], TETRA);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("higher-order deficit decomposition"),
        "{text}"
    );
    assert!(text.contains("(20/47, 14/47, -1/47, 14/47)"));
}

#[test]
fn check_exit_codes() {
    let collinear = r#"{"points": [["0","0"],["1","1"],["2","2"]]}"#;
    assert_eq!(run_stdin(&["check"], collinear).status.code(), Some(2));
    let float = r#"{"sqdist": [[0, 1.5], [1.5, 0]]}"#;
    assert_eq!(run_stdin(&["check"], float).status.code(), Some(1));
    let irrational = r#"{"sqdist": [["0","sqrt(2)"],["sqrt(2)","0"]]}"#;
    assert_eq!(run_stdin(&["check"], irrational).status.code(), Some(1));
    let both = r#"{"points": [["0"]], "sqdist": [["0"]]}"#;
    assert_eq!(run_stdin(&["check"], both).status.code(), Some(1));
    let duplicate = r#"{"points": [["0","1"],["0","1"],["2","2"]]}"#;
    assert_eq!(run_stdin(&["check"], duplicate).status.code(), Some(1));
    assert_eq!(
        run(&["check", "/nonexistent/input.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_undecided_when_search_is_capped() {
    let out = bin()
        .args(["check"])
        .env("SIMPLEX_RAMSEY_MAX_N", "3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(TETRA.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["verdict"], "UNKNOWN");
    assert!(v["decomposition_skipped"].is_string());
}

#[test]
fn family_examples() {
    let v = json(&run(&[
        "family", "-d", "3", "-s", "1", "-t", "3", "-u", "3",
    ]));
    assert_eq!(v["verdict"], "CONJECTURE_COUNTEREXAMPLE");
    assert_eq!(
        strings(&v["solver_lambdas"]),
        ["20/47", "14/47", "-1/47", "14/47"]
    );

    let v = json(&run(&[
        "family", "-d", "5", "-s", "1", "-t", "3", "-u", "3",
    ]));
    assert_eq!(v["lambda_3"], "-5/39");

    let v = json(&run(&[
        "family", "-d", "3", "-s", "5", "-t", "1", "-u", "1",
    ]));
    assert_eq!(v["verdict"], "CRITERION_ONLY");
    assert_eq!(v["outside"], false);

    let v = json(&run(&[
        "family", "-d", "4", "-s", "1/2", "-t", "3", "-u", "0.5",
    ]));
    assert_eq!(v["decomposition_verified"], true);
}

#[test]
fn family_rejects_bad_params() {
    for args in [
        ["-d", "2", "-s", "1", "-t", "1", "-u", "1"],
        ["-d", "3", "-s", "0", "-t", "1", "-u", "1"],
        ["-d", "3", "-s", "-1", "-t", "1", "-u", "1"],
        ["-d", "3", "-s", "x", "-t", "1", "-u", "1"],
    ] {
        let mut full = vec!["family"];
        full.extend(args);
        assert_eq!(run(&full).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn family_human() {
    let out = run(&[
        "family", "-d", "3", "-s", "1", "-t", "3", "-u", "3", "--human",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("counterexample"));
    assert!(text.contains("λ₃ = -1/47"));
}

#[test]
fn decompose_round_trips_through_verify() {
    let simplex = tmp("tetra-verify.json", TETRA);
    let out = run(&["decompose", simplex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["reserve"], "1");
    assert_eq!(cert["masses"][0]["B"], serde_json::json!([1, 3]));
    assert_eq!(cert["masses"][1]["alpha"], "3");

    let cert_path = tmp("tetra-cert.json", &String::from_utf8(out.stdout).unwrap());
    let verified = run(&[
        "verify",
        simplex.to_str().unwrap(),
        "--certificate",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(verified.status.code(), Some(0));
    assert_eq!(json(&verified)["valid"], true);

    let mut tampered = cert.clone();
    tampered["reserve"] = "2".into();
    let bad_path = tmp("tetra-bad.json", &tampered.to_string());
    let rejected = run(&[
        "verify",
        simplex.to_str().unwrap(),
        "--certificate",
        bad_path.to_str().unwrap(),
    ]);
    assert_eq!(rejected.status.code(), Some(3));
    assert_eq!(json(&rejected)["valid"], false);
}

#[test]
fn decompose_and_embed_infeasible() {
    let rows = [
        ["0", "13/50", "13/50"],
        ["13/50", "0", "1"],
        ["13/50", "1", "0"],
    ];
    let input = serde_json::json!({ "sqdist": rows }).to_string();
    for cmd in ["decompose", "embed"] {
        let out = run_stdin(&[cmd], &input);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
        assert_eq!(json(&out)["result"], "infeasible");
    }
}

#[test]
fn embed_with_realization() {
    let out = run_stdin(&["embed", "--realize", "1e-9"], TETRA);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sides: Vec<&str> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["side_sq"].as_str().unwrap())
        .collect();
    assert_eq!(sides, ["1", "3", "3"]);
    assert_eq!(v["product_diam_sq"], "7");
    assert_eq!(v["derived_sqdist"][0][1], "7");
    let coords = v["coordinates"].as_array().unwrap();
    assert_eq!(coords.len(), 4);
    let point = |i: usize| -> Vec<f64> {
        coords[i]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect()
    };
    let d01: f64 = point(0)
        .iter()
        .zip(point(1))
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    assert!((d01 - 7.0).abs() < 1e-9);
    assert!(v["max_relative_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(
        run_stdin(&["embed", "--realize", "-1"], TETRA)
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn ramsey_toy() {
    let witness = tmp(
        "pigeon.json",
        r#"{"pigeonhole": {"k": 1, "q": 3, "side_sq": "1"}}"#,
    );
    let segment = tmp(
        "segment.json",
        r#"{"regular_simplex": {"k": 1, "side_sq": "1"}}"#,
    );
    let triangle = tmp(
        "triangle.json",
        r#"{"regular_simplex": {"k": 2, "side_sq": "1"}}"#,
    );
    let p = |x: &PathBuf| x.to_str().unwrap().to_owned();

    let out = run(&["ramsey-toy", &p(&witness), &p(&segment), "-q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "HOLDS");

    let out = run(&["ramsey-toy", &p(&triangle), &p(&triangle), "-q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "FAILS");
    assert_eq!(v["witness_coloring"], serde_json::json!([0, 0, 1]));

    let out = run(&[
        "ramsey-toy",
        &p(&witness),
        &p(&segment),
        "-q",
        "3",
        "--cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "INFEASIBLE");

    let out = bin()
        .args(["ramsey-toy", &p(&witness), &p(&segment), "-q", "3"])
        .env("SIMPLEX_RAMSEY_COLOR_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = bin()
        .args(["ramsey-toy", &p(&witness), &p(&segment)])
        .env("SIMPLEX_RAMSEY_COLOR_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = run_stdin(&["check"], TETRA).stdout;
    let b = run_stdin(&["check"], TETRA).stdout;
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
