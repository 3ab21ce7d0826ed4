use std::path::PathBuf;
use std::process::{Command, Output};

use hollowcert::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use hollowcert::exactnum::{parse_qsqrt2, QSqrt2};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hollowcert").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hollowcert"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn verify_delta_json() {
    let (code, out, _) = call(&["--format", "json", "verify-delta"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parse_qsqrt2(v["width"].as_str().unwrap()).unwrap(), QSqrt2::ints(2, 1));
    assert_eq!(v["minimizers"].as_array().unwrap().len(), 7);
    assert_eq!(v["hollow"], Value::Bool(true));
    assert_eq!(v["facet_points"].as_array().unwrap().len(), 4);
}

#[test]
fn binary_exit_codes() {
    assert_eq!(binary(&["verify-delta"]).status.code(), Some(EXIT_OK));
    assert_eq!(binary(&["certify-local", "--c", "39/4"]).status.code(), Some(EXIT_OK));
    // Past the definiteness endpoint the second-order check fails.
    assert_eq!(binary(&["certify-local", "--c", "14"]).status.code(), Some(EXIT_FAILED));
    assert_eq!(binary(&["certify-local", "--c", "0"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["certify-local", "--c", "abc"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["no-such-command"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn jobs_flag_and_env() {
    assert_eq!(call(&["--jobs", "0", "verify-delta"]).0, EXIT_USAGE);
    let out = Command::new(env!("CARGO_BIN_EXE_hollowcert"))
        .arg("verify-delta")
        .env("HOLLOWCERT_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn neighborhood_row_without_hessian() {
    let (code, out, _) = call(&["certify-neighborhood", "--c", "7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cells[..4], &["7", "0.10355", "0.01877", "0.04423"]);
    assert!(out.contains("condition (iv) not included"));
}

#[test]
fn decimal_c_matches_fraction() {
    let a = call(&["--format", "json", "certify-neighborhood", "--c", "9.75"]);
    let b = call(&["--format", "json", "certify-neighborhood", "--c", "39/4"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
}

#[test]
fn neighborhood_rejects_bad_options() {
    assert_eq!(call(&["certify-neighborhood", "--c", "-1"]).0, EXIT_USAGE);
    assert_eq!(call(&["certify-neighborhood", "--tol", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["certify-neighborhood", "--section", "9"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["certify-neighborhood", "--section", "3", "--with-hessian"]).0,
        EXIT_USAGE
    );
}

#[test]
fn width_of_sample_files() {
    let delta = data("delta.txt");
    let (code, out, _) = call(&["width", "--polytope", delta.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("width: 2 + 1*sqrt2\n"), "{out}");
    assert!(out.contains("minimizers: 7"));
    assert!(out.contains("hollow: true"));
    let cube = data("cube.txt");
    let (code, out, _) = call(&["--format", "json", "width", "--polytope", cube.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["width"], "1");
    assert_eq!(v["minimizers"].as_array().unwrap().len(), 3);
}

#[test]
fn width_reports_parse_errors_with_line() {
    let dir = std::env::temp_dir().join(format!("hollowcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "v 0,0,0\nv 1,0,0\nv 0,1\n").unwrap();
    let (code, _, err) = call(&["width", "--polytope", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
    let flat = dir.join("flat.txt");
    std::fs::write(&flat, "v 0,0,0\nv 1,0,0\nv 0,1,0\nv 1,1,0\n").unwrap();
    assert_eq!(call(&["width", "--polytope", flat.to_str().unwrap()]).0, EXIT_USAGE);
    let missing = dir.join("missing.txt");
    assert_eq!(call(&["width", "--polytope", missing.to_str().unwrap()]).0, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn global_bounds_verdicts_stable_under_precision() {
    fn collect(v: &Value, out: &mut Vec<bool>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match (k.as_str(), x) {
                        ("verdict" | "passed", Value::Bool(b)) => out.push(*b),
                        _ => collect(x, out),
                    }
                }
            }
            Value::Array(a) => a.iter().for_each(|x| collect(x, out)),
            _ => {}
        }
    }
    let verdicts = |p: &str| {
        let (code, out, _) = call(&["--format", "json", "global-bounds", "--precision", p]);
        assert_eq!(code, EXIT_OK);
        let mut all = Vec::new();
        collect(&serde_json::from_str(&out).unwrap(), &mut all);
        assert!(all.len() >= 8 && all.iter().all(|&b| b));
        all
    };
    assert_eq!(verdicts("10^-9"), verdicts("10^-12"));
    let (code, out, _) = call(&["global-bounds"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: pass"));
    assert_eq!(call(&["global-bounds", "--precision", "0"]).0, EXIT_USAGE);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["--format", "json", "verify-delta"][..],
        &["--format", "json", "certify-local"][..],
        &["--format", "json", "global-bounds"][..],
    ] {
        assert_eq!(binary(args).stdout, binary(args).stdout);
    }
}
