use std::path::{Path, PathBuf};
use std::process::Command;

use mean_transform::cli;
use mean_transform::io::{matrix_to_string, parse_matrix, vector_to_string};
use mean_transform::matrix_core::{fro_norm, from_real_rows, identity, CMatrix, CVector, C64};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is one JSON document")
    }
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mean-transform").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn matrix_file(dir: &TempDir, name: &str, m: &CMatrix) -> PathBuf {
    write(dir, name, &matrix_to_string(m))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Parses a `{"n", "data"}` object embedded in a report.
fn matrix_at(v: &Value) -> CMatrix {
    parse_matrix(&v.to_string()).unwrap()
}

fn assert_close(a: &CMatrix, b: &CMatrix, eps: f64) {
    let d = fro_norm(&(a - b));
    assert!(d <= eps, "distance {d:e}\n{a}\n{b}");
}

#[test]
fn polar_of_the_self_adjoint_example() {
    let dir = TempDir::new().unwrap();
    let f = matrix_file(&dir, "t.json", &from_real_rows(2, &[1.0, 1.0, -1.0, -2.0]));
    let r = run(&["polar", p(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["schema"], 1);
    assert_eq!(j["command"]["name"], "polar");
    assert_eq!(j["status"], "ok");
    assert_eq!(j["exit_code"], 0);
    assert_eq!(j["result"]["rank"], 2);
    assert_close(&matrix_at(&j["result"]["v"]), &from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]), 1e-12);
    assert_close(&matrix_at(&j["result"]["p"]), &from_real_rows(2, &[1.0, 1.0, 1.0, 2.0]), 1e-12);
    assert!(j["result"]["residuals"]["reconstruction"].as_f64().unwrap() < 1e-12);
}

#[test]
fn polar_of_identity() {
    let dir = TempDir::new().unwrap();
    let f = matrix_file(&dir, "i.json", &identity(3));
    let j = run(&["polar", p(&f)]).json();
    assert_close(&matrix_at(&j["result"]["v"]), &identity(3), 1e-14);
    assert_close(&matrix_at(&j["result"]["p"]), &identity(3), 1e-14);
}

#[test]
fn malformed_input_exits_2_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "r.json", r#"{"n":2,"data":[[[1,0],[0,0]],[[0,0]]]}"#);
    let r = run(&["polar", p(&ragged)]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("row 1"), "{}", r.stderr);

    let nan = write(&dir, "nan.json", r#"{"n":1,"data":[[[1e999,0]]]}"#);
    assert_eq!(run(&["classify", p(&nan)]).code, 2);
    let missing = dir.path().join("absent.json");
    assert_eq!(run(&["polar", p(&missing)]).code, 2);
    let extra = write(&dir, "x.json", r#"{"n":1,"data":[[[1,0]]],"extra":1}"#);
    assert_eq!(run(&["polar", p(&extra)]).code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--theorem", "BOGUS"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["verify", "--trials", "0", "--dims", "2"]).code, 2);
    assert_eq!(run(&["verify", "--dims", "0"]).code, 2);
    assert_eq!(run(&["verify", "--tol-atol", "-1"]).code, 2);
    assert_eq!(run(&["solve", "--case", "rank-two", "--delta", "1,0"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn transform_examples() {
    let dir = TempDir::new().unwrap();
    let t = matrix_file(&dir, "t.json", &from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]));
    let j = run(&["transform", "--kind", "mean", p(&t)]).json();
    assert_eq!(j["result"]["kind"], "mean");
    assert_close(&matrix_at(&j["result"]["matrix"]), &from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]), 1e-12);

    let pos = from_real_rows(2, &[2.0, 1.0, 1.0, 3.0]);
    let f = matrix_file(&dir, "p.json", &pos);
    let j = run(&["transform", "--kind", "mean", p(&f)]).json();
    assert_close(&matrix_at(&j["result"]["matrix"]), &pos, 1e-12);

    let nil = matrix_file(&dir, "n.json", &from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]));
    let j = run(&["transform", "--kind", "aluthge", p(&nil)]).json();
    assert_close(&matrix_at(&j["result"]["matrix"]), &CMatrix::zeros(2, 2), 1e-14);
    let j = run(&["transform", "--kind", "duggal", p(&nil)]).json();
    assert_close(&matrix_at(&j["result"]["matrix"]), &CMatrix::zeros(2, 2), 1e-14);
}

#[test]
fn classify_report() {
    let dir = TempDir::new().unwrap();
    let f = matrix_file(&dir, "t.json", &from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]));
    let j = run(&["classify", p(&f)]).json();
    let v = &j["result"]["verdicts"];
    assert_eq!(v["unitary"]["holds"], false);
    assert!(v["unitary"]["witness"].is_object());
    assert_eq!(v["binormal"]["holds"], true);
    assert_eq!(v["invertible"]["holds"], true);

    let nil = matrix_file(&dir, "n.json", &from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]));
    let j = run(&["classify", p(&nil)]).json();
    assert_eq!(j["result"]["verdicts"]["square_zero"]["holds"], true);
    assert!(j["result"]["verdicts"]["log_hyponormal"]["skipped"].is_string());
}

#[test]
fn spectrum_plain_and_joint() {
    let dir = TempDir::new().unwrap();
    let f = matrix_file(&dir, "d.json", &from_real_rows(2, &[2.0, 0.0, 0.0, -1.0]));
    let j = run(&["spectrum", p(&f)]).json();
    let ev = j["result"]["eigenvalues"].as_array().unwrap();
    assert_eq!(ev.len(), 2);
    assert!((ev[0][0].as_f64().unwrap() + 1.0).abs() < 1e-14);

    let nil = matrix_file(&dir, "n.json", &from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]));
    let j = run(&["spectrum", "--joint", p(&nil)]).json();
    assert_eq!(j["result"]["joint_point_spectrum"].as_array().unwrap().len(), 0);
    let j = run(&["spectrum", "--joint", p(&f)]).json();
    assert_eq!(j["result"]["joint_point_spectrum"].as_array().unwrap().len(), 2);
}

fn unit(n: usize, k: usize) -> CVector {
    CVector::from_fn(n, |i, _| C64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
}

#[test]
fn solve_rank_one_orthogonal() {
    let dir = TempDir::new().unwrap();
    let x = unit(3, 0) * C64::new(1.0, 1.0);
    let y = unit(3, 2) * C64::new(2.0, 0.0);
    let fx = write(&dir, "x.json", &vector_to_string(&x));
    let fy = write(&dir, "y.json", &vector_to_string(&y));
    let r = run(&["solve", "--case", "rank-one", "--x", p(&fx), "--y", p(&fy)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["result"]["kind"], "UNIQUE");
    let expect = (&x * y.adjoint()).scale(2.0);
    assert_close(&matrix_at(&j["result"]["solution"]), &expect, 1e-13);
    assert_eq!(j["result"]["roundtrip"]["holds"], true);
}

#[test]
fn solve_rank_two_cases() {
    let j = run(&["solve", "--case", "rank-two", "--delta", "1,0", "--nu", "2,0"]).json();
    assert_eq!(j["result"]["kind"], "UNIQUE");
    assert_close(&matrix_at(&j["result"]["solution"]), &from_real_rows(2, &[1.0, 0.0, 0.0, 2.0]), 1e-14);

    let r = run(&["solve", "--case", "rank-two", "--delta", "2,0", "--nu", "-1,0", "--beta", "1,0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["result"]["kind"], "FAMILY");
    assert_close(&matrix_at(&j["result"]["solution"]), &from_real_rows(2, &[2.0, 1.0, -1.0, -1.0]), 1e-14);
    assert_eq!(j["result"]["roundtrip"]["holds"], true);
    assert_eq!(j["result"]["family"]["radius_sq"], 2.0);

    // beta outside the disk is an input error
    let r = run(&["solve", "--case", "rank-two", "--delta", "2,0", "--nu", "-1,0", "--beta", "2,0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn solve_on_the_circle_reports_a_failed_round_trip() {
    let r = run(&["solve", "--case", "rank-two", "--delta", "1,0", "--nu", "-1,0", "--beta", "1,0"]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["status"], "failed");
    assert_eq!(j["result"]["family"]["beta_on_boundary"], true);
    assert_eq!(j["result"]["roundtrip"]["holds"], false);
}

#[test]
fn solve_square_zero_and_positive() {
    let dir = TempDir::new().unwrap();
    let nil = from_real_rows(2, &[0.0, 3.0, 0.0, 0.0]);
    let f = matrix_file(&dir, "n.json", &nil);
    let j = run(&["solve", "--case", "square-zero", p(&f)]).json();
    assert_close(&matrix_at(&j["result"]["solution"]), &nil.scale(2.0), 1e-14);
    assert_eq!(j["result"]["roundtrip"]["holds"], true);

    let pos = from_real_rows(2, &[1.0, 1.0, 1.0, 2.0]);
    let f = matrix_file(&dir, "p.json", &pos);
    let j = run(&["solve", "--case", "positive", p(&f)]).json();
    assert_eq!(j["result"]["kind"], "FIXED_POINT");
    assert_close(&matrix_at(&j["result"]["solution"]), &pos, 1e-14);

    let f = matrix_file(&dir, "bad.json", &from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]));
    assert_eq!(run(&["solve", "--case", "positive", p(&f)]).code, 2);
    assert_eq!(run(&["solve", "--case", "square-zero", p(&f)]).code, 2);
}

#[test]
fn verify_examples() {
    let r = run(&["verify", "--theorem", "all", "--dims", "2,3,4", "--trials", "50", "--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    let reports = j["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 15);
    for rep in reports {
        assert_eq!(rep["failures"], 0);
        assert!(rep.get("elapsed").is_none());
        let t = rep["trials"].as_u64().unwrap();
        let sum = rep["passed"].as_u64().unwrap()
            + rep["failures"].as_u64().unwrap()
            + rep["skipped"].as_u64().unwrap();
        assert_eq!(t, sum);
    }
    assert_eq!(j["tolerance"]["atol"], 1e-10);

    let r = run(&["verify", "--theorem", "T5_1_NILPOTENT", "--dims", "4", "--trials", "100"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["reports"][0]["status"], "PASS");
}

#[test]
fn verify_timings_flag_adds_elapsed() {
    let r = run(&["verify", "--theorem", "T4_4_POSITIVE", "--dims", "2", "--trials", "2", "--timings"]);
    assert!(r.json()["result"]["reports"][0]["elapsed"].is_number());
}

#[test]
fn loose_tolerance_override_is_echoed() {
    let r = run(&["verify", "--theorem", "T4_4_POSITIVE", "--dims", "2", "--trials", "3", "--tol-atol", "1e-9"]);
    assert_eq!(r.json()["tolerance"]["atol"], 1e-9);
}

#[test]
fn matrix_file_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let m = CMatrix::from_fn(3, 3, |i, j| C64::new(0.1 * i as f64 - 1.0 / 3.0, (j as f64).sqrt() * 1e-300));
    let text = matrix_to_string(&m);
    let f = write(&dir, "m.json", &text);
    let again = matrix_to_string(&parse_matrix(&std::fs::read_to_string(&f).unwrap()).unwrap());
    assert_eq!(text, again);

    // the polar report embeds matrices in the same entry format
    let j = run(&["polar", p(&matrix_file(&dir, "i.json", &identity(2)))]).json();
    let v = &j["result"]["v"];
    assert_eq!(matrix_to_string(&matrix_at(v)), matrix_to_string(&identity(2)));
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_mean-transform");
    let args = ["verify", "--theorem", "P3_2_AJ_INCLUSION", "--dims", "3,4", "--trials", "20", "--seed", "5"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn binary_exit_code_on_bad_theorem() {
    let bin = env!("CARGO_BIN_EXE_mean-transform");
    let out = Command::new(bin).args(["verify", "--theorem", "BOGUS"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("BOGUS"));
}
