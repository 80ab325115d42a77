use std::path::Path;
use std::process::{Command, Output};

const RIGHT_I: &[&str] = &[
    "--family", "I", "--right", "--profile", "x1=const(0.6),x3=linear(1,0),xn=const(0)", "--c", "1",
    "--coth-phi0", "2", "--u0", "0", "--v0", "0", "--u1", "1",
];

fn loxhelix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loxhelix")).args(args).env_remove("LOXHELIX_TOL").output().unwrap()
}

fn with(sub: &str, extra: &[&str]) -> Vec<String> {
    let mut v = vec![sub.to_string()];
    v.extend(RIGHT_I.iter().map(|s| s.to_string()));
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn run(args: &[String]) -> Output {
    loxhelix(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn solve_csv_final_row_reaches_closed_form() {
    let out = run(&with("solve", &["--format", "csv"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["u", "v", "x_1", "x_2", "x_3", "x_4", "radicand", "tangent_inner", "angle"]);
    assert_eq!(rows.len(), 257);
    let last = &rows[256];
    assert_eq!(last[0].parse::<f64>().unwrap(), 1.0);
    assert!((last[1].parse::<f64>().unwrap() - 2.5).abs() < 1e-12);
    // angle column is φ0 = atanh(1/2)
    assert!((last[8].parse::<f64>().unwrap() - 0.5f64.atanh()).abs() < 1e-12);
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = run(&with("verify", &["--format", "json"]));
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["max_abs_angle_deviation"].as_f64().unwrap() <= 1e-6);
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unit-speed max residual"));
}

#[test]
fn nonexistent_right_type_iii_exits_two() {
    let out = loxhelix(&[
        "solve", "--family", "III", "--right", "--epsilon", "-1", "--profile", "x1=sin(0.3),x3=linear(0.5,0)",
        "--c", "1", "--phi0", "1", "--u0", "0", "--u1", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    let line = err.lines().find(|l| l.starts_with("error: ")).unwrap();
    assert!(line.starts_with("error: right-helicoidal-type-III-timelike-meridian-nonexistent: "), "{line}");
    assert!(out.stdout.is_empty());
}

#[test]
fn right_type_ii_with_spacelike_meridian_exits_two() {
    let out = loxhelix(&[
        "solve", "--family", "II", "--right", "--epsilon", "1", "--profile", "x2=linear(1,0)", "--c", "1",
        "--phi0", "1", "--u0", "0", "--u1", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("right-helicoidal-type-II-spacelike-meridian-not-timelike"));
}

#[test]
fn validation_errors_exit_two() {
    // not timelike: x1 = 2 > c
    let out = loxhelix(&[
        "solve", "--family", "I", "--profile", "x1=const(2),x3=linear(1,0)", "--c", "1", "--phi0", "1",
        "--u0", "0", "--u1", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error: surface-not-timelike: "));

    let bad_profile = loxhelix(&["solve", "--family", "I", "--profile", "x1=wobble(1)", "--c", "1", "--phi0", "1",
        "--u0", "0", "--u1", "1"]);
    assert_eq!(bad_profile.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_profile.stderr).contains("malformed-profile-spec"));

    let conflict = run(&with("solve", &["--phi0", "1"]));
    assert_eq!(conflict.status.code(), Some(2));

    let unknown = run(&with("solve", &["--frobnicate"]));
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).starts_with("error: invalid-arguments: "));

    let not_unit = loxhelix(&["solve", "--family", "I", "--profile", "x3=linear(2,0)", "--c", "1", "--phi0", "1",
        "--u0", "0", "--u1", "1"]);
    assert_eq!(not_unit.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&not_unit.stderr).contains("profile-not-unit-speed"));
}

#[derive(serde::Deserialize)]
struct JsonCurve {
    meta: serde_json::Value,
    columns: Vec<String>,
    samples: Vec<Vec<Box<serde_json::value::RawValue>>>,
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let csv_out = stdout(&run(&with("solve", &["--samples", "33"])));
    let json_out = stdout(&run(&with("solve", &["--samples", "33", "--format", "json"])));
    let (header, rows) = csv_rows(&csv_out);
    let json: JsonCurve = serde_json::from_str(&json_out).unwrap();
    assert_eq!(json.columns, header);
    assert_eq!(json.meta["case"], "type-I-spacelike-meridian-right-helicoidal");
    assert_eq!(json.samples.len(), rows.len());
    for (row, sample) in rows.iter().zip(&json.samples) {
        assert_eq!(row.len(), sample.len());
        for (cell, value) in row.iter().zip(sample) {
            assert_eq!(cell, value.get());
        }
    }
    assert_eq!(rows[32][1], "2.5000000000000000e0");
}

#[test]
fn identical_runs_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&with("solve", &["--format", "json", "-o", path.to_str().unwrap()]));
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{
        "family": "II", "right": true, "profile": "x2=linear(0.75,0),xn=linear(1.25,0)", "c": 1.0,
        "epsilon": -1, "angle": {"tanh_phi0": 0.5}, "u0": 0.0, "u1": 1.0, "samples": 9
    }"#);
    let out = loxhelix(&["solve", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 9);

    let out = loxhelix(&["solve", "--config", &cfg, "--samples", "5", "--u1", "2"]);
    let (_, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][0].parse::<f64>().unwrap(), 2.0);

    let bad = write_config(dir.path(), r#"{"family": "II", "pitch": 2}"#);
    let out = loxhelix(&["solve", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid-config"));
}

#[test]
fn tolerance_environment_variable() {
    let args = with("length", &["--format", "json"]);
    let out = Command::new(env!("CARGO_BIN_EXE_loxhelix")).args(&args).env("LOXHELIX_TOL", "abc").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid-tolerance"));
    let out = Command::new(env!("CARGO_BIN_EXE_loxhelix")).args(&args).env("LOXHELIX_TOL", "1e-6").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_loxhelix")).args(&args).env("LOXHELIX_TOL", "-1").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn length_and_elliptic_reports() {
    let out = run(&with("length", &["--format", "json"]));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // |Δu| / sinh φ0 with coth φ0 = 2
    let expected = 1.0 / (0.5f64.atanh()).sinh();
    assert!((report["length"].as_f64().unwrap() - expected).abs() < 1e-14);
    assert!((report["numeric"].as_f64().unwrap() - expected).abs() < 1e-10);

    let out = loxhelix(&["elliptic", "--phi", "0", "--k", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("F,0.0000000000000000e0"));
    let out = loxhelix(&["elliptic", "--phi", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error: invalid-modulus: "));
}

#[test]
fn sample_surface_grid() {
    let out = loxhelix(&[
        "sample-surface", "--family", "II", "--profile", "xn=linear(1,1)", "--c", "0.5", "--domain", "0,1",
        "--samples", "3", "--v-range", "-1,1", "--v-samples", "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["u", "v", "x_1", "x_2", "x_3", "x_4", "E", "F", "G"]);
    assert_eq!(rows.len(), 12);
    // u = 0, v = -1: (c v, 0, x_n sinh v, x_n cosh v) with x_n = 1
    let first: Vec<f64> = rows[0].iter().map(|c| c.parse().unwrap()).collect();
    assert_eq!(first[2], -0.5);
    assert!((first[4] - (-1f64).sinh()).abs() < 1e-15);
    assert!((first[5] - 1f64.cosh()).abs() < 1e-15);
    assert_eq!(&first[6..], &[-1.0, 0.0, 1.25]);
}
