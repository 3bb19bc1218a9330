use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TAXICAB: &str = r#"{"kind": "pnorm", "n": 2, "p": 1}"#;

fn geodesy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesy"))
        .args(args)
        .env_remove("GEODESY_TOL")
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn curve(points: &[(&str, [&str; 2])]) -> String {
    let bps: Vec<Value> = points
        .iter()
        .map(|(s, p)| serde_json::json!({"s": s, "point": p}))
        .collect();
    serde_json::json!({"space": serde_json::from_str::<Value>(TAXICAB).unwrap(), "breakpoints": bps}).to_string()
}

fn verifies(path: &Path) -> bool {
    geodesy(&["verify", "--curve", path.to_str().unwrap()]).status.code() == Some(0)
}

#[test]
fn two_leg_curve_passes() {
    let c = curve(&[("0", ["0", "0"]), ("1/2", ["1", "0"]), ("1", ["1", "1"])]);
    let out = geodesy(&["verify", "--curve", &c, "--grid", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["tolerance"], Value::Null);
}

#[test]
fn squared_speed_fails_with_the_offending_pair() {
    let c = curve(&[("0", ["0", "0"]), ("4/5", ["16/25", "0"]), ("1", ["1", "0"])]);
    let out = geodesy(&["verify", "--upper", "--grid", "1", "--curve", &c]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["witness_pair"], serde_json::json!(["4/5", "1/1"]));
    assert_eq!(r["lhs"], "9/25");
    assert_eq!(r["rhs"], "1/5");
}

#[test]
fn input_errors_exit_with_two() {
    let truncated = r#"{"space": {"kind": "pnorm", "n": 2"#;
    let out = geodesy(&["verify", "--curve", truncated]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed document"));

    let out = geodesy(&["witness", "--point", r#"["1/2", "0"]"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a unit vector"));

    let wrong_kind = curve(&[("0", ["0", "0"]), ("1", ["1", "1"])]).replace("pnorm", "laakso");
    assert_eq!(geodesy(&["verify", "--curve", &wrong_kind]).status.code(), Some(2));
    assert_eq!(geodesy(&["laakso", "count", "-n", "99"]).status.code(), Some(2));
    assert_eq!(
        geodesy(&["verify", "--curve", "/no/such/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn witness_examples() {
    let r = report(&geodesy(&["witness", "--point", r#"["1/2", "1/2"]"#]));
    assert_eq!(r["status"], "found");
    assert_eq!(r["C"], "1/2");
    let r = report(&geodesy(&["witness", "--point", r#"["1", "0"]"#]));
    assert_eq!(r["status"], "none_certified");
    let step = r#"{"kind": "step", "measures": ["1/4", "1/4", "1/4", "1/4"], "p": 1}"#;
    let r = report(&geodesy(&[
        "witness",
        "--space",
        step,
        "--point",
        r#"["1", "1", "1", "1"]"#,
    ]));
    assert_eq!(r["status"], "found");
    assert_eq!(r["C"], "1/2");
}

#[test]
fn laakso_queries() {
    for (n, count) in [("1", "2"), ("2", "32"), ("3", "2097152")] {
        let r = report(&geodesy(&["laakso", "count", "-n", n]));
        assert_eq!(r["count"], count);
    }
    assert_eq!(report(&geodesy(&["laakso", "dist", "-n", "3"]))["distance"], "1/1");
    let r = report(&geodesy(&["laakso", "build", "-n", "1"]));
    assert_eq!(r["edges"].as_array().unwrap().len(), 6);
    assert_eq!(r["edge_length"], "1/4");
}

#[test]
fn emitted_curves_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name);
    let seg = curve(&[("0", ["0", "0"]), ("1", ["1", "1"])]);

    let r = report(&geodesy(&["family", "--out", d("family").to_str().unwrap()]));
    assert_eq!(r["disjoint_pairs"], 55);
    let r = report(&geodesy(&[
        "laakso",
        "enumerate",
        "-n",
        "2",
        "--out",
        d("laakso").to_str().unwrap(),
    ]));
    assert_eq!(r["emitted"], 32);
    let r = report(&geodesy(&["glue", "--out", d("glue").to_str().unwrap()]));
    assert_eq!(r["cross_pairs_meeting_at_glue"], 100);
    let out = geodesy(&[
        "branch",
        "--curve",
        &seg,
        "--t",
        "1/4",
        "--depth",
        "5",
        "--out",
        d("branch.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let with = curve(&[("0", ["1/4", "1/4"]), ("1/2", ["1/4", "1/2"]), ("1", ["1/2", "1/2"])]);
    let args = [
        "splice", "--curve", &seg, "--with", &with, "--from", "1/4", "--to", "1/2",
    ];
    let out = geodesy(&[&args[..], &["--out", d("splice.json").to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));

    let mut checked = 0;
    for sub in ["family", "laakso", "glue"] {
        for entry in fs::read_dir(d(sub)).unwrap() {
            assert!(verifies(&entry.unwrap().path()));
            checked += 1;
        }
    }
    assert!(verifies(&d("branch.json")) && verifies(&d("splice.json")));
    assert_eq!(checked, 11 + 32 + 2);
}

#[test]
fn plot_data_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for figure in ["onenorm", "laakso", "cts"] {
        assert_eq!(geodesy(&["plot-data", figure, "--out", out]).status.code(), Some(0));
    }
    let read = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap();
    let summary = read("onenorm_summary.csv");
    let lengths: Vec<&str> = summary.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(lengths.len(), 12);
    assert!(lengths
        .iter()
        .all(|l| *l == "2.00000000000000e0" || *l == "1.00000000000000e0"));
    assert_eq!(read("laakso_edges.csv").lines().count(), 1 + 6);
    let cts = read("cts_summary.csv");
    let row: Vec<&str> = cts.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "6.66666666666667e-1");
    assert_eq!(row[1], row[2]);
    assert!(read("cts.csv")
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",6.66666666666667e-1")));
    assert_eq!(geodesy(&["plot-data", "nonsense"]).status.code(), Some(2));
}

#[test]
fn csv_reports_and_tolerance_env() {
    let out = geodesy(&["laakso", "count", "-n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command,count,"));
    let out = Command::new(env!("CARGO_BIN_EXE_geodesy"))
        .args(["verify", "--curve", &curve(&[("0", ["0", "0"]), ("1", ["1", "1"])])])
        .env("GEODESY_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
