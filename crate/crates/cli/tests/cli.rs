use std::process::{Command, Output};

fn linnik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linnik"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_laplace_uses_closed_form() {
    let o = linnik(&["eval", "--alpha", "2", "--nu", "1", "--n", "1", "--r", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "closed2");
    assert!((v["value"].as_f64().unwrap() - 0.1839397205857212).abs() < 1e-15);
}

#[test]
fn classify_echoes_rationals() {
    let o = linnik(&["classify", "--alpha", "1/2", "--nu", "1", "--n", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_lambda"], true);
    assert_eq!(v["j0"], 0);
    assert_eq!(v["l0"], 1);
    assert_eq!(v["alpha"], "1/2");
    assert_eq!(v["nu"], "1");
    assert_eq!(v["exact"], true);
}

#[test]
fn table_is_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|k| dir.path().join(format!("t{k}.csv")))
        .collect();
    for p in &paths {
        let o = linnik(&[
            "table",
            "--alpha",
            "1.5",
            "--nu",
            "0.75",
            "--n",
            "2",
            "--r",
            "0.01:50:12",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read_to_string(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read_to_string(&paths[1]).unwrap());
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("r,value,method,err_est,terms"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 5);
        assert!(f[1].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn sample_writes_one_point_per_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.csv");
    let o = linnik(&[
        "sample",
        "--alpha",
        "1",
        "--nu",
        "2",
        "--n",
        "3",
        "--count",
        "25",
        "--seed",
        "5",
        "-o",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&p).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x1,x2,x3");
    assert_eq!(lines.len(), 26);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 3));
}

#[test]
fn cf_reports_estimate_and_exact_value() {
    let o = linnik(&[
        "cf", "--alpha", "1", "--nu", "1", "--n", "2", "--t", "0,2", "--count", "20000",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["exact"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    let z = (v["re"].as_f64().unwrap() - 1.0 / 3.0) / v["re_se"].as_f64().unwrap();
    assert!(z.abs() < 5.0);
}

#[test]
fn check_passes_and_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.jsonl");
    let o = linnik(&[
        "check",
        "--grid",
        "1,1,1;2,3/2,2",
        "--tol",
        "1e-6",
        "-o",
        p.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&p).unwrap();
    let reports: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 16);
    for r in &reports {
        for key in [
            "check",
            "alpha",
            "nu",
            "n",
            "discrepancy",
            "tol",
            "pass",
            "ms",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(linnik(&["eval", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(
        linnik(&["eval", "--alpha", "2.5", "--nu", "1", "--n", "1", "--r", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        linnik(&["classify", "--alpha", "1/0", "--nu", "1", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(linnik(&["check", "--grid", "3,1,1"]).status.code(), Some(2));
    assert_eq!(linnik(&["bogus"]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_linnik"))
            .env("LINNIK_THREADS", v)
            .args(["eval", "--alpha", "1", "--nu", "1", "--n", "1", "--r", "2"])
            .output()
            .unwrap()
    };
    assert!(run("1").status.success());
    assert_eq!(run("0").status.code(), Some(2));
}
