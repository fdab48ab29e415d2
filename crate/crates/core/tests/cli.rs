use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use sparsity::{evaluate, relation_holds, CoefficientVector, CriterionId, MeasureId, MeasureSpec};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sparsity"));
    cmd.env_remove("SPARSITY_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
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

fn write_input(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measure_prints_six_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(dir.path(), "vec.txt", "0,1,3,5\n");
    let o = run(&["measure", "--measure", "gini", "--input", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.472222\n");
    let o = run(&["measure", "--measure", "neg-l1", "--input", &f]);
    assert_eq!(stdout(&o), "-9.000000\n");
    let o = run_stdin(
        &["measure", "--measure", "u-theta", "--theta", "0.5"],
        "1 2 4 9",
    );
    assert_eq!(stdout(&o), "0.875000\n");
}

#[test]
fn complex_mode_uses_modulus() {
    let o = run_stdin(&["measure", "--measure", "neg-l1", "--complex"], "3,4\n");
    assert_eq!(stdout(&o), "-5.000000\n");
}

#[test]
fn input_errors_exit_2_with_position() {
    let o = run_stdin(&["measure", "--measure", "gini"], "1 2\n3 oops\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 3"), "{err}");
    assert_eq!(
        run_stdin(&["measure", "--measure", "gini"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["measure", "--measure", "gini", "--input", "/nonexistent/v"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["measure", "--bogus"]).status.code(), Some(2));
    let o = run_stdin(&["lorenz", "--output", "/nonexistent/dir/out.csv"], "1 2");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn measure_all_lists_every_measure() {
    let o = run_stdin(&["measure-all", "--format", "tabular"], "0,1,3,5");
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "measure,value");
    assert_eq!(lines.len(), 16);
    assert!(lines.contains(&"neg-l1,-9.0"));
    let o = run_stdin(&["measure-all", "--format", "structured"], "0,1,3,5");
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"].as_array().unwrap().len(), 15);
    assert_eq!(doc["config"]["params"]["epsilon"], 1.0);
}

#[test]
fn lorenz_rows_end_at_one() {
    let o = run_stdin(&["lorenz", "--format", "tabular"], "0 0 0 0 1");
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], "0.0,0.0");
    assert_eq!(rows[4], "0.8,0.0");
    assert_eq!(*rows.last().unwrap(), "1.0,1.0");
}

#[test]
fn table_structured_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.json");
    let o = run(&[
        "table",
        "--trials",
        "300",
        "--format",
        "structured",
        "--output",
        out.to_str().unwrap(),
    ]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let result = &doc["result"];
    assert_eq!(result["cells"].as_array().unwrap().len(), 90);
    assert_eq!(doc["seed"], 0);
    assert_eq!(doc["config"]["trials"], 300);
    assert!(doc["version"].is_string());
    assert_eq!(result["disputed"]["measure"], "l2-over-l1");
    assert_eq!(result["disputed"]["criterion"], "D3");
    assert!(result["disputed"]["note"]
        .as_str()
        .unwrap()
        .contains("Hoyer"));
    let diff = result["diff"].as_array().unwrap();
    let code = if diff.is_empty() { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(code));
    assert!(diff
        .iter()
        .all(|d| !(d["measure"] == "l2-over-l1" && d["criterion"] == "D3")));

    // Witnesses survive a text round trip and still violate.
    let mut checked = 0;
    for cell in result["cells"].as_array().unwrap() {
        if cell["verdict"]["status"] != "violated" {
            continue;
        }
        let measure: MeasureId = cell["measure"].as_str().unwrap().parse().unwrap();
        let criterion: CriterionId = cell["criterion"].as_str().unwrap().parse().unwrap();
        let as_text = |key: &str| -> String {
            cell["verdict"]["witness"][key]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let parse = |s: String| {
            CoefficientVector::new(s.split(',').map(|t| t.parse().unwrap()).collect()).unwrap()
        };
        let spec = MeasureSpec::with_defaults(measure);
        let b = evaluate(&spec, &parse(as_text("before"))).unwrap();
        let a = evaluate(&spec, &parse(as_text("after"))).unwrap();
        assert_eq!(
            b.to_bits(),
            cell["verdict"]["before_value"].as_f64().unwrap().to_bits()
        );
        assert_eq!(
            a.to_bits(),
            cell["verdict"]["after_value"].as_f64().unwrap().to_bits()
        );
        assert!(!relation_holds(criterion, b, a));
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn table_exit_code_tracks_diff() {
    let o = run(&["table", "--trials", "200", "--format", "tabular"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 91);
    assert!(lines[0].starts_with("measure,criterion,status"));
    let mismatched = lines[1..].iter().any(|l| {
        let f: Vec<&str> = l.split(',').collect();
        let n = f.len();
        f[n - 1] == "false" && f[n - 3] != f[n - 2]
    });
    assert_eq!(o.status.code(), Some(if mismatched { 1 } else { 0 }));
}

#[test]
fn structured_output_is_deterministic() {
    let a = run(&[
        "table",
        "--trials",
        "100",
        "--seed",
        "5",
        "--format",
        "structured",
    ]);
    let b = run(&[
        "table",
        "--trials",
        "100",
        "--seed",
        "5",
        "--format",
        "structured",
    ]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_environment_variable() {
    let o = bin()
        .args([
            "check",
            "--measure",
            "gini",
            "--criterion",
            "d1",
            "--trials",
            "10",
            "--format",
            "structured",
        ])
        .env("SPARSITY_SEED", "42")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["seed"], 42);
    let o = bin()
        .args([
            "check",
            "--measure",
            "gini",
            "--criterion",
            "D1",
            "--trials",
            "10",
            "--seed",
            "7",
            "--format",
            "structured",
        ])
        .env("SPARSITY_SEED", "42")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["seed"], 7);
}

#[test]
fn check_reports_witness() {
    let o = run(&["check", "--measure", "hoyer", "--criterion", "D4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hoyer D4: violated"));
    let o = run(&[
        "check",
        "--measure",
        "gini",
        "--criterion",
        "P2",
        "--trials",
        "50",
    ]);
    assert!(stdout(&o).contains("no violation found in 50 trials"));
}

#[test]
fn experiments_write_tables() {
    let o = run(&[
        "experiment",
        "poisson",
        "--sizes",
        "10,20",
        "--repeats",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("sweep,measure,mean,std,normalized_mean")
    );
    assert_eq!(text.lines().count(), 1 + 2 * 15);

    let o = run(&[
        "experiment",
        "bernoulli",
        "--grid",
        "0.2,0.5",
        "--n",
        "40",
        "--repeats",
        "2",
        "--format",
        "structured",
    ]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["metadata"]["params"]["epsilon"], 0.5);
    assert_eq!(doc["result"]["summary"].as_array().unwrap().len(), 30);

    let o = run(&[
        "experiment",
        "contributions",
        "--grid",
        "0,1",
        "--measures",
        "neg-log,l0",
    ]);
    assert_eq!(stdout(&o), "measure,x,term\nneg-log,0.0,-0.0\nneg-log,1.0,-0.6931471805599453\nl0,0.0,1.0\nl0,1.0,0.0\n");
    let o = run(&["experiment", "contributions", "--measures", "gini"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&[
        "experiment",
        "distributional-gini",
        "--distribution",
        "uniform:0:1",
        "--samples",
        "1000",
    ]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let g: f64 = row[2].parse().unwrap();
    assert!((g - 1.0 / 3.0).abs() < 1e-6);
}
