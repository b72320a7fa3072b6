//! End-to-end checks of the `hingelab` binary: report formats, flag
//! handling, and the 0/1/2 exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hingelab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Runs expecting success and parses stdout as JSON.
fn run_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_triangle(dir: &Path) -> String {
    let path = dir.join("triangle.txt");
    std::fs::write(&path, "0 0\n1 0\n0 1\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_writes_a_loadable_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.txt");
    let out = run(&[
        "gen",
        "--family",
        "grid",
        "--m",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# grid n=9\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);

    // the generated file feeds straight back into analysis commands
    let report = run_json(&["hinges", "--in", path.to_str().unwrap(), "--no-histogram"]);
    assert_eq!(report["schema"], "hinges/1");
    assert_eq!(report["n"], 9);
}

#[test]
fn gen_rejects_missing_and_misplaced_parameters() {
    // grid needs --m
    let out = run(&["gen", "--family", "grid"]);
    assert_eq!(exit_code(&out), 2);
    // --seed is meaningless for a grid
    let out = run(&["gen", "--family", "grid", "--m", "3", "--seed", "7"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
    // two-circles rejects equal radii (degenerate construction)
    let out = run(&[
        "gen",
        "--family",
        "two-circles",
        "--n",
        "9",
        "--r1",
        "2",
        "--r2",
        "2",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn hinges_reports_the_right_triangle_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_triangle(dir.path());

    let all = run_json(&["hinges", "--in", &input]);
    assert_eq!(all["distinct_count"], 9);
    assert_eq!(all["energy"], "97");
    assert_eq!(all["total_triples"], "27");
    assert_eq!(all["cauchy_schwarz_holds"], true);
    assert!(all["histogram"].is_array());

    let distinct = run_json(&["hinges", "--in", &input, "--distinct-points"]);
    assert_eq!(distinct["total_triples"], "6");
    assert_ne!(distinct["convention"], all["convention"]);

    let bare = run_json(&["hinges", "--in", &input, "--no-histogram"]);
    assert!(bare.get("histogram").is_none());
}

#[test]
fn lines_and_points3d_agree_on_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.txt");
    std::fs::write(&path, "0 0\n0 1\n1 0\n1 1\n").unwrap();
    let input = path.to_str().unwrap();

    let lines = run_json(&["lines", "--in", input]);
    assert_eq!(lines["line_count"], 16);
    assert_eq!(lines["max_nu"], 5);
    assert_eq!(lines["sum_nu_sq"], "400");

    let points = run_json(&["points3d", "--in", input]);
    assert_eq!(points["sum_nu_sq"], lines["sum_nu_sq"]);
    assert_eq!(points["meeting_pairs"], 40);
    assert_eq!(points["max_mu"], 4);
}

#[test]
fn incidence_flags_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_triangle(dir.path());

    // --k requires --t
    let out = run(&["incidence", "--in", &input, "--k", "2"]);
    assert_eq!(exit_code(&out), 2);

    // k must be a power of two
    let out = run(&["incidence", "--in", &input, "--k", "3", "--t", "1"]);
    assert_eq!(exit_code(&out), 2);

    let full = run_json(&["incidence", "--in", &input]);
    assert_eq!(full["schema"], "incidence/1");
    assert!(full["restricted"].is_null());
    assert_eq!(full["s_kind"], "plane-only");

    let restricted = run_json(&["incidence", "--in", &input, "--k", "2", "--t", "2"]);
    assert_eq!(restricted["restricted"]["k"], 2);
    assert_eq!(restricted["restricted"]["t"], 2);
}

#[test]
fn quadruples_pins_small_values_and_rejects_zero() {
    let report = run_json(&["quadruples", "--N", "3"]);
    assert_eq!(report["count"], "15");
    let out = run(&["quadruples", "--N", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn fit_reads_series_and_reports_models() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let mut csv = String::from("family,statistic,n,value,runtime_s\n");
    for n in [8u64, 16, 32, 64, 128] {
        let v = 3.0 * (n as f64).powi(3);
        csv.push_str(&format!("grid,hinge-count,{n},{v},0.0\n"));
    }
    std::fs::write(&path, csv).unwrap();

    let report = run_json(&["fit", "--series", path.to_str().unwrap()]);
    assert_eq!(report["schema"], "fit/1");
    let group = &report["groups"][0];
    assert!((group["exponent"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert_eq!(group["log_exponent"], 0);

    // header-only file: nothing to fit is a usage error
    std::fs::write(&path, "family,statistic,n,value,runtime_s\n").unwrap();
    let out = run(&["fit", "--series", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);

    // malformed rows are a usage error
    std::fs::write(&path, "family,statistic,n,value,runtime_s\ngrid,x,not-a-number,1,0\n").unwrap();
    let out = run(&["fit", "--series", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn sweep_checkpoints_rows_and_records_per_row_errors() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let config_path = dir.path().join("sweep.json");
    // the second instance is degenerate (r1 = r2); the sweep must record
    // the failure and keep going
    let config = serde_json::json!({
        "instances": [
            {"kind": "grid", "m": 3},
            {"kind": "two-circles", "n": 9, "r1": "1", "r2": "1"},
            {"kind": "collinear", "n": 12}
        ],
        "statistics": ["hinge-count", "max-nu"],
        "fit": false,
        "series_csv": csv_path.to_str().unwrap()
    });
    std::fs::write(&config_path, serde_json::to_vec(&config).unwrap()).unwrap();

    let report = run_json(&["sweep", "--config", config_path.to_str().unwrap()]);
    assert_eq!(report["schema"], "sweep/1");
    assert_eq!(report["rows"].as_array().unwrap().len(), 4);
    assert_eq!(report["errors"].as_array().unwrap().len(), 1);
    assert_eq!(report["errors"][0]["family"], "two-circles");

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("family,statistic,n,value,runtime_s\n"));
    assert_eq!(csv.lines().count(), 5, "header plus one line per finished row");

    // a config that cannot even be parsed is a usage error
    std::fs::write(&config_path, "{not json").unwrap();
    let out = run(&["sweep", "--config", config_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_passes_on_healthy_input_and_enforces_size_caps() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_triangle(dir.path());

    let report = run_json(&["verify", "--in", &input, "--level", "full"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["hinge_count"], 9);
    assert_eq!(report["hinge_energy"], "97");

    // full level refuses n > 10 rather than running for hours
    let big = dir.path().join("line.txt");
    let rows: String = (0..11).map(|i| format!("{i} 0\n")).collect();
    std::fs::write(&big, rows).unwrap();
    let out = run(&["verify", "--in", big.to_str().unwrap(), "--level", "full"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn out_flag_matches_stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_triangle(dir.path());
    let out_path = dir.path().join("report.json");

    let stdout_run = run(&["lines", "--in", &input]);
    assert!(stdout_run.status.success());
    let to_file = run(&["lines", "--in", &input, "--out", out_path.to_str().unwrap()]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(
        std::fs::read(&out_path).unwrap(),
        stdout_run.stdout,
        "--out writes exactly the stdout bytes"
    );
}

#[test]
fn resource_flags_are_validated_and_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_triangle(dir.path());

    let out = run(&["hinges", "--in", &input, "--threads", "0"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["hinges", "--in", &input, "--limit-seconds", "0"]);
    assert_eq!(exit_code(&out), 2);

    // a deadline that has already passed aborts a large computation
    let grid = dir.path().join("grid10.txt");
    let gen = run(&[
        "gen",
        "--family",
        "grid",
        "--m",
        "10",
        "--out",
        grid.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = run(&[
        "points3d",
        "--in",
        grid.to_str().unwrap(),
        "--limit-seconds",
        "0.000001",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("time budget"));
}

#[test]
fn usage_errors_exit_with_two()
{
    assert_eq!(exit_code(&run(&["no-such-command"])), 2);
    assert_eq!(exit_code(&run(&["hinges"])), 2); // missing --in
    assert_eq!(exit_code(&run(&["hinges", "--in", "/no/such/file"])), 2);
    assert_eq!(exit_code(&run(&["verify", "--in", "x", "--level", "extreme"])), 2);

    let help = run(&["--help"]);
    assert_eq!(exit_code(&help), 0);
    let text = String::from_utf8_lossy(&help.stdout);
    for sub in [
        "gen",
        "hinges",
        "lines",
        "points3d",
        "incidence",
        "quadruples",
        "fit",
        "sweep",
        "verify",
    ] {
        assert!(text.contains(sub), "help lists {sub}");
    }
}
