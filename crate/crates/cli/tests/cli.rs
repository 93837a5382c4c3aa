use std::path::Path;
use std::process::{Command, Output};

fn rtoa(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtoa"))
        .args(args)
        .current_dir(dir)
        .env_remove("RTOA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn verify_algebra_prints_minimal_operator_and_zero_residual() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(&["verify-algebra"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("minimal operator:\nT[-1,1]: -1*s3\nT[1,1]: -1/2i*s2 + -1/2*s3\n"));
    assert!(text.contains("matches minimal operator: yes"));
    assert!(text.ends_with("T[0,0]:\n0\n"));
}

#[test]
fn verify_algebra_with_other_units() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(
        &["--hbar", "0.5", "--c", "2", "--m0", "3", "verify-algebra"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T[-1,1]: -3*s3\nT[1,1]: -1/24i*s2 + -1/24*s3\n"));
}

#[test]
fn nodal_density_csv_has_zero_axis_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(
        &[
            "density-grid",
            "--branch",
            "nodal",
            "--tau",
            "0.5",
            "--nx",
            "11",
            "--nt",
            "7",
            "-o",
            "d.csv",
            "--plot-script",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "x,t,P"));
    assert!(csv.lines().any(|l| l.starts_with("# config: {")));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 77);
    // t is the slow index
    assert_eq!(rows[0][1], rows[10][1]);
    assert!(rows[11][1] > rows[10][1]);
    let axis: Vec<_> = rows.iter().filter(|r| r[0] == 0.0).collect();
    assert_eq!(axis.len(), 7);
    assert!(axis.iter().all(|r| r[2] == 0.0));
    let script = std::fs::read_to_string(dir.path().join("d.gp")).unwrap();
    assert!(script.contains("'d.csv'"));
}

#[test]
fn toa_json_reports_reference_times() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(
        &[
            "toa-dist",
            "--p0",
            "3",
            "--x0",
            "-7",
            "--epsilon-free",
            "--out",
            "json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t_ph"], 7.0);
    let t_class = v["t_class"].as_f64().unwrap();
    assert!((t_class - 7.0 * 10f64.sqrt() / 3.0).abs() < 1e-12);
    let tau_mp = v["tau_mp"].as_f64().unwrap();
    assert!(tau_mp > 7.0 && (tau_mp - t_class).abs() / t_class < 0.05);
    assert_eq!(v["grid"]["n_tau"], 2001);
    assert_eq!(v["grid"]["momentum_points"], 4097);
    assert!(v["config"]["constants"].is_object());
    assert_eq!(v["tau"].as_array().unwrap().len(), 2001);
}

#[test]
fn toa_csv_with_undefined_classical_time() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(
        &[
            "toa-dist",
            "--p0",
            "0",
            "--x0",
            "-7",
            "--n-tau",
            "201",
            "-o",
            "t.csv",
            "--plot-script",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(csv.contains("# t_class: undefined\n# t_ph: 7\n"));
    assert!(csv.contains("\ntau,pi_total,pi_nonnodal,pi_nodal\n"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 201);
    for r in rows {
        assert_eq!(r[1], r[2] + r[3]);
    }
    let script = std::fs::read_to_string(dir.path().join("t.gp")).unwrap();
    assert!(script.contains("set arrow from 7, graph 0 to 7, graph 1"));
}

#[test]
fn eigenfunction_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(
        &[
            "eigenfunction",
            "--lambda",
            "-",
            "--branch",
            "nodal",
            "--np",
            "9",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("p,re_upper,im_upper,re_lower,im_lower\n"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert_eq!((r[1], r[2]), (0.0, 0.0));
    }
    // odd branch
    assert_eq!(rows[0][3], -rows[8][3]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["density-grid", "--nx", "9", "--nt", "5", "-o", "d.csv"];
    assert_eq!(rtoa(&args, dir.path()).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("d.csv")).unwrap();
    assert_eq!(rtoa(&args, dir.path()).status.code(), Some(0));
    assert_eq!(first, std::fs::read(dir.path().join("d.csv")).unwrap());
    let a = stdout(&rtoa(
        &["toa-dist", "--p0", "2", "--x0", "-3", "--n-tau", "101"],
        dir.path(),
    ));
    let b = stdout(&rtoa(
        &["toa-dist", "--p0", "2", "--x0", "-3", "--n-tau", "101"],
        dir.path(),
    ));
    assert_eq!(a, b);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cfg.json"),
        r#"{"hbar": 2.0, "c": 3.0, "format": "json"}"#,
    )
    .unwrap();
    let o = rtoa(&["--config", "cfg.json", "--c", "4", "limits"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let err = stderr(&o);
    assert!(
        err.contains(r#""constants":{"hbar":2.0,"c":4.0,"m0":1.0}"#),
        "{err}"
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["constants"]["c"], 4.0);
}

#[test]
fn limits_text_shows_inverse_square_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(&["limits", "--c-ladder", "10,100"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# 100 | -1*s3 | -1/20000i*s2 + -1/20000*s3 | true | true"));
}

#[test]
fn invalid_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["frobnicate"],
        vec!["toa-dist", "--p0", "3"],
        vec!["--m0", "-1", "verify-algebra"],
        vec!["density-grid", "--epsilon", "0"],
        vec![
            "toa-dist",
            "--p0",
            "1",
            "--x0",
            "-1",
            "--tau-min",
            "5",
            "--tau-max",
            "1",
        ],
        vec!["density-grid", "--plot-script"],
        vec!["--format", "xml", "limits"],
        vec!["--config", "missing.json", "limits"],
    ] {
        let o = rtoa(&args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_rtoa"))
        .arg("limits")
        .env("RTOA_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unconverged_cells_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("strict.json"),
        r#"{"max_subdivisions": 1, "abs_tol": 1e-15, "rel_tol": 0.0}"#,
    )
    .unwrap();
    let o = rtoa(
        &[
            "--config",
            "strict.json",
            "density-grid",
            "--nx",
            "3",
            "--nt",
            "3",
            "-o",
            "d.csv",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(dir.path().join("d.csv").exists());
}

#[test]
fn help_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let o = rtoa(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    for sub in [
        "verify-algebra",
        "verify-spectral",
        "eigenfunction",
        "density-grid",
        "toa-dist",
        "limits",
    ] {
        assert!(stdout(&o).contains(sub));
    }
}

#[test]
fn in_process_entry_point() {
    assert_eq!(rtoa_cli::run(["rtoa", "limits", "--c-ladder", "10"]), 1);
}
