use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use poincare_seqtest::cli::RunManifest;
use poincare_seqtest::dynamics::{registry, SystemDefinition};

fn seqtest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqtest")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn henon_run_writes_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("henon.csv");
    let manifest = dir.path().join("henon.json");
    let out = seqtest(&[
        "run", "--system", "henon", "--k-max", "2", "--horizon", "200000",
        "--csv", path_str(&csv), "--out", path_str(&manifest),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("status: confirmed(k=2)"), "{stdout}");
    assert!(stdout.contains("largest convergence value: 7"), "{stdout}");

    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,k,inv_k,conv,sep,delta,sep_distance\n"));
    let rows = csv_rows(&text);
    let triples: Vec<_> = rows.iter().map(|r| (r[1].as_str(), r[3].as_str(), r[4].as_str())).collect();
    assert_eq!(triples, [("1", "2", "180"), ("2", "7", "181")]);

    let m: RunManifest = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m.convergence.len(), 2);
    assert_eq!(m.config.horizon, 200_000);
    assert_eq!(m.system.name.as_deref(), Some("henon"));
}

#[test]
fn logistic_rows_selection() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("l.csv");
    let out = seqtest(&[
        "run", "--system", "logistic", "--k-max", "10", "--horizon", "100000",
        "--csv", path_str(&csv), "--rows", "1,10",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&fs::read_to_string(&csv).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[1][0].as_str(), rows[1][1].as_str()), ("2", "10"));
    assert_eq!((rows[1][3].as_str(), rows[1][4].as_str()), ("40", "45"));
}

#[test]
fn rerun_from_manifest_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (csv1, csv2, manifest) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("m.json"));
    let out = seqtest(&[
        "run", "--system", "rossler", "--k-max", "5", "--horizon", "2000000",
        "--csv", path_str(&csv1), "--out", path_str(&manifest),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = seqtest(&["run", "--from-manifest", path_str(&manifest), "--csv", path_str(&csv2)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read(&csv1).unwrap(), fs::read(&csv2).unwrap());

    // grid times print as multiples of h
    let rows = csv_rows(&fs::read_to_string(&csv1).unwrap());
    assert_eq!(rows[0][3], "64.37");
    assert_eq!(rows[0][4], "20.85");
}

#[test]
fn truncated_run_exits_2() {
    let out = seqtest(&["run", "--system", "henon", "--k-max", "2", "--horizon", "100"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("truncated at separation (n=1)"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["run", "--system", "nosuch"][..],
        &["run"],
        &["run", "--system", "henon", "--seed", "1"],
        &["run", "--system", "henon", "--dt", "0.1"],
        &["run", "--system", "rossler", "--dt", "-1"],
        &["frobnicate"],
        &["closeness", "--system", "henon", "--gamma", "7", "--window", "5", "--threshold", "0.1"],
        &["distances", "--system", "henon"],
    ] {
        let out = seqtest(args);
        assert_eq!(code(&out), 64, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&seqtest(&["--help"])), 0);
    assert_eq!(code(&seqtest(&["--version"])), 0);
    assert_eq!(code(&seqtest(&["run", "--help"])), 0);
}

#[test]
fn divergence_exits_1_with_index() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("blowup.json");
    fs::write(
        &file,
        r#"{"family": "logistic", "parameters": {"r": 10.0}, "initial_condition": [2.0], "eps0": 1.0}"#,
    )
    .unwrap();
    let out = seqtest(&["run", "--system-file", path_str(&file), "--horizon", "1000"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("index"), "{err}");
}

#[test]
fn henon_exceedances_from_manifest_shift() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let exc = dir.path().join("exc.csv");
    let plot = dir.path().join("plot.csv");
    seqtest(&["run", "--system", "henon", "--k-max", "2", "--horizon", "200000", "--out", path_str(&manifest)]);
    let out = seqtest(&[
        "distances", "--system", "henon", "--manifest", path_str(&manifest), "--gamma-k", "2",
        "--coord", "x", "--upto", "180", "--eps0", "2.1",
        "--exceedances", path_str(&exc), "--csv", path_str(&plot),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&fs::read_to_string(&exc).unwrap());
    let idx: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(idx, ["16", "23", "47", "61", "72", "119", "126", "174"]);
    assert_eq!(rows[0][1], "2.4056956028312686");

    let plot = fs::read_to_string(&plot).unwrap();
    assert!(plot.starts_with("t,d_full,d_coord\n"));
    let row181 = plot.lines().nth(182).unwrap();
    assert_eq!(row181, "181,2.547281050151582,2.5126048967691723");
}

#[test]
fn zero_shift_gives_zero_columns_and_one_interval() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let out = seqtest(&["distances", "--system", "ikeda", "--gamma", "0", "--horizon", "500", "--csv", path_str(&plot)]);
    assert_eq!(code(&out), 0);
    for row in csv_rows(&fs::read_to_string(&plot).unwrap()) {
        assert_eq!((row[1].as_str(), row[2].as_str()), ("0", "0"));
    }

    let out = seqtest(&["closeness", "--system", "logistic", "--gamma", "0", "--window", "30,100", "--threshold", "0.1"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][..3], ["interval", "30", "100"]);
}

#[test]
fn closeness_logistic_intervals() {
    let out = seqtest(&["closeness", "--system", "logistic", "--gamma", "40", "--window", "30,100", "--threshold", "0.119"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    let spans: Vec<(&str, &str)> = rows.iter().filter(|r| r[0] == "interval").map(|r| (r[1].as_str(), r[2].as_str())).collect();
    assert_eq!(spans, [("32", "37"), ("57", "58"), ("65", "66"), ("79", "80"), ("94", "98")]);
    assert_eq!(rows.last().unwrap()[5], "0.11879070461022984");
}

#[test]
fn lyapunov_summary_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("l.json");
    let out = seqtest(&["lyapunov", "--system", "henon", "--steps", "200000", "--out", path_str(&json)]);
    assert_eq!(code(&out), 0);
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.starts_with("henon: largest Lyapunov exponent "), "{line}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let lambda = v["estimate"]["exponent"].as_f64().unwrap();
    assert!(lambda > 0.3 && lambda < 0.5, "{lambda}");

    let id = dir.path().join("id.json");
    fs::write(&id, r#"{"family": "identity", "initial_condition": [0.4, 0.1]}"#).unwrap();
    let out = seqtest(&["lyapunov", "--system-file", path_str(&id), "--steps", "5000", "--out", path_str(&json)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["estimate"]["exponent"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn list_systems_plain_and_json_round_trip() {
    let out = seqtest(&["list-systems"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);

    let out = seqtest(&["list-systems", "--json"]);
    let defs = SystemDefinition::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(defs.len(), 6);
    for (def, entry) in defs.iter().zip(registry()) {
        let h = if entry.system.is_discrete() { 1.0 } else { 0.01 };
        let reloaded = def.to_system().unwrap().trajectory(&def.initial_state(), h, 2000).unwrap();
        let original = entry.system.trajectory(&entry.initial_condition, h, 2000).unwrap();
        assert_eq!(reloaded, original, "{}", entry.name);
        assert_eq!(def.eps0, Some(entry.eps0));
        assert_eq!(def.t_fix, Some(entry.t_fix));
    }
}
