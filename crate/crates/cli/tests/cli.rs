use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use submodkit::datasets::clusters_with_outliers;
use submodkit::functions::FacilityLocation;
use submodkit::kernel::{build_dense_kernel, Metric};
use submodkit::{maximize, OptimizeSpec};
use submodkit_cli::{run_selection, FunctionKind, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_submodkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn points_csv(dir: &Path) -> PathBuf {
    let d = clusters_with_outliers(3);
    let text: String = (0..d.len()).map(|i| format!("{},{}\n", d.data.row(i)[0], d.data.row(i)[1])).collect();
    let path = dir.join("points.csv");
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn facility_location_on_48_points() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let v = json(&run(&["--function", "fl", "--budget", "10", "--data", data.to_str().unwrap()]));
    let sel = v["selection"].as_array().unwrap();
    assert_eq!(sel.len(), 10);
    let gains: Vec<f64> = sel.iter().map(|p| p["gain"].as_f64().unwrap()).collect();
    assert!(gains.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{gains:?}");
    let mut idx: Vec<u64> = sel.iter().map(|p| p["index"].as_u64().unwrap()).collect();
    idx.sort_unstable();
    idx.dedup();
    assert_eq!(idx.len(), 10);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["evaluations", "function", "optimizer", "selection", "wall_ms"]);
    assert_eq!(v["optimizer"], "naive");
    assert_eq!(v["function"], "facility_location");
}

#[test]
fn zero_budget_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let out = run(&["--budget", "0", "--data", data.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn stochastic_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let outputs: Vec<Vec<u8>> = ["a.json", "b.json"]
        .iter()
        .map(|name| {
            let path = dir.path().join(name);
            let out = run(&[
                "--optimizer", "stochastic", "--epsilon", "0.2", "--seed", "11", "--budget", "6", "--omit-timing",
                "--data", data.to_str().unwrap(), "--output", path.to_str().unwrap(),
            ]);
            assert!(out.status.success());
            std::fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert!(!String::from_utf8_lossy(&outputs[0]).contains("wall_ms"));
}

#[test]
fn malformed_csv_names_file_and_row() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "1,2\n3,oops\n").unwrap();
    let out = run(&["--budget", "1", "--data", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv") && err.contains("row 1"), "{err}");
}

#[test]
fn inconsistent_configs_fail() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let d = data.to_str().unwrap();
    for args in [
        vec!["--function", "flvmi", "--budget", "2", "--data", d],
        vec!["--mode", "sparse", "--budget", "2", "--data", d],
        vec!["--function", "flqmi", "--mode", "clustered", "--clusters", "2", "--budget", "2", "--data", d],
        vec!["--optimizer", "stochastic", "--budget", "2", "--data", d],
        vec!["--function", "nope", "--budget", "2", "--data", d],
    ] {
        assert!(!run(&args).status.success(), "{args:?}");
    }
}

#[test]
fn library_and_cli_agree() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let v = json(&run(&["--optimizer", "lazy", "--budget", "7", "--data", data.to_str().unwrap()]));

    let mut cfg = RunConfig::new(FunctionKind::FacilityLocation, OptimizeSpec::lazy(7));
    cfg.data = Some(data.clone());
    let report = run_selection(&cfg, false).unwrap();
    let direct = maximize(
        &FacilityLocation::new(&build_dense_kernel(&clusters_with_outliers(3).data, Metric::Euclidean).unwrap()),
        &OptimizeSpec::lazy(7),
    )
    .unwrap();
    let cli: Vec<u64> = v["selection"].as_array().unwrap().iter().map(|p| p["index"].as_u64().unwrap()).collect();
    let lib: Vec<u64> = report.selection.iter().map(|p| p.index as u64).collect();
    assert_eq!(cli, lib);
    assert_eq!(direct.elements().into_iter().map(|e| e as u64).collect::<Vec<_>>(), lib);
    assert_eq!(v["evaluations"].as_u64().unwrap(), direct.evaluations);
}

#[test]
fn kernel_modes_and_information_functions() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let query = dir.path().join("query.csv");
    std::fs::write(&query, "2,2\n18,18\n").unwrap();
    let private = dir.path().join("private.csv");
    std::fs::write(&private, "10,10\n").unwrap();
    let (d, q, p) = (data.to_str().unwrap(), query.to_str().unwrap(), private.to_str().unwrap());
    let cases: Vec<Vec<&str>> = vec![
        vec!["--mode", "sparse", "--k-neighbors", "5"],
        vec!["--mode", "clustered", "--clusters", "5"],
        vec!["--function", "gc", "--mode", "clustered", "--clusters", "5", "--lambda", "0.3"],
        vec!["--function", "logdet"],
        vec!["--function", "dsum"],
        vec!["--function", "flvmi", "--query-data", q],
        vec!["--function", "flqmi", "--query-data", q, "--eta", "0"],
        vec!["--function", "gcmi", "--query-data", q],
        vec!["--function", "com", "--query-data", q],
        vec!["--function", "logdetmi", "--query-data", q],
        vec!["--function", "flcg", "--private-data", p, "--nu", "2"],
        vec!["--function", "logdetcg", "--private-data", p],
        vec!["--function", "flcmi", "--query-data", q, "--private-data", p],
        vec!["--function", "logdetcmi", "--query-data", q, "--private-data", p],
    ];
    for extra in cases {
        let mut args = vec!["--budget", "4", "--data", d];
        args.extend(&extra);
        let v = json(&run(&args));
        assert!(!v["selection"].as_array().unwrap().is_empty(), "{extra:?}");
    }

    // feature-based needs nonnegative scores
    assert!(!run(&["--function", "fb", "--budget", "2", "--data", d]).status.success());
    let counts = dir.path().join("counts.csv");
    std::fs::write(&counts, "1,0,2\n0,3,0\n1,1,1\n").unwrap();
    let v = json(&run(&["--function", "fb", "--concave", "log1p", "--budget", "2", "--data", counts.to_str().unwrap()]));
    assert_eq!(v["selection"].as_array().unwrap().len(), 2);
}

#[test]
fn concept_functions() {
    let dir = TempDir::new().unwrap();
    let sc = dir.path().join("sc.json");
    std::fs::write(&sc, r#"{"num_concepts": 3, "weights": [1, 1, 1], "covers": [[0, 1], [1, 2], [2]]}"#).unwrap();
    let v = json(&run(&["--function", "sc", "--budget", "2", "--concepts", sc.to_str().unwrap()]));
    assert_eq!(v["selection"][0]["index"], 0);
    let v = json(&run(&[
        "--function", "scmi", "--budget", "1", "--concepts", sc.to_str().unwrap(), "--query-concepts", "2",
    ]));
    assert_eq!(v["selection"][0]["index"], 1);
    let psc = dir.path().join("psc.json");
    std::fs::write(&psc, r#"{"num_concepts": 2, "weights": [1, 1], "probs": [[[0, 0.5]], [[1, 0.9]]]}"#).unwrap();
    let v = json(&run(&[
        "--function", "psccg", "--budget", "1", "--concepts", psc.to_str().unwrap(), "--private-concepts", "1",
    ]));
    assert_eq!(v["selection"][0]["index"], 0);
}

#[test]
fn benchmark_reports() {
    let dir = TempDir::new().unwrap();
    let data = points_csv(dir.path());
    let csv = dir.path().join("bench.csv");
    let v = json(&run(&[
        "--benchmark", "--budget", "5", "--data", data.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]));
    assert_eq!(v["runs"].as_array().unwrap().len(), 4);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 5);

    let sweep = dir.path().join("sweep.csv");
    let v = json(&run(&[
        "--benchmark", "--sweep", "20,40", "--budget", "5", "--optimizer", "lazy", "--csv", sweep.to_str().unwrap(),
    ]));
    assert_eq!(v["points"][1]["n"], 40);
    assert!(std::fs::read_to_string(&sweep).unwrap().starts_with("n,budget,optimizer,kernel_ms,select_ms"));
}
