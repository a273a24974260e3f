use std::fs;
use std::process::Command;

use scramble_cli::bundled;

fn scramble() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scramble"))
}

const SMALL: &str = r#"
name = "small"
[engine]
kind = "clifford-1d"
[params]
L = [8, 16]
periods = "L^2/2"
samples = 16
trajectories = 24
seed = 11
[analysis.collapse]
z = 2
alpha = 1
"#;

#[test]
fn missing_seed_exits_2_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noseed.toml");
    fs::write(&path, SMALL.replace("seed = 11\n", "")).unwrap();
    let out = scramble().args(["run", path.to_str().unwrap(), "--out"]).arg(dir.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("`seed`"), "{err}");
}

#[test]
fn seed_flag_fills_a_missing_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noseed.toml");
    fs::write(&path, SMALL.replace("seed = 11\n", "")).unwrap();
    let out = scramble().args(["run", path.to_str().unwrap(), "--seed", "5", "--out"]).arg(dir.path().join("o")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("o/small_L8.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",5"), "{csv}");
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let out = scramble().args(["run", "no-such-spec"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_is_sorted_and_complete() {
    let out = scramble().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), bundled::BUNDLED.len());
}

#[test]
fn bundled_specs_validate() {
    for (name, text) in bundled::BUNDLED {
        assert!(text.starts_with("# Figure"), "{name} lacks a figure header");
        let spec = scramble_cli::ExperimentSpec::parse(text, name, None).unwrap();
        assert_eq!(&spec.name, name);
        for &l in &spec.params.sizes {
            spec.periods(l).unwrap();
        }
    }
}

#[test]
fn outputs_do_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.toml");
    fs::write(&path, SMALL).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out_dir = dir.path().join(format!("t{threads}"));
        let st = scramble()
            .args(["--threads", threads, "run", path.to_str().unwrap(), "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(st.status.success());
        let files: Vec<Vec<u8>> = ["small_L8.csv", "small_L16.csv", "fit_report.json"]
            .iter()
            .map(|f| fs::read(out_dir.join(f)).unwrap())
            .collect();
        outputs.push(files);
    }
    assert_eq!(outputs[0], outputs[1]);
    let report: serde_json::Value = serde_json::from_slice(&outputs[0][2]).unwrap();
    let entry = &report[0];
    for key in ["quantity", "estimate", "stderr", "window", "r2", "inputs"] {
        assert!(entry.get(key).is_some(), "{key}");
    }
}

#[test]
fn master_run_writes_monte_carlo_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.toml");
    fs::write(
        &path,
        r#"
name = "m"
[engine]
kind = "master-exact"
[params]
L = [6]
A = 0.25
B = 0.25
delta_t = 0.01
horizon = 2
samples = 4
trajectories = 2000
compare_mc = true
seed = 1
"#,
    )
    .unwrap();
    let out = scramble().args(["run", path.to_str().unwrap(), "--out"]).arg(dir.path().join("o")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("o/m_L6_mc.csv").exists());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("o/fit_report.json")).unwrap()).unwrap();
    assert!(report[0]["estimate"].as_f64().unwrap() < 5.0);
}
