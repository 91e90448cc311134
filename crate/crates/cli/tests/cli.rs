use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bhlab_cli::{run_experiment, Engine, EngineStatus, ExperimentConfig};
use tempfile::TempDir;

const BASE: &str = r#"
name = "cmp"
engines = ["ed", "gp", "pendulum", "revival"]

[model]
eps = 1.0
g = 0.5
n_total = 60

[grid]
t_max = 3.0
dt = 0.05
substeps = 10

[sweep]
g = [0.5, 3.0]
"#;

fn bhlab(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhlab")).args(args).env("BHLAB_OUTPUT_DIR", out_dir).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("experiment.toml");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn sorted_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> =
        fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn identical_configs_give_byte_identical_outputs() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), BASE);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(bhlab(&["run", &cfg], &a).status.success());
    assert!(bhlab(&["run", &cfg], &b).status.success());
    let files = sorted_files(&a);
    assert_eq!(files, sorted_files(&b));
    assert_eq!(files.len(), 2 * 4 + 1);
    for f in files {
        assert_eq!(fs::read(a.join(&f)).unwrap(), fs::read(b.join(&f)).unwrap(), "{f}");
    }
}

#[test]
fn csv_schema_starts_with_time() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), BASE);
    assert!(bhlab(&["run", &cfg], tmp.path()).status.success());
    let text = fs::read_to_string(tmp.path().join("cmp_g0.5_N60_ed.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,rho1,n12_over_N,q_re,q_im,norm");
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    for (got, want) in first.iter().zip([0.0, 1.0, 1.0, 0.0, 0.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert_eq!(text.lines().count(), 1 + 61);
}

#[test]
fn json_output_format() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &BASE.replace("[sweep]", "[output]\nformat = \"json\"\n\n[sweep]"));
    assert!(bhlab(&["run", &cfg], tmp.path()).status.success());
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("cmp_g3_N60_pendulum.json")).unwrap()).unwrap();
    assert_eq!(v["t"].as_array().unwrap().len(), 61);
    assert_eq!(v["rho1"][0].as_f64(), Some(1.0));
}

#[test]
fn report_records_regimes_and_deviations() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), BASE);
    assert!(bhlab(&["run", &cfg], tmp.path()).status.success());
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("cmp_report.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["points"][0]["regime"], "oscillatory");
    assert_eq!(v["points"][1]["regime"], "self-trapped");
    let devs = v["points"][0]["deviations"].as_array().unwrap();
    let gp_pend = devs.iter().find(|d| d["a"] == "gp" && d["b"] == "pendulum" && d["observable"] == "rho1").unwrap();
    assert!(gp_pend["sup"].as_f64().unwrap() < 1e-8);
}

#[test]
fn deviations_do_not_depend_on_engine_order() {
    let tmp = TempDir::new().unwrap();
    let fwd = ExperimentConfig::from_toml_str(BASE).unwrap();
    let mut rev = fwd.clone();
    rev.engines.reverse();
    let a = run_experiment(&fwd, &tmp.path().join("f")).unwrap();
    let b = run_experiment(&rev, &tmp.path().join("r")).unwrap();
    for (pa, pb) in a.points.iter().zip(&b.points) {
        assert_eq!(pa.deviations.len(), pb.deviations.len());
        for d in &pa.deviations {
            let e = pb.deviation(d.b, d.a, &d.observable).unwrap();
            assert_eq!((d.sup, d.rms), (e.sup, e.rms));
        }
    }
}

#[test]
fn empty_engine_list_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &BASE.replace(r#"["ed", "gp", "pendulum", "revival"]"#, "[]"));
    let out = bhlab(&["run", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least one engine"));
}

#[test]
fn unknown_keys_and_bad_sweeps_are_usage_errors() {
    let tmp = TempDir::new().unwrap();
    for text in [
        BASE.replace("eps = 1.0", "eps = 1.0\nepsilon = 2.0"),
        BASE.replace("g = [0.5, 3.0]", "g = []"),
        BASE.replace("t_max = 3.0", "t_max_over_pi = 1.0\nt_max = 3.0"),
    ] {
        let cfg = write_config(tmp.path(), &text);
        assert_eq!(bhlab(&["run", &cfg], tmp.path()).status.code(), Some(2), "{text}");
    }
    assert_eq!(bhlab(&["run", "/nonexistent/config.toml"], tmp.path()).status.code(), Some(1));
    assert_eq!(bhlab(&["preset", "fig-99"], tmp.path()).status.code(), Some(2));
    assert_eq!(bhlab(&["frobnicate"], tmp.path()).status.code(), Some(2));
}

#[test]
fn failed_engine_leaves_marker_and_partial_results() {
    let tmp = TempDir::new().unwrap();
    let text = BASE.replace(r#"["ed", "gp", "pendulum", "revival"]"#, r#"["ed", "closed_form"]"#);
    let cfg = ExperimentConfig::from_toml_str(&text).unwrap();
    let report = run_experiment(&cfg, tmp.path()).unwrap();
    assert!(!report.passed);
    let p = &report.points[0];
    assert_eq!(p.engines[0].status, EngineStatus::Ok);
    assert_eq!(p.engines[1].status, EngineStatus::Failed);
    assert!(tmp.path().join("cmp_g0.5_N60_ed.csv").exists());
    let marker = fs::read_to_string(tmp.path().join("cmp_g0.5_N60_closed_form.failed")).unwrap();
    assert!(marker.contains("one site"));

    let path = write_config(tmp.path(), &text);
    assert_eq!(bhlab(&["run", &path], &tmp.path().join("bin")).status.code(), Some(1));
}

#[test]
fn declared_tolerances_decide_the_exit_code() {
    let tmp = TempDir::new().unwrap();
    let loose =
        format!("{BASE}\n[[tolerances]]\nengines = [\"gp\", \"pendulum\"]\nobservable = \"rho1\"\nmax_sup = 1e-6\n");
    let cfg = write_config(tmp.path(), &loose);
    assert_eq!(bhlab(&["run", &cfg], tmp.path()).status.code(), Some(0));
    let tight =
        format!("{BASE}\n[[tolerances]]\nengines = [\"ed\", \"pendulum\"]\nobservable = \"rho1\"\nmax_sup = 1e-6\n");
    let cfg = write_config(tmp.path(), &tight);
    let out = bhlab(&["run", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL ed vs pendulum rho1"));

    let cfg = ExperimentConfig::from_toml_str(&tight).unwrap();
    let report = run_experiment(&cfg, tmp.path()).unwrap();
    let check = &report.points[0].checks[0];
    assert_eq!(check.engines, [Engine::Ed, Engine::Pendulum]);
    assert!(check.observed.unwrap() > 1e-6 && !check.passed);
}

#[test]
fn verify_passes_by_default() {
    let tmp = TempDir::new().unwrap();
    let out = bhlab(&["verify", "--json"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed"], 0);
}

#[test]
fn verify_detects_asymmetric_hopping() {
    let tmp = TempDir::new().unwrap();
    let out = bhlab(&["verify", "--json", "--inject-asymmetric-hopping"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["girsanov_identity", "hopping_conserves_norm"]);
}

#[test]
fn verify_reports_unreachable_quadrature_tolerance() {
    let tmp = TempDir::new().unwrap();
    let out = bhlab(&["verify", "--json", "--quadrature-tolerance", "1e-16"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let fresnel = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "fresnel_identity").unwrap();
    assert_eq!(fresnel["passed"], false);
    assert_eq!(fresnel["tolerance"].as_f64(), Some(1e-16));
    assert!(fresnel["observed"].as_f64().unwrap() > 1e-16);
}

#[test]
fn list_presets_names_every_figure() {
    let tmp = TempDir::new().unwrap();
    let out = bhlab(&["list-presets"], tmp.path());
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["fig-4", "fig-5.1.1", "fig-5.1.2", "fig-5.3.1", "fig-5.3.2", "fig-5.3.3"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn single_site_preset_runs_end_to_end() {
    let tmp = TempDir::new().unwrap();
    let out = bhlab(&["preset", "fig-4"], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(tmp.path().join("fig-4_g0.5_N20_closed_form.csv").exists());
    assert!(tmp.path().join("fig-4_report.json").exists());
}

#[test]
fn shipped_example_config_runs() {
    let cfg = ExperimentConfig::from_toml_str(include_str!("../configs/self-trapping.toml")).unwrap();
    let tmp = TempDir::new().unwrap();
    let report = run_experiment(&cfg, tmp.path()).unwrap();
    assert!(report.passed);
    let labels: Vec<_> = report.points.iter().map(|p| p.regime.clone().unwrap()).collect();
    assert_eq!(labels, ["oscillatory", "oscillatory", "self-trapped", "self-trapped"]);
}
