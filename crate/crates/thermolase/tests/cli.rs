//! End-to-end tests of the `thermolase` binary: flags, exit codes, and the
//! on-disk artifact layout.

use std::path::Path;
use std::process::{Command, Output};

use thermolase::harness::TrialSummary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thermolase"))
}

fn short_config() -> &'static str {
    r#"
[beam]
wavelength_um = 10.6
waist_mm = 0.025
power_w = 0.015

[tissue]
preset = "gelatin"

[grid]
dr_mm = 0.1
dz_mm = 0.025
nr = 51
nz = 81

[profile]
target_c = 24.0
hold_duration_s = 2.0

[run]
seed = 3
"#
}

fn run_simulate(config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin()
        .args(["simulate", "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn simulate_writes_the_run_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, short_config()).unwrap();
    let out = dir.path().join("out");

    let output = run_simulate(&config, &out, &[]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));

    for file in ["series.csv", "summary.json", "manifest.json"] {
        assert!(out.join(file).exists(), "{file} missing");
    }
    let summary: TrialSummary =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert!(summary.rmse > 0.0);
    assert_eq!(summary.seed, 3);

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["resolved_seed"], 3);
    assert_eq!(
        manifest["series_columns"],
        "t,r,T_peak,f,I_cmd_Wcm2,I_applied_Wcm2,d_f_mm"
    );

    let series = std::fs::read_to_string(out.join("series.csv")).unwrap();
    let tick_count = (2.0_f64 / 0.01 + 2.0 / 0.01).floor() as usize + 1; // ramp 2 s + hold 2 s
    assert_eq!(series.lines().count(), tick_count + 1);
}

#[test]
fn simulate_seed_override_changes_the_series() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, short_config()).unwrap();

    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    assert!(run_simulate(&config, &out_a, &[]).status.success());
    assert!(run_simulate(&config, &out_b, &["--seed", "99"]).status.success());

    let series_a = std::fs::read(out_a.join("series.csv")).unwrap();
    let series_b = std::fs::read(out_b.join("series.csv")).unwrap();
    assert_ne!(series_a, series_b);

    let summary: TrialSummary =
        serde_json::from_str(&std::fs::read_to_string(out_b.join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary.seed, 99);
}

#[test]
fn missing_key_exits_2_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("broken.toml");
    std::fs::write(
        &config,
        "[beam]\nwavelength_um = 10.6\nwaist_mm = 0.025\n\n[tissue]\npreset = \"gelatin\"\n",
    )
    .unwrap();
    let output = run_simulate(&config, &dir.path().join("out"), &[]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("power_w"), "stderr was: {stderr}");
}

#[test]
fn invalid_value_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("broken.toml");
    std::fs::write(&config, short_config().replace("power_w = 0.015", "power_w = -1.0")).unwrap();
    let output = run_simulate(&config, &dir.path().join("out"), &[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("power"));
}

#[test]
fn sweep_writes_condition_dirs_and_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(
        &config,
        r#"
[sweep]
repetitions = 2

[base.beam]
wavelength_um = 10.6
waist_mm = 0.025
power_w = 0.015

[base.tissue]
preset = "gelatin"

[base.grid]
dr_mm = 0.1
dz_mm = 0.025
nr = 51
nz = 81

[base.profile]
target_c = 24.0
hold_duration_s = 2.0

[[condition]]
name = "gelatin"

[[condition]]
name = "muscle"
tissue = { preset = "muscle" }
"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let output = bin()
        .args(["sweep", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("THERMOLASE_THREADS", "2")
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));

    let aggregate = std::fs::read_to_string(out.join("aggregate.csv")).unwrap();
    let lines: Vec<&str> = aggregate.lines().collect();
    assert_eq!(lines[0], "condition,mean_rmse,std_rmse");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("gelatin,"));
    assert!(lines[2].starts_with("muscle,"));

    // Aggregate mean equals the hand-average of the per-trial summaries.
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        let mut sum = 0.0;
        for i in 0..2 {
            let path = out.join(fields[0]).join(format!("trial_{i:02}")).join("summary.json");
            let summary: TrialSummary =
                serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
            sum += summary.rmse;
        }
        let mean: f64 = fields[1].parse().unwrap();
        assert!((mean - sum / 2.0).abs() < 1e-15);
    }
    assert!(out.join("manifest.json").exists());
}

#[test]
fn spot_table_prints_the_expected_rows() {
    let output = bin()
        .args([
            "spot-table",
            "--wavelength-um", "10.6",
            "--waist-mm", "0.2",
            "--power-w", "3.0",
            "--max-df-mm", "23.71",
            "--step-mm", "23.71",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "d_f_mm,spot_radius_mm,peak_intensity_Wcm2");
    assert_eq!(lines.len(), 3);

    // At focus: spot = waist, intensity = 2P/(pi w^2) = 4774.6 W/cm².
    let focus: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(focus[0], 0.0);
    assert!((focus[1] - 0.2).abs() < 1e-12);
    assert!((focus[2] - 4774.65).abs() / 4774.65 < 1e-4);

    // At ~2 Rayleigh ranges the intensity is a fifth of the focused value.
    let defocused: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((defocused[0] - 23.71).abs() < 1e-12);
    assert!((defocused[2] - 954.93).abs() / 954.93 < 1e-3);
}

#[test]
fn spot_table_rejects_bad_parameters() {
    let output = bin()
        .args([
            "spot-table",
            "--wavelength-um", "10.6",
            "--waist-mm", "-0.2",
            "--power-w", "3.0",
            "--max-df-mm", "10.0",
            "--step-mm", "1.0",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}
