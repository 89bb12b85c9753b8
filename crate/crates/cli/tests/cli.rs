use std::fs;
use std::path::Path;
use std::process::Command;

use icav::{sweep, AtomCavityParams, DetuningGrid, Model};
use icav_cli::config::{parse_config, Format};
use icav_cli::output::{emit_spectrum, parse_spectrum_json};
use icav_cli::run::{compare, rabi_scan, run};

const BIN: &str = env!("CARGO_BIN_EXE_icav");

fn config_text(out: &Path, params: &str, grid: &str, models: &str, extra: &str) -> String {
    format!(
        r#"{{
  "params": {params},
  "grid": {grid},
  "models": {models},
  "output_path": {out:?}{extra}
}}"#
    )
}

fn fig2_text(out: &Path) -> String {
    config_text(
        out,
        r#"{"n_atoms": 400, "g": 1, "omega_c": 5, "kappa": 1, "gamma_e": 1, "gamma_s": 0}"#,
        r#"{"min": -0.5, "max": 0.5, "points": 2001}"#,
        r#"["analytic-dark", "full-linear"]"#,
        "",
    )
}

fn icav(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

#[test]
fn five_point_csv_has_six_lines() {
    let dir = tempfile::tempdir().unwrap();
    let p = AtomCavityParams::new(0, 1.0, 1.0, 1.0, 1.0);
    let s = sweep(&p, &DetuningGrid::new(-2.0, 2.0, 5).unwrap(), Model::AnalyticDark).unwrap();
    let path = dir.path().join("s.csv");
    emit_spectrum(&s, Format::Csv, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("delta,transmission,model\n"));
}

#[test]
fn json_spectrum_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let p = AtomCavityParams::new(400, 1.0, 0.5, 1.0, 1.0).with_gamma_s(1e-3);
    let s = sweep(&p, &DetuningGrid::new(-0.01, 0.01, 257).unwrap(), Model::FullLinear).unwrap();
    let path = dir.path().join("s.json");
    emit_spectrum(&s, Format::Json, &path).unwrap();
    let back = parse_spectrum_json(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, s);
    for (a, b) in back.transmission.iter().zip(&s.transmission) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn emit_surfaces_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = AtomCavityParams::new(0, 1.0, 1.0, 1.0, 1.0);
    let s = sweep(&p, &DetuningGrid::new(-2.0, 2.0, 5).unwrap(), Model::AnalyticDark).unwrap();
    let err = emit_spectrum(&s, Format::Csv, &dir.path().join("missing/s.csv")).unwrap_err();
    assert_eq!(err.exit_code(), 4);
}

#[test]
fn fig2_run_models_agree() {
    let dir = tempfile::tempdir().unwrap();
    let config = parse_config(&fig2_text(&dir.path().join("out"))).unwrap();
    let out = run(&config).unwrap();
    assert_eq!(out.files.len(), 5);
    assert_eq!(out.summary.pairs.len(), 1);
    assert!(out.summary.pairs[0].relative_difference < 0.02);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/report-full-linear.json")).unwrap()).unwrap();
    assert_eq!(report["model"], "full-linear");
    assert_eq!(report["params_snapshot"]["atom_cavity"]["n_atoms"], 400);
    assert_eq!(report["regime"]["label"], "collective-strong");
}

#[test]
fn empty_cavity_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = config_text(
        &dir.path().join("out"),
        r#"{"n_atoms": 0, "g": 1, "omega_c": 1, "kappa": 1, "gamma_e": 1}"#,
        r#"{"min": -10, "max": 10, "points": 4001}"#,
        r#"["analytic-dark", "full-linear"]"#,
        r#", "format": "json""#,
    );
    let out = run(&parse_config(&text).unwrap()).unwrap();
    let [a, b] = [&out.summary.fwhm[0], &out.summary.fwhm[1]];
    assert!((a.fwhm - 2.0).abs() < 2e-3);
    assert!((a.fwhm - b.fwhm).abs() < 1e-12);
    let analytic = parse_spectrum_json(&fs::read_to_string(dir.path().join("out/spectrum-analytic-dark.json")).unwrap()).unwrap();
    let full = parse_spectrum_json(&fs::read_to_string(dir.path().join("out/spectrum-full-linear.json")).unwrap()).unwrap();
    for (x, y) in analytic.transmission.iter().zip(&full.transmission) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn semiclassical_model_runs() {
    let dir = tempfile::tempdir().unwrap();
    let text = config_text(
        &dir.path().join("out"),
        r#"{"n_atoms": 400, "g": 1, "omega_c": 5, "kappa": 1, "gamma_e": 1}"#,
        r#"{"min": -0.5, "max": 0.5, "points": 2001}"#,
        r#"["semiclassical", "analytic-dark"]"#,
        r#", "semiclassical": {"length_medium": 1, "length_cavity": 1, "reflectivity": 0.99, "omega_r": 1,
            "chi_prefactor": 800, "gamma_e": 1, "omega_c": 5, "probe_frequency": 1}"#,
    );
    let out = run(&parse_config(&text).unwrap()).unwrap();
    // C = 2L·Ng²/(l·ω_r) = 800 makes both widths 2κ·cos²θ.
    assert!(out.summary.pairs[0].relative_difference < 1e-3);
    let report = fs::read_to_string(dir.path().join("out/report-semiclassical.json")).unwrap();
    assert!(report.contains("chi_prefactor"));
}

#[test]
fn rabi_and_compare_helpers() {
    let p = AtomCavityParams::new(400, 1.0, 5.0, 1.0, 1.0);
    let scan = rabi_scan(&p, 4000, 1.25).unwrap();
    assert_eq!(scan.peaks.len(), 3);
    assert!((scan.peaks[2].position - scan.expected_splitting).abs() < 0.1);

    let rows = compare(&p, None, &[5.0, 0.5], 4001).unwrap();
    for row in rows {
        assert!((row.analytic_ratio - row.cos2_theta).abs() < 1e-15);
        assert!((row.semiclassical_ratio - row.cos2_theta).abs() < 1e-6 * row.cos2_theta);
        assert!((row.full_linear_ratio - row.cos2_theta).abs() < 0.02 * row.cos2_theta);
    }
}

#[test]
fn cli_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig2.json");
    fs::write(&cfg, fig2_text(&dir.path().join("unused"))).unwrap();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let o = icav(&["spectrum", "-c", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let mut names: Vec<_> = fs::read_dir(dir.path().join("a"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for name in names {
        let a = fs::read(dir.path().join("a").join(&name)).unwrap();
        let b = fs::read(dir.path().join("b").join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
}

#[test]
fn unwritable_output_leaves_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("not-a-dir");
    fs::write(&blocker, "x").unwrap();
    let cfg = dir.path().join("fig2.json");
    fs::write(&cfg, fig2_text(&blocker.join("out"))).unwrap();
    let o = icav(&["spectrum", "-c", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn failed_write_rolls_back_earlier_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    // A directory where a report should go makes that write fail.
    fs::create_dir_all(out.join("report-full-linear.json")).unwrap();
    let config = parse_config(&fig2_text(&out)).unwrap();
    let err = run(&config).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    let left: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(left, vec![std::ffi::OsString::from("report-full-linear.json")]);
}

#[test]
fn exit_codes_by_category() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, fig2_text(dir.path()).replace("\"points\": 2001", "\"points\": 1")).unwrap();
    let o = icav(&["spectrum", "-c", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid.points"));

    // Ω = 0 without ground-state decay is singular on resonance.
    let singular = dir.path().join("singular.json");
    fs::write(&singular, fig2_text(&dir.path().join("s"))).unwrap();
    let o = icav(&["spectrum", "-c", singular.to_str().unwrap(), "--omega-c", "0", "--model", "full-linear"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!dir.path().join("s").exists());

    let o = icav(&["spectrum", "-c", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn subcommands_print_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig2.json");
    fs::write(&cfg, fig2_text(&dir.path().join("out"))).unwrap();
    let c = cfg.to_str().unwrap();

    let o = icav(&["linewidth", "-c", c]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("model,fwhm\nanalytic-dark,"));
    assert!(!dir.path().join("out").exists());

    let o = icav(&["compare", "-c", c, "--omegas", "5,0.5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);

    let o = icav(&["rabi", "-c", c, "--points", "4000"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 5);

    let o = icav(&["linewidth", "-c", c, "--omega-c", "0.5", "--min", "-5e-3", "--max", "5e-3", "--points", "10000"]);
    assert!(o.status.success());
}
