//! End-to-end tests that drive the `tl-align` binary the way a user would.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tl-align")
}

fn write_cfg(dir: &TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("instrument.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut command = Command::new(bin());
    command.args(args);
    for (key, value) in envs {
        command.env(key, value);
    }
    command.output().unwrap()
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn csv_cell(line: &str, column: usize) -> f64 {
    line.split(',').nth(column).unwrap().parse().unwrap()
}

fn criterion_line<'a>(text: &'a str, name: &str) -> &'a str {
    text.lines()
        .find(|line| line.starts_with(name))
        .unwrap_or_else(|| panic!("no `{name}` row in:\n{text}"))
}

const ORACLE_CFG: &str = "\
[beam]
velocity_sigma = 1 m/s
[geometry]
gravity_roll = 30 urad
[vibration]
amplitude_g1 = 20 nm
amplitude_g3 = 20 nm
common_amplitude = 5 nm
common_frequency = 40 Hz
";

#[test]
fn budget_on_the_reference_instrument_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let output = run(&["budget", cfg.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    for row in [
        "slit count",
        "intensity stability",
        "grating separation",
        "grating roll",
        "grating yaw",
        "grating pitch",
        "gravity roll",
        "pass distance",
        "mirror flatness",
        "beam height",
    ] {
        assert!(criterion_line(&text, row).ends_with("yes"), "`{row}` not passing");
    }
    assert!(text.contains("total visibility"));
}

#[test]
fn budget_csv_has_a_fixed_schema() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let output = run(&["budget", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "record,name,restriction,limit,configured,margin,pass,relaxed_limit,value"
    );
    let columns = header.split(',').count();
    for line in lines {
        assert_eq!(line.split(',').count(), columns, "ragged row `{line}`");
    }
    assert!(text.lines().last().unwrap().starts_with("total,total visibility,"));
}

#[test]
fn strict_budget_fails_on_a_misaligned_instrument() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "[geometry]\nroll = 0.1 mrad\n");
    let relaxed = run(&["budget", cfg.to_str().unwrap()]);
    assert_eq!(relaxed.status.code(), Some(0));
    assert!(criterion_line(&stdout_text(&relaxed), "grating roll").ends_with("no"));
    let strict = run(&["budget", cfg.to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn config_errors_exit_two_with_line_numbers() {
    let dir = TempDir::new().unwrap();

    let cfg = write_cfg(&dir, "[beam]\nspeed = 100\n");
    let output = run(&["budget", cfg.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = stderr_text(&output);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("unknown key `speed`"), "{err}");

    let cfg = write_cfg(&dir, "[laser]\nwavelength = 266 Hz\n");
    let output = run(&["budget", cfg.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("line 2"));

    let cfg = write_cfg(&dir, "[laser]\nwavelength = 532 nm\nperiod = 133 nm\n");
    let output = run(&["budget", cfg.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = stderr_text(&output);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("period"), "{err}");

    let output = run(&["budget", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn check_config_resolves_units_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(
        &dir,
        "[beam]\nmass = 100 kDa\nvelocity = 100 m/s\n[laser]\nwaist_x = 15 um\n",
    );
    let first = run(&["check-config", cfg.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_text(&first);
    assert!(text.contains("mass = 1.6605390666e-22"), "{text}");
    assert!(text.contains("waist_x = 1.5e-5"), "{text}");

    // the echoed document must parse back to the same instrument
    let echoed = write_cfg(&dir, &text);
    let second = run(&["check-config", echoed.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn oracle_runs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, ORACLE_CFG);
    let args = ["oracle", cfg.to_str().unwrap(), "--samples", "20000"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr_text(&first));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_text(&first);
    for row in [
        "gravity roll",
        "coriolis spread",
        "independent vibration",
        "common-mode vibration",
    ] {
        assert!(text.contains(row), "missing `{row}` in:\n{text}");
    }
    assert!(text.contains("rng chacha8"));

    let reseeded = run(&["oracle", cfg.to_str().unwrap(), "--samples", "20000", "--seed", "7"]);
    assert_ne!(first.stdout, reseeded.stdout);
}

#[test]
fn thread_count_does_not_change_oracle_output() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, ORACLE_CFG);
    let args = ["oracle", cfg.to_str().unwrap(), "--samples", "20000"];
    let single = run_env(&args, &[("TL_ALIGN_THREADS", "1")]);
    let pooled = run_env(&args, &[("TL_ALIGN_THREADS", "4")]);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, pooled.stdout);

    let bad = run_env(&args, &[("TL_ALIGN_THREADS", "zero")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[cfg(debug_assertions)]
#[test]
fn a_corrupted_reference_trips_the_oracle_gate() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, ORACLE_CFG);
    let args = [
        "oracle",
        cfg.to_str().unwrap(),
        "--factor",
        "vib-indep",
        "--samples",
        "20000",
    ];
    let clean = run(&args);
    assert_eq!(clean.status.code(), Some(0));
    let corrupted = run_env(&args, &[("TL_ALIGN_ORACLE_CORRUPT", "1")]);
    assert_eq!(corrupted.status.code(), Some(1));
}

#[test]
fn sweep_crosses_the_roll_blind_spot() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let out = dir.path().join("roll.csv");
    let output = run(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        "geometry.roll",
        "--start",
        "0 mrad",
        "--stop",
        "0.133 mrad",
        "--points",
        "41",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_text(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "geometry.roll,roll_reduction,gravity_roll_reduction,coriolis_reduction,\
         independent_vibration_reduction,common_mode_reduction,total_visibility,\
         roll_limit,gravity_roll_limit"
    );
    assert_eq!(lines.len(), 42);

    // row 20 sits on d/(2H) where the fringe pattern washes out completely
    let blind = lines[1 + 20];
    assert!((csv_cell(blind, 0) - 66.5e-6).abs() < 1e-12);
    assert!(csv_cell(blind, 1).abs() < 1e-9);
    assert!(csv_cell(blind, 6).abs() < 1e-9);

    // the solved roll limit does not depend on the swept roll
    for line in &lines[1..] {
        assert!((csv_cell(line, 7) - 1.665219844192552e-5).abs() < 1e-12);
    }
}

#[test]
fn sweep_finds_the_common_mode_revival() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(
        &dir,
        "[beam]\nvelocity = 90 m/s\n[vibration]\ncommon_amplitude = 10 nm\ncommon_frequency = 10 Hz\n",
    );
    let output = run(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        "vibration.common_frequency",
        "--start",
        "0 Hz",
        "--stop",
        "180 Hz",
        "--points",
        "361",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_text(&output));
    let text = stdout_text(&output);
    let lines: Vec<&str> = text.lines().collect();

    // mirror shake at v/L cycles per transit leaves the same imprint on all
    // three gratings, so the fringes revive
    let revival = lines[1 + 180];
    assert_eq!(csv_cell(revival, 0), 90.0);
    assert!(csv_cell(revival, 5) > 0.999_999_999);

    // an eighth of a cycle per transit picks up half the full phase swing
    let eighth = lines[1 + 45];
    assert_eq!(csv_cell(eighth, 0), 22.5);
    assert!((csv_cell(eighth, 5) - 0.7889672651560621).abs() < 1e-9);
}

#[test]
fn unknown_sweep_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let output = run(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        "beam.flavor",
        "--start",
        "0",
        "--stop",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("no sweepable parameter"));

    let output = run(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        "geometry.roll",
        "--start",
        "10 W",
        "--stop",
        "1 mrad",
    ]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--param",
        "geometry.roll",
        "--start",
        "1 mrad",
        "--stop",
        "0 mrad",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

fn assert_header(dir: &Path, name: &str, header: &str) {
    let text = std::fs::read_to_string(dir.join(name)).unwrap();
    assert_eq!(text.lines().next().unwrap(), header, "in {name}");
    assert!(text.lines().count() > 1, "{name} has no data rows");
}

#[test]
fn figures_writes_the_expected_files() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let out = dir.path().join("figures");
    let output = run(&[
        "figures",
        cfg.to_str().unwrap(),
        "all",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_text(&output));
    assert_eq!(stdout_text(&output).matches("wrote ").count(), 7);

    for i in 1..=3 {
        assert_header(&out, &format!("fig2_intensity_{i}.csv"), "x,z,intensity");
    }
    assert_header(
        &out,
        "fig3_roll.csv",
        "roll,reduction_h0.5mm,reduction_h1mm,reduction_h2mm",
    );
    assert_header(
        &out,
        "fig3_gravity_roll_limit.csv",
        "velocity,max_roll_spread5pct,max_roll_spread10pct,max_roll_spread20pct",
    );
    assert_header(
        &out,
        "fig4_common_mode.csv",
        "frequency,reduction_a1nm,reduction_a5nm,reduction_a10nm",
    );
    assert_header(
        &out,
        "fig4_independent.csv",
        "amplitude,reduction_outer,reduction_middle,reduction_all",
    );

    // intensity stays inside the unit interval everywhere on the grid
    let text = std::fs::read_to_string(out.join("fig2_intensity_1.csv")).unwrap();
    for line in text.lines().skip(1) {
        let value = csv_cell(line, 2);
        assert!((0.0..=1.0 + 1e-12).contains(&value), "{line}");
    }
}

#[test]
fn figure_pass_distances_can_be_overridden() {
    let dir = TempDir::new().unwrap();
    let cfg = write_cfg(&dir, "");
    let out = dir.path().join("fig2");
    let output = run(&[
        "figures",
        cfg.to_str().unwrap(),
        "fig2",
        "--out",
        out.to_str().unwrap(),
        "--distances",
        "0.5 mm,1 mm",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_text(&output));
    assert!(out.join("fig2_intensity_1.csv").exists());
    assert!(out.join("fig2_intensity_2.csv").exists());
    assert!(!out.join("fig2_intensity_3.csv").exists());

    let output = run(&[
        "figures",
        cfg.to_str().unwrap(),
        "fig2",
        "--out",
        out.to_str().unwrap(),
        "--distances",
        "0.5 kg",
    ]);
    assert_eq!(output.status.code(), Some(2));
}
