//! End-to-end runs of the `lanegrid` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const RECT: &str =
    r#"{"type":"Polygon","coordinates":[[[0,0],[200,0],[200,150],[0,150],[0,0]]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lanegrid"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(cmd: &mut Command) -> (Output, String, String) {
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    (out, stdout, stderr)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

#[test]
fn fit_emits_plan_and_svg() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);
    let plan_path = dir.path().join("out.json");
    let svg_path = dir.path().join("fig.svg");

    let (out, stdout, _) = run(bin()
        .arg("fit")
        .arg("--input")
        .arg(&input)
        .arg("--plan")
        .arg(&plan_path)
        .arg("--svg")
        .arg(&svg_path));
    assert_eq!(code(&out), 0);
    assert!(stdout.contains("rect: 3 lanes (freeform)"), "stdout: {stdout}");

    let doc = std::fs::read_to_string(&plan_path).unwrap();
    let (plan, cfg) = lanegrid::io::plan_json::plan_from_json(&doc).unwrap();
    assert_eq!(plan.n_lanes(), 3);
    assert_eq!(cfg.operating_width, 36.0);

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("</svg>"));
}

#[test]
fn fit_mode_both_suffixes_the_output_paths() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);

    let (out, stdout, _) = run(bin()
        .arg("fit")
        .arg("--input")
        .arg(&input)
        .arg("--mode")
        .arg("both")
        .arg("--plan")
        .arg(dir.path().join("out.json")));
    assert_eq!(code(&out), 0);
    assert!(stdout.contains("(straights)"));
    assert!(stdout.contains("(freeform)"));
    assert!(dir.path().join("out.straights.json").exists());
    assert!(dir.path().join("out.freeform.json").exists());
    assert!(!dir.path().join("out.json").exists());
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.geojson", "{ not json");
    let (out, _, stderr) = run(bin().arg("fit").arg("--input").arg(&input));
    assert_eq!(code(&out), 2);
    assert!(stderr.starts_with("error:"), "stderr: {stderr}");
}

#[test]
fn bad_epsilon_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);
    let (out, _, stderr) = run(bin()
        .arg("fit")
        .arg("--input")
        .arg(&input)
        .arg("--epsilon")
        .arg("1.5"));
    assert_eq!(code(&out), 2);
    assert!(stderr.contains("epsilon"), "stderr: {stderr}");
}

#[test]
fn field_narrower_than_the_machine_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "strip.geojson",
        r#"{"type":"Polygon","coordinates":[[[0,0],[100,0],[100,30],[0,30],[0,0]]]}"#,
    );
    let (out, _, stderr) = run(bin().arg("fit").arg("--input").arg(&input));
    assert_eq!(code(&out), 3);
    assert!(stderr.contains("narrower"), "stderr: {stderr}");
}

#[test]
fn compare_prints_the_csv_row() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);
    let report = dir.path().join("report.csv");
    let (out, stdout, _) = run(bin()
        .arg("compare")
        .arg("--input")
        .arg(&input)
        .arg("--report")
        .arg(&report));
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout,
        "field,size_ha,n_straights,n_freeform,delta_abs,delta_pct\nrect,3.0,3,3,0,0\n"
    );
    assert_eq!(std::fs::read_to_string(&report).unwrap(), stdout);
}

#[test]
fn sweep_lists_every_angle_and_names_the_best() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);
    let (out, stdout, stderr) = run(bin().arg("sweep").arg("--input").arg(&input));
    assert_eq!(code(&out), 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 361);
    assert_eq!(lines[0], "angle_deg,n_lanes");
    assert_eq!(lines[1], "0,4");
    assert_eq!(lines[91], "90,3");
    assert!(stderr.contains("best: 3 lanes"), "stderr: {stderr}");
}

#[test]
fn corpus_generates_the_standard_fields() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("fields");
    let (out, stdout, _) = run(bin().arg("corpus").arg("--out").arg(&out_dir));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout.lines().count(), 5);
    for name in [
        "rectangle",
        "l-shape",
        "annulus-sector",
        "wavy-band",
        "obstacle",
    ] {
        let path = out_dir.join(format!("{name}.geojson"));
        let field = lanegrid::load_field(&path).unwrap();
        assert_eq!(field.name, name);
    }
}

#[test]
fn corpus_accepts_a_custom_spec_file() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"name":"paddock","family":"rectangle","width":300,"height":200}"#,
    );
    let out_dir = dir.path().join("fields");
    let (out, _, _) = run(bin()
        .arg("corpus")
        .arg("--input")
        .arg(&spec)
        .arg("--out")
        .arg(&out_dir));
    assert_eq!(code(&out), 0);
    let field = lanegrid::load_field(&out_dir.join("paddock.geojson")).unwrap();
    assert!((field.area_ha() - 6.0).abs() < 1e-9);
}

fn fit_stdout(input: &Path, extra: &[&str]) -> String {
    let (out, stdout, _) = run(bin().arg("fit").arg("--input").arg(input).args(extra));
    assert_eq!(code(&out), 0);
    stdout
}

#[test]
fn planner_flags_reach_the_config() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rect.geojson", RECT);
    // Half the operating width doubles the lane count on this rectangle.
    let wide = fit_stdout(&input, &["--mode", "straights"]);
    let narrow = fit_stdout(&input, &["--mode", "straights", "--width", "18"]);
    assert!(wide.contains("3 lanes"), "wide: {wide}");
    assert!(narrow.contains("7 lanes"), "narrow: {narrow}");
}
