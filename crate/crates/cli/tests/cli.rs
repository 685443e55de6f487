//! End-to-end tests of the compiled binary: exit codes, output files,
//! flag precedence, and run-to-run determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heteromap"))
}

fn corpus65() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../testdata/corpus65.txt")
}

/// A small corpus with known years and a repeated author, for tests
/// that need to assert on specific labels.
const MINI: &str = "\
FN Test export
VR 1.0
PT J
AU Smith, J
   Jones, K
TI Robotic assembly systems
SO JOURNAL OF TESTS
PY 1990
ER
PT J
AU Smith, J
TI Robotic welding control
SO JOURNAL OF TESTS
PY 1991
ER
PT J
AU Lee, H
   Jones, K
TI Assembly line balancing
SO OPERATIONS LETTERS
PY 1992
ER
PT J
AU Lee, H
TI Control of robotic swarms
SO OPERATIONS LETTERS
PY 1993
ER
EF
";

fn write_mini(dir: &Path) -> PathBuf {
    let path = dir.join("mini.txt");
    fs::write(&path, MINI).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn assert_code(output: &Output, want: i32) {
    assert_eq!(
        output.status.code(),
        Some(want),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_code(&run(&["--help"]), 0);
    assert_code(&run(&["--version"]), 0);
    assert_code(&run(&["map", "--help"]), 0);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["map", "--input", "x.txt", "--bogus"]);
    assert_code(&out, 1);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_code(&run(&[]), 1);
}

#[test]
fn unreadable_input_is_a_data_error() {
    let out = run(&["inspect", "--input", "/definitely/not/here.txt"]);
    assert_code(&out, 2);
}

#[test]
fn malformed_corpus_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "no tagged fields at all\n").unwrap();
    let out = run(&["inspect", "--input", path.to_str().unwrap()]);
    assert_code(&out, 2);
}

#[test]
fn out_of_range_threshold_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--cosine-threshold",
        "1.5",
    ]);
    assert_code(&out, 1);
}

#[test]
fn unknown_class_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--classes",
        "venue",
    ]);
    assert_code(&out, 1);
}

#[test]
fn inspect_reports_the_corpus() {
    let out = run(&["inspect", "--input", corpus65().to_str().unwrap()]);
    assert_code(&out, 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("records: 65"), "{text}");
    assert!(text.contains("years: 1975-2009 (1 undated)"), "{text}");
}

#[test]
fn map_writes_exactly_the_requested_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out_dir = dir.path().join("maps");
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--word-min",
        "2",
        "--formats",
        "net,svg",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert!(out_dir.join("map.net").exists());
    assert!(out_dir.join("map.svg").exists());
    assert!(!out_dir.join("map.clu").exists());
    assert!(!out_dir.join("map.graphml").exists());
    assert!(!out_dir.join("map.json").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = corpus65();
    let formats = "net,clu,graphml,svg,json";
    for sub in ["a", "b"] {
        let out = run(&[
            "map",
            "--input",
            input.to_str().unwrap(),
            "--formats",
            formats,
            "--seed",
            "7",
            "--out-dir",
            dir.path().join(sub).to_str().unwrap(),
        ]);
        assert_code(&out, 0);
    }
    for name in ["map.net", "map.clu", "map.graphml", "map.svg", "map.json"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn flags_beat_preset_which_beats_config() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let config_path = dir.path().join("cfg.json");
    let config_out = dir.path().join("from_config");
    fs::write(
        &config_path,
        format!(
            r#"{{"formats": ["clu"], "word_min": 2, "out_dir": "{}"}}"#,
            config_out.display()
        ),
    )
    .unwrap();

    // config file alone decides the formats and directory
    assert_code(
        &run(&[
            "map",
            "--input",
            input.to_str().unwrap(),
            "--config",
            config_path.to_str().unwrap(),
        ]),
        0,
    );
    assert!(config_out.join("map.clu").exists());
    assert!(!config_out.join("map.net").exists());

    // a flag overrides the config file's formats; out_dir still applies
    let flag_out = dir.path().join("from_flag");
    assert_code(
        &run(&[
            "map",
            "--input",
            input.to_str().unwrap(),
            "--config",
            config_path.to_str().unwrap(),
            "--formats",
            "net",
            "--out-dir",
            flag_out.to_str().unwrap(),
        ]),
        0,
    );
    assert!(flag_out.join("map.net").exists());
    assert!(!flag_out.join("map.clu").exists());

    // a preset overrides the config file's word_min (2 -> 3); only
    // "robotic" appears in three mini-corpus titles, so one word is left
    let preset_out = dir.path().join("from_preset");
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--config",
        config_path.to_str().unwrap(),
        "--preset",
        "coword",
        "--formats",
        "net",
        "--out-dir",
        preset_out.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let net = fs::read_to_string(preset_out.join("map.net")).unwrap();
    assert!(net.starts_with("*Vertices 1"), "{net}");
    assert!(net.contains("\"robotic\""), "{net}");

    let flagged_out = dir.path().join("preset_plus_flag");
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--config",
        config_path.to_str().unwrap(),
        "--preset",
        "coword",
        "--word-min",
        "2",
        "--formats",
        "net",
        "--out-dir",
        flagged_out.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let net = fs::read_to_string(flagged_out.join("map.net")).unwrap();
    assert!(net.starts_with("*Vertices 3"), "{net}");
    assert!(net.contains("\"robotic\""), "{net}");
    assert!(net.contains("\"assembly\""), "{net}");
    assert!(!net.contains("\"smith j\""), "coword preset kept an author");
}

#[test]
fn excluded_authors_vanish_from_the_map() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out_dir = dir.path().join("maps");
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--exclude-author",
        "Smith, J",
        "--formats",
        "net",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let net = fs::read_to_string(out_dir.join("map.net")).unwrap();
    assert!(!net.contains("\"smith j\""), "{net}");
    assert!(net.contains("\"jones k\""), "{net}");
}

#[test]
fn custom_stopwords_remove_their_words() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let stop = dir.path().join("stop.txt");
    fs::write(&stop, "robotic\n").unwrap();
    let out_dir = dir.path().join("maps");
    let out = run(&[
        "map",
        "--input",
        input.to_str().unwrap(),
        "--word-min",
        "2",
        "--stopwords",
        stop.to_str().unwrap(),
        "--formats",
        "net",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let net = fs::read_to_string(out_dir.join("map.net")).unwrap();
    assert!(!net.contains("\"robotic\""), "{net}");
    assert!(net.contains("\"assembly\""), "{net}");
}

#[test]
fn slice_writes_a_manifest_with_the_expected_windows() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out_dir = dir.path().join("slices");
    let out = run(&[
        "slice",
        "--input",
        input.to_str().unwrap(),
        "--period-start",
        "1990",
        "--period-width",
        "2",
        "--period-end",
        "1994",
        "--word-min",
        "1",
        "--author-min",
        "1",
        "--journal-min",
        "1",
        "--formats",
        "json,svg",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("slices.json")).unwrap()).unwrap();
    let frames = manifest["frames"].as_array().unwrap();
    assert_eq!(frames.len(), 2);
    assert_eq!(frames[0]["period"], "1990-1991");
    assert_eq!(frames[1]["period"], "1992-1993");
    assert!(out_dir.join("frame_1990-1991.svg").exists());
    assert!(out_dir.join("frame_1992-1993.svg").exists());
}

#[test]
fn factors_write_a_csv_over_the_kept_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fac");
    let out = run(&[
        "factors",
        "--input",
        corpus65().to_str().unwrap(),
        "--classes",
        "word",
        "--factors",
        "2",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let csv = fs::read_to_string(out_dir.join("factors.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "class,label,frequency,factor_1,factor_2"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("word,")));
}

#[test]
fn asking_for_too_many_factors_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_mini(dir.path());
    let out = run(&[
        "factors",
        "--input",
        input.to_str().unwrap(),
        "--factors",
        "999",
    ]);
    assert_code(&out, 2);
}
