use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn reqsmell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reqsmell"))
        .args(args)
        .output()
        .expect("failed to run reqsmell")
}

fn write(dir: &TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn clean_run_exits_zero_with_json() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "reqs.csv", "ID,Text\nR1,The system may restart.\nR2,Logs are kept.\n");
    let out = reqsmell(&["analyze", "--input", &input, "--id-column", "ID", "--text-column", "Text", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["requirements"][0]["metrics"]["V"], 1);
    assert_eq!(json["summary"]["requirements"], 2);
}

#[test]
fn violation_with_fail_on_flagged_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "reqs.csv", "ID,Text\nR1,Some parts could fail based on load.\nR2,Fine.\n");
    let rules = write(&dir, "t.txt", "V >= 3\n");
    let base = ["analyze", "--input", input.as_str(), "--thresholds", rules.as_str(), "--format", "csv"];

    let out = reqsmell(&base);
    assert_eq!(out.status.code(), Some(0));

    let mut args = base.to_vec();
    args.push("--fail-on-flagged");
    let out = reqsmell(&args);
    assert_eq!(out.status.code(), Some(2));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",V"));
}

#[test]
fn missing_input_flag_is_usage_error() {
    let out = reqsmell(&["analyze"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn validation_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let dup = write(&dir, "dup.csv", "ID,Text\nR1,a\nR1,b\n");
    let out = reqsmell(&["analyze", "--input", &dup]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("duplicate requirement id `R1` in rows 2 and 3"), "{err}");

    let input = write(&dir, "ok.csv", "ID,Text\nR1,a\n");
    let bad_dict = write(&dir, "d.txt", "[X]\nfoo\n");
    let out = reqsmell(&["analyze", "--input", &input, "--dictionaries", &bad_dict]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1: unknown metric `X`"));

    let bad_rules = write(&dir, "t.txt", "V == 3\n");
    let out = reqsmell(&["analyze", "--input", &input, "--thresholds", &bad_rules]);
    assert_eq!(out.status.code(), Some(1));

    let out = reqsmell(&["analyze", "--input", &input, "--text-column", "Body"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column `Body` not found"));
}

#[test]
fn output_file_is_written_whole() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "reqs.csv", "ID,Text\nR1,see the reference.\n");
    let target = dir.path().join("report.csv");
    let out = reqsmell(&["analyze", "--input", &input, "--format", "csv", "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&target).unwrap().lines().count(), 2);
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 2);
}

#[test]
fn failed_run_leaves_existing_output_untouched() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("report.json");
    fs::write(&target, "previous").unwrap();
    let broken = write(&dir, "broken.csv", "ID,Text\nR1,a,b\n");
    let out = reqsmell(&["analyze", "--input", &broken, "--format", "json", "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(fs::read_to_string(&target).unwrap(), "previous");

    let fresh = dir.path().join("fresh.json");
    let out = reqsmell(&["analyze", "--input", &broken, "--output", fresh.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!fresh.exists());
}

#[test]
fn custom_dictionary_and_delimiter() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "reqs.tsv", "Key\tBody\nK1\tThe unit can and may run.\n");
    let dict = write(&dir, "d.txt", "[O]\ncan\n");
    let out = reqsmell(&[
        "analyze", "--input", &input, "--id-column", "Key", "--text-column", "Body",
        "--delimiter", "\\t", "--dictionaries", &dict, "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["requirements"][0]["metrics"]["O"], 1);
    assert_eq!(json["config"]["dictionaries"][3]["origin"], "user-file");
    assert_eq!(json["config"]["columns"]["delimiter"], "\t");
}

#[test]
fn header_only_input_warns() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "reqs.csv", "ID,Text\n");
    let out = reqsmell(&["analyze", "--input", &input, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning:"));
}

#[test]
fn runs_are_byte_identical() {
    let input = fixture("sample_requirements.csv");
    let rules = fixture("thresholds.txt");
    for format in ["json", "csv", "table"] {
        let args = [
            "analyze", "--input", input.to_str().unwrap(), "--thresholds", rules.to_str().unwrap(),
            "--fail-on-flagged", "--format", format,
        ];
        let first = reqsmell(&args);
        let second = reqsmell(&args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), Some(2));
        assert_eq!(second.status.code(), Some(2));
    }
}

#[test]
fn timestamp_is_opt_in() {
    let input = fixture("sample_requirements.csv");
    let out = reqsmell(&["analyze", "--input", input.to_str().unwrap(), "--format", "json", "--timestamp"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["config"]["generated_at"].is_string());
}
