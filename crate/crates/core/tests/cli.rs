//! End-to-end tests for the `flatcert` binary. Set `UPDATE_GOLDEN=1` to
//! rewrite the golden files from the current output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn flatcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatcert"))
        .args(args)
        .current_dir(dir())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = dir().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn passing_script() {
    let o = flatcert(&["run", "scripts/pass.fc"]);
    assert_eq!(o.status.code(), Some(0));
    golden("pass.out", &stdout(&o));
}

#[test]
fn failing_assertion_exits_one() {
    let o = flatcert(&["run", "scripts/fail.fc"]);
    assert_eq!(o.status.code(), Some(1));
    golden("fail.out", &stdout(&o));
}

#[test]
fn parse_error_reports_position() {
    let o = flatcert(&["run", "scripts/parse_error.fc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 15"), "{}", stderr(&o));
}

#[test]
fn unknown_name_exits_two() {
    let o = flatcert(&["run", "scripts/unknown_name.fc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown name `S`"), "{}", stderr(&o));
}

#[test]
fn computation_error_exits_three() {
    let o = flatcert(&["run", "scripts/compute_error.fc"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_two() {
    let o = flatcert(&["run", "scripts/does_not_exist.fc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quiet_prints_nothing() {
    let o = flatcert(&["-q", "run", "scripts/fail.fc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
}

#[test]
fn gb_subcommand_respects_order() {
    let o = flatcert(&["gb", "scripts/gb.fc", "I"]);
    assert_eq!(o.status.code(), Some(0));
    golden("gb_grevlex.out", &stdout(&o));
    let o = flatcert(&["--order", "lex", "gb", "scripts/gb.fc", "I"]);
    assert_eq!(o.status.code(), Some(0));
    golden("gb_lex.out", &stdout(&o));
}

#[test]
fn gb_of_unknown_ideal() {
    let o = flatcert(&["gb", "scripts/gb.fc", "J"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tor_subcommand() {
    let o = flatcert(&["tor", "scripts/gb.fc", "1", "I", "M"]);
    assert_eq!(o.status.code(), Some(0));
    golden("tor.out", &stdout(&o));
}

#[test]
fn bundled_scripts_pass() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("paper")).unwrap() {
        let path = entry.unwrap().path();
        let o = flatcert(&["run", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), stdout(&o));
    }
}
