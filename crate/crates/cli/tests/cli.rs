use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn graph(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn khroma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khroma"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn poly_commands() {
    let ws = Workspace::new();
    let p2 = ws.graph("p2.g", "v 2\ne 1 2\n");
    let lp = ws.graph("loop.g", "# a loop\nv 1\ne 1 1\n");
    let out = khroma(&["poly", "chromatic", p(&p2)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "λ^2 - λ");
    assert_eq!(
        stdout(&khroma(&["poly", "dichromatic", p(&lp)])).trim(),
        "v - q·v"
    );
    let json: serde_json::Value = serde_json::from_str(&stdout(&khroma(&[
        "poly",
        "chromatic",
        p(&p2),
        "--format",
        "json",
    ])))
    .unwrap();
    assert_eq!(json["coefficients"], serde_json::json!([0, -1, 1]));
}

#[test]
fn homology_tables() {
    let ws = Workspace::new();
    let p2 = ws.graph("p2.g", "v 2\ne 1 2\n");
    let out = khroma(&[
        "homology",
        "chromatic",
        p(&p2),
        "--max-q",
        "4",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dims: Vec<u64> = json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 2, 3, 4]);
    assert!(json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["i"] == 0));

    let n1 = ws.graph("n1.g", "v 1\n");
    let out = khroma(&[
        "homology",
        "dichromatic",
        p(&n1),
        "--max-q",
        "2",
        "--format",
        "json",
    ]);
    let text = stdout(&out);
    assert!(
        text.starts_with("{\"D\":2,\"entries\":[{\"j\":0,\"a\":0,\"d\":0,\"dim\":1}"),
        "{}",
        text
    );
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["j"] == 0));
}

#[test]
fn koszul_flag_matches_cube() {
    let ws = Workspace::new();
    let c3 = ws.graph("c3.g", "v 3\ne 1 2\ne 2 3\ne 1 3\n");
    let cube = khroma(&[
        "homology",
        "chromatic",
        p(&c3),
        "--max-q",
        "4",
        "--format",
        "json",
    ]);
    let kos = khroma(&[
        "homology",
        "chromatic",
        p(&c3),
        "--max-q",
        "4",
        "--format",
        "json",
        "--koszul",
    ]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v.as_object_mut().unwrap().remove("construction");
        v
    };
    assert_eq!(strip(&cube), strip(&kos));
}

#[test]
fn series_json() {
    let ws = Workspace::new();
    let lp = ws.graph("loop.g", "v 1\ne 1 1\n");
    let out = khroma(&[
        "series",
        "dichromatic",
        p(&lp),
        "--max-q",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"D":2,"terms":[{"a":0,"d":0,"c":1},{"a":1,"d":1,"c":2},{"a":2,"d":2,"c":1}]}"#
    );
}

#[test]
fn verify_passes_and_reports_six_lines() {
    let ws = Workspace::new();
    for (name, text) in [
        ("c3.g", "v 3\ne 1 2\ne 2 3\ne 1 3\n"),
        ("de.g", "v 2\ne 1 2\ne 1 2\n"),
    ] {
        let g = ws.graph(name, text);
        let out = khroma(&["verify", p(&g), "--max-q", "5"]);
        assert_eq!(out.status.code(), Some(0), "{}", name);
        let text = stdout(&out);
        assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 6);
    }
}

#[test]
fn injected_sign_fault_is_caught() {
    let ws = Workspace::new();
    let de = ws.graph("de.g", "v 2\ne 1 2\ne 1 2\n");
    let out = khroma(&["verify", p(&de), "--max-q", "3", "--inject-sign-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.starts_with("FAIL ") && l.contains("(i=0, a=0, d=0)")),
        "{}",
        text
    );
}

#[test]
fn exit_codes_for_bad_input() {
    let ws = Workspace::new();
    let missing = ws.dir.path().join("missing.g");
    let out = khroma(&["poly", "chromatic", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let bad = ws.graph("bad.g", "v 2\ne 1 3\n");
    let out = khroma(&["poly", "chromatic", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let big = ws.graph("big.g", &format!("v 10\n{}", "e 1 2\n".repeat(30)));
    let out = khroma(&["homology", "dichromatic", p(&big)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("edges+vertices"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let ws = Workspace::new();
    let k4 = ws.graph("k4e.g", "v 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n");
    let one = khroma(&[
        "--threads",
        "1",
        "homology",
        "dichromatic",
        p(&k4),
        "--max-q",
        "4",
        "--format",
        "json",
    ]);
    let four = khroma(&[
        "--threads",
        "4",
        "homology",
        "dichromatic",
        p(&k4),
        "--max-q",
        "4",
        "--format",
        "json",
    ]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
