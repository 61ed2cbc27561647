//! End-to-end runs of the `stopred` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn stopred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stopred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bound_methods() {
    for (method, want) in [("tau0", "182\n"), ("cor1", "180\n"), ("cor2", "177\n")] {
        let o = stopred(&["bound", "--code", "golay24", "--method", method]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), want);
    }
}

#[test]
fn table5_csv_is_exact_and_deterministic() {
    let a = stopred(&["tables", "--which", "5", "--format", "csv"]);
    let b = stopred(&[
        "--threads",
        "1",
        "tables",
        "--which",
        "5",
        "--format",
        "csv",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0], "tau,l4,l5,l6,l7,l8");
    assert_eq!(lines[1], "1,24,36,61,105,180");
    assert_eq!(lines[7], "7,28,33,55,98,170");
    assert_eq!(lines[12], "12,33,35,56,97,168");
}

#[test]
fn table2_csv() {
    let o = stopred(&["tables", "--which", "2"]);
    assert_eq!(
        stdout(&o),
        "method,golay24,qr48\nbaseline,2509,4540385\ntau0,182,3564\ncor1,180,3538\ncor2,177,3515\n"
    );
}

#[test]
fn hierarchy_range() {
    let o = stopred(&["hierarchy", "--code", "qr48", "--l", "4..6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "l,value\n4,47\n5,58\n6,92\n");
}

#[test]
fn hybrid_cell() {
    let o = stopred(&["hybrid", "--code", "golay24", "--tau", "7", "--l", "6"]);
    assert_eq!(stdout(&o), "55\n");
}

#[test]
fn stopdist_identity() {
    let path = scratch("identity12.txt");
    let rows: Vec<String> = (0..12)
        .map(|i| (0..12).map(|j| if i == j { '1' } else { '0' }).collect())
        .collect();
    std::fs::write(&path, rows.join("\n") + "\n").unwrap();
    let o = stopred(&[
        "stopdist",
        "--matrix",
        path.to_str().unwrap(),
        "--limit",
        "12",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "≥13\n");
}

#[test]
fn construct_then_stopdist() {
    let path = scratch("golay_l6.alist");
    let o = stopred(&[
        "construct",
        "--code",
        "golay24",
        "--l",
        "6",
        "--strategy",
        "max-coverage",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verified: yes"));
    let o = stopred(&[
        "stopdist",
        "--matrix",
        path.to_str().unwrap(),
        "--limit",
        "5",
    ]);
    assert_eq!(stdout(&o), "≥6\n");
}

#[test]
fn info_golay() {
    let o = stopred(&["info", "golay24"]);
    let text = stdout(&o);
    assert!(text.contains("d: 8\n"));
    assert!(text.contains("min-weight dual words: 759\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(stopred(&["info", "missing.alist"]).status.code(), Some(2));
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "0101\n01x1\n").unwrap();
    let o = stopred(&["stopdist", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        stopred(&["hybrid", "--code", "golay24", "--tau", "13", "--l", "6"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        stopred(&["bound", "--code", "golay24"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_env_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_stopred"))
        .args(["hybrid", "--code", "golay24", "--tau", "3", "--l", "8"])
        .env("STOPRED_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
