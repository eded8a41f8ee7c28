use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthrate"))
        .args(args)
        .env_remove("GROWTH_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

/// One CSV column by header name, data rows only.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header
        .iter()
        .position(|h| *h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn dihedral_growth_column() {
    let csv = stdout(&[
        "growth",
        "--group",
        "dihedral:12",
        "--rep",
        "dim=2,faithful",
        "--nmax",
        "10",
    ]);
    let b = column(&csv, "b_n");
    assert_eq!(b, ["1", "1", "3", "5", "11", "21", "43", "85", "171", "341", "683"]);
}

#[test]
fn sl2_7_ratio_at_display_precision() {
    let csv = stdout(&[
        "growth",
        "--rep",
        "bundled:sl2_7_mod7_dim4",
        "--nmax",
        "15",
        "--digits",
        "9",
    ]);
    assert_eq!(column(&csv, "ratio").last().unwrap(), "1.00098079");
    assert_eq!(column(&csv, "b_n").last().unwrap(), "76771067");
}

#[test]
fn projective_cyclic_module_is_exact() {
    let csv = stdout(&["growth", "--group", "cyclicmod:p=5", "--rep", "l=5", "--nmax", "8"]);
    let b = column(&csv, "b_n");
    let a = column(&csv, "a_n");
    for n in 1..=8u32 {
        assert_eq!(b[n as usize], 5u64.pow(n - 1).to_string());
        assert_eq!(a[n as usize], b[n as usize]);
    }
}

#[test]
fn tables_print() {
    let text = stdout(&["table", "--group", "sym:5"]);
    assert!(text.contains("S5"), "{text}");
    let json = stdout(&["table", "--group", "dihedral:12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
    let json = stdout(&["table", "--group", "sym:5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
    assert_eq!(v["chars"].as_array().unwrap().len(), 7);
}

fn vertices(dot: &str) -> usize {
    dot.lines()
        .filter(|l| l.trim_start().starts_with('v') && !l.contains("->"))
        .count()
}

#[test]
fn fusion_graphs() {
    let dot = stdout(&["fusion", "--group", "cyclicmod:p=5", "--rep", "l=3"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(vertices(&dot), 5, "{dot}");
    assert!(dot.contains("red") && dot.contains("cyan"));
    assert_eq!(
        vertices(&stdout(&["fusion", "--group", "klein", "--rep", "klein:Regular"])),
        2
    );
    assert_eq!(vertices(&stdout(&["fusion", "--group", "dihedral:12"])), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["growth", "--group", "dihedral:12", "--rep", "0"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["growth", "--group", "nosuch:3", "--rep", "0"]), 2);
    assert_eq!(code(&["growth", "--group", "dihedral:12", "--rep", "dim=7"]), 2);
    assert_eq!(code(&["table", "--group", "file:/nonexistent/t.json"]), 3);
    assert_eq!(
        code(&[
            "growth",
            "--group",
            "klein",
            "--rep",
            "klein:M,m=1,cutoff=5",
            "--nmax",
            "10"
        ]),
        2
    );
    assert_eq!(code(&["verify", "--suite", "closedform"]), 0);
    assert_eq!(code(&["--help"]), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"group":"X"}"#).unwrap();
    assert_eq!(code(&["table", "--group", &format!("file:{}", bad.display())]), 3);
}

#[test]
fn verify_lists_named_checks() {
    let text = stdout(&["verify", "--suite", "char0"]);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")), "{text}");
    assert!(
        text.lines().any(|l| l.starts_with("PASS char0/") && l.contains("d12")),
        "{text}"
    );
    let json = stdout(&["verify", "--suite", "closedform", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v.to_string().contains("semidirect"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d12.csv");
    let args = ["growth", "--group", "dihedral:12", "--rep", "faithful", "--nmax", "12"];
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let printed = stdout(&with_file);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&args));
}

#[test]
fn csv_is_bit_stable() {
    let args = [
        "growth",
        "--group",
        "sym:5",
        "--rep",
        "0",
        "--rep",
        "dim=6",
        "--rep",
        "partition=3+1+1",
        "--nmax",
        "25",
    ];
    let first = stdout(&args);
    for _ in 0..3 {
        assert_eq!(stdout(&args), first);
    }
}

#[test]
fn parallel_jobs_keep_input_order() {
    let mut args = vec!["growth", "--group", "dihedral:20", "--nmax", "15"];
    let reps = ["5", "0", "3", "dim=2,faithful", "1", "4"];
    for r in &reps {
        args.extend(["--rep", r]);
    }
    let serial = stdout(&args);
    let mut par = args.clone();
    par.extend(["--jobs", "4"]);
    assert_eq!(stdout(&par), serial);
    let order: Vec<String> = column(&serial, "rep").into_iter().fold(Vec::new(), |mut v, r| {
        if v.last() != Some(&r) {
            v.push(r);
        }
        v
    });
    assert_eq!(order.len(), reps.len(), "{order:?}");
}
