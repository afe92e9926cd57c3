use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Runs the command under two worker counts, requires identical stdout and
/// the expected exit code, and returns stdout.
fn stable(args: &[&str], code: i32) -> String {
    let mut outs = Vec::new();
    for jobs in ["1", "4"] {
        let mut full = args.to_vec();
        full.extend(["--jobs", jobs]);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(code), "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
        outs.push(String::from_utf8(out.stdout).unwrap());
    }
    assert_eq!(outs[0], outs[1], "output differs across --jobs for {args:?}");
    outs.pop().unwrap()
}

#[test]
fn gf_main_b_product() {
    let out = stable(&["gf", "main-b", "--r", "3", "--n", "2", "--ferrers", "1,2", "--format", "text"], 0);
    assert_eq!(out, golden("gf_main_b.txt"));
}

#[test]
fn verify_main_a_all_shapes() {
    let out = stable(&["verify", "main-a", "--r", "3", "--n", "2", "--all-ferrers"], 0);
    assert_eq!(out, golden("verify_main_a.txt"));
}

#[test]
fn enumerate_small_bound() {
    let args = ["enumerate", "--r", "1", "--n", "4", "--ferrers", "2,3,3,4"];
    let out = stable(&args, 0);
    assert_eq!(out.lines().count(), 4);
    assert_eq!(out, golden("enumerate_f1.txt"));
    let mut csv = args.to_vec();
    csv.extend(["--format", "csv"]);
    assert_eq!(stable(&csv, 0), golden("enumerate_f1.csv"));
}

#[test]
fn verify_all_json_is_deterministic() {
    let out = stable(&["verify", "all", "--r", "2", "--n", "3", "--all-ferrers", "--format", "json"], 0);
    assert!(!out.contains("elapsed_ms"));
    assert!(!out.contains("\"fail\""));
}

#[test]
fn failing_check_exits_one() {
    let out = stable(
        &["verify", "d-main", "--r", "2", "--n", "3", "--all-ferrers", "--perturb", "cyc-plus-without-one"],
        1,
    );
    assert!(out.contains("FAIL"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "no-such-theorem", "--r", "2", "--n", "2"][..],
        &["stat", "--r", "3", "1,2^9"],
        &["stat", "--r", "2", "1,1"],
        &["enumerate", "--r", "2", "--n", "3", "--ferrers", "3,2,3"],
        &["gf", "main-b", "--r", "2", "--n", "2", "--ferrers", "1,2", "--format", "yaml"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn cap_exceeded_is_reported() {
    let out = run(&["enumerate", "--r", "3", "--n", "6", "--cap", "100"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
