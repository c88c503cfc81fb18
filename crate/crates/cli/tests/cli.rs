use std::io::Write;
use std::process::{Command, Output, Stdio};

use hnfdecomp::io::{DecomposeReport, HnfReport, MatrixDocument};
use hnfdecomp::{imat, verify_decomposition, IntMatrix};

const WORKED_A: &str = "# worked example\n3 5\n2 -4 2 5 -6\n2 -2 2 5 -3\n0 -2 1 2 -3\n";
const WORKED_B: &str = "5 5\n4 0 0 2 0\n0 4 0 0 6\n0 0 1 2 0\n2 0 2 5 0\n0 6 0 0 9\n";

fn hnfdecomp(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hnfdecomp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hnf_of_worked_example() {
    let o = hnfdecomp(&["--format", "structured", "hnf"], WORKED_A);
    assert_eq!(o.status.code(), Some(0));
    let r: HnfReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.h, imat![[2, 0, 0, 1, 0], [0, 2, 0, 0, 3], [0, 0, 1, 2, 0]]);
    assert_eq!(r.p, imat![[1, -2, 2], [1, -1, 2], [0, -1, 1]]);
    assert_eq!(r.pivot_cols, vec![1, 2, 3]);
    assert_eq!(r.rank, 3);

    let text = stdout(&hnfdecomp(&["hnf"], WORKED_A));
    assert!(text.starts_with("rank: 3\npivot_cols: 1 2 3\nH:\n"), "{text}");
}

#[test]
fn hnf_of_identity_is_identity() {
    let o = hnfdecomp(&["--format", "structured", "hnf", "-"], "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let r: HnfReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.h, IntMatrix::identity(3));
    assert_eq!(r.p, IntMatrix::identity(3));
}

#[test]
fn malformed_token_exits_2() {
    let o = hnfdecomp(&["hnf"], "1 2\n1 2a\n");
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("\"2a\"") && err.contains("line 2, column 3"), "{err}");
}

#[test]
fn missing_file_exits_3() {
    let o = hnfdecomp(&["hnf", "/definitely/not/here.txt"], "");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn structured_input_accepted() {
    let o = hnfdecomp(&["decompose"], r#"{"rows": 2, "cols": 2, "matrix": [["1", "0"], ["0", "1"]]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("column_partition: {1} {2}"));
}

#[test]
fn decompose_worked_example_text() {
    let o = hnfdecomp(&["decompose", "--check"], WORKED_A);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for needle in [
        "decomposable: true",
        "column_partition: {1,3,4} {2,5}",
        "row_partition: {1,3} {2}",
        "Q: 1 3 4 2 5",
        "block 1 (2x3):\n  2 0 1\n  0 1 2\n",
        "block 2 (1x2):\n  2 3\n",
        "verify: pass",
        "split_oracle: pass",
        "reducibility_oracle: pass",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
}

#[test]
fn structured_report_round_trips_through_verifier() {
    let o = hnfdecomp(&["--format", "structured", "decompose", "--check"], WORKED_A);
    assert_eq!(o.status.code(), Some(0));
    let report: DecomposeReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.blocks, vec![imat![[2, 0, 1], [0, 1, 2]], imat![[2, 3]]]);
    assert_eq!(report.checks.verified, Some(true));
    let a = MatrixDocument::parse("a", WORKED_A).unwrap().matrix;
    let d = report.to_decomposition().unwrap();
    assert!(verify_decomposition(&a, &d).ok);
    // Integers travel as strings.
    assert!(stdout(&o).contains(r#""blocks":[[["2","0","1"],["0","1","2"]],[["2","3"]]]"#));
}

#[test]
fn decompose_indecomposable_exits_1() {
    let o = hnfdecomp(&["decompose", "--check"], "1 2\n1 1\n");
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("decomposable: false"));
    assert!(text.contains("block 1 (1x2):\n  1 1\n"));
}

#[test]
fn decompose_input_errors() {
    let zero_col = hnfdecomp(&["decompose"], "2 3\n1 0 2\n3 0 4\n");
    assert_eq!(zero_col.status.code(), Some(4));
    assert!(stderr(&zero_col).contains("zero column 2"));

    let deficient = hnfdecomp(&["decompose"], "2 2\n1 2\n2 4\n");
    assert_eq!(deficient.status.code(), Some(5));
    assert!(stderr(&deficient).contains("rank deficient"));
}

#[test]
fn strip_zero_rows_flag() {
    let input = "3 2\n0 0\n1 1\n0 0\n";
    assert_eq!(hnfdecomp(&["decompose"], input).status.code(), Some(5));
    let o = hnfdecomp(&["decompose", "--strip-zero-rows"], input);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stripped_rows: 1 3"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decompose", "--check"][..],
        &["--format", "structured", "decompose"][..],
        &["hnf"][..],
    ] {
        let first = hnfdecomp(args, WORKED_A);
        let second = hnfdecomp(args, WORKED_A);
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn components_of_worked_gram() {
    let o = hnfdecomp(&["components"], WORKED_B);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("components: {1,3,4} {2,5}"));
    assert!(text.contains("note: methods agree"));
    assert!(text.contains("   2  0  0 -2  0"), "{text}");
    assert!(text.contains("rref:\n   1  0  0 -1  0\n"), "{text}");

    let zp = hnfdecomp(&["components", "--method", "zero-pattern"], WORKED_B);
    assert!(!stdout(&zp).contains("rref:"));
    assert!(stdout(&zp).contains("components: {1,3,4} {2,5}"));
}

#[test]
fn components_identity_and_errors() {
    let o = hnfdecomp(&["components", "--method", "rref"], "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    assert!(stdout(&o).contains("components: {1} {2} {3}"));
    let asym = hnfdecomp(&["components"], "2 2\n1 2\n3 4\n");
    assert_eq!(asym.status.code(), Some(4));
}

#[test]
fn components_reports_signed_disagreement() {
    // gram of (1, 2, -3): connected, but its Laplacian RREF does not partition.
    let input = "3 3\n1 2 -3\n2 4 -6\n-3 -6 9\n";
    let both = hnfdecomp(&["components"], input);
    assert_eq!(both.status.code(), Some(0));
    assert!(stdout(&both).contains("note: methods disagree; rref sets {1,2} {1,3}"));
    let rref = hnfdecomp(&["components", "--method", "rref"], input);
    assert_eq!(rref.status.code(), Some(6));
}

#[test]
fn selftest_passes() {
    let o = hnfdecomp(&["selftest", "--seed", "42", "--cases", "100"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10/10 passed"));
}
