use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ising-pbw")).args(args).env_remove("ISING_PBW_THREADS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn pivots_at_weight_four() {
    let out = run(&["pivots", "--module", "h1/2", "--max-weight", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("h1/2 n=4 pivots: [2, 2] [2, 1, 1] [1, 1, 1, 1]\n"));
}

#[test]
fn weight_zero_has_no_pivots() {
    let out = run(&["pivots", "--module", "h1/2", "--max-weight", "0", "--output-format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["records"][0]["pivots"], serde_json::json!([]));
    assert_eq!(doc["records"][0]["basis"], serde_json::json!([[]]));
}

#[test]
fn matrix_dump_is_csv() {
    let out = run(&["matrix", "--module", "h1/2", "--weight", "4", "--dump"]);
    assert_eq!(
        stdout(&out),
        "2+2, 2+1+1, 1+1+1+1, 3+1, 4\n\
         1/1, 0/1, 0/1, -3/16, -15/8\n\
         0/1, 1/1, 0/1, -1/4, -5/2\n\
         0/1, 0/1, 1/1, -3/1, -6/1\n"
    );
}

#[test]
fn singular_vectors_as_json() {
    let out = run(&["singular", "--c", "1/2", "--h", "1/16", "--level", "2"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["vectors"][0]["terms"], serde_json::json!([[[2], "1/1"], [[1, 1], "-4/3"]]));

    let out = run(&["singular", "--c", "1/2", "--h", "1/2", "--level", "1", "--output-format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vectors"], serde_json::json!([]));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "tails", "--module", "h1/16", "--q-trunc", "25"][..],
        &["verify", "--suite", "lemma1", "--q-trunc", "25"],
        &["verify", "--suite", "theorems", "--module", "h1/2", "--max-weight", "20", "--q-trunc", "20"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
}

#[test]
fn row_reports_leading_part() {
    let out = run(&["row", "--module", "h1/2", "--partition", "4,4,1"]);
    assert!(stdout(&out).ends_with("u^K = L-4L-4L-1 + 9/8*L-5L-3L-1\n"));
    // Not a pivot: reported, exit 1.
    let out = run(&["row", "--module", "h1/2", "--partition", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_independent_of_threads() {
    let args = ["pivots", "--module", "h1/16", "--max-weight", "14", "--output-format", "json"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_ising-pbw")).args(args).env("ISING_PBW_THREADS", "2").output().unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["pivots", "--module", "h3"]).status.code(), Some(2));
    let out = run(&["verify", "--suite", "theorems", "--max-weight", "10", "--q-trunc", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q-truncation 5 is smaller than max weight 10"));
    let out = run(&["pivots", "--module", "h0", "--max-weight", "2", "--output", "/nonexistent/dir/out.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_receives_results() {
    let path = std::env::temp_dir().join(format!("ising-pbw-cli-{}.csv", std::process::id()));
    let out = run(&[
        "pivots",
        "--module",
        "h0",
        "--max-weight",
        "4",
        "--output-format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("label,n,kind,partition\n"));
    assert!(text.contains("h0,4,basis,2+2\n"));
}
