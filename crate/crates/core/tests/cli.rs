//! End-to-end checks of the command-line surface: output schemas, exit
//! codes, and byte-level determinism.

use monoid_growth::cli::run;
use monoid_growth::series::TruncatedSeries;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("monoid-growth")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn growth_json_is_the_documented_schema() {
    let (code, out, _) = invoke(&[
        "growth",
        "--preset",
        "bii",
        "--max-degree",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"truncation\":8,\"coefficients\":[1,3,7,14,25,41,63,92,129]}\n"
    );
}

#[test]
fn skew_json_round_trips_through_the_series_schema() {
    let (code, out, _) = invoke(&[
        "skew",
        "--preset",
        "gn:3",
        "--max-degree",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let series: TruncatedSeries = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(series.truncation, 7);
    assert_eq!(series.coefficients, vec![1, -3, 2, 0, 1, 0, -1, 0]);
}

#[test]
fn verify_passes_and_reports() {
    let (code, out, _) = invoke(&["verify", "--preset", "abel:2", "--max-degree", "9"]);
    assert_eq!(code, 0);
    assert!(out.contains("inversion holds to t^9"), "{out}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "skew",
            "--preset",
            "bii",
            "--max-degree",
            "8",
            "--format",
            "json",
        ],
        vec![
            "towers",
            "--preset",
            "bii",
            "--max-degree",
            "6",
            "--format",
            "json",
        ],
        vec![
            "condition-l",
            "--preset",
            "abel:2",
            "--max-degree",
            "4",
            "--format",
            "json",
        ],
        vec!["classes", "--preset", "bii", "--max-degree", "3"],
    ] {
        let first = invoke(&args);
        let second = invoke(&args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn towers_json_lists_height_stages_top_mcm() {
    let (code, out, _) = invoke(&[
        "towers",
        "--preset",
        "abel:2",
        "--max-degree",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let towers = doc.as_array().unwrap();
    assert_eq!(towers.len(), 4);
    assert_eq!(towers[0]["height"], 0);
    assert_eq!(towers[0]["stages"].as_array().unwrap().len(), 0);
    assert_eq!(towers[0]["top_mcm"], serde_json::json!(["a", "b"]));
    assert_eq!(towers[2]["height"], 2);
    assert_eq!(
        towers[2]["stages"],
        serde_json::json!([["a", "b"], ["aa", "ab"]])
    );
}

#[test]
fn divides_answers_without_failing_exit_code() {
    let (code, out, _) = invoke(&[
        "divides", "--preset", "bii", "--left", "b", "--right", "cbb",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("true"));
    let (code, out, _) = invoke(&["divides", "--preset", "bii", "--left", "a", "--right", "b"]);
    assert_eq!(code, 0);
    assert!(out.contains("false"));
}

#[test]
fn classes_reports_canonical_member() {
    let (code, out, _) = invoke(&[
        "classes", "--preset", "bii", "--word", "cbb", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["canonical"], "bba");
    assert_eq!(doc["class"], serde_json::json!(["bba", "cbb"]));
}

#[test]
fn cancel_reports_witness_with_exit_1() {
    let dir = std::env::temp_dir().join("monoid-growth-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("control.mono");
    std::fs::write(&path, "alphabet a b\nrel a b = b b\n").unwrap();
    let (code, out, _) = invoke(&[
        "cancel",
        "--file",
        path.to_str().unwrap(),
        "--max-degree",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verdict"], "counterexample");
    assert_eq!(doc["witness"]["side"], "right");
    assert_eq!(doc["witness"]["x"], "a");
    assert_eq!(doc["witness"]["y"], "b");
}

#[test]
fn condition_l_exit_codes_follow_the_verdict() {
    let (code, _, _) = invoke(&["condition-l", "--preset", "bii", "--max-degree", "4"]);
    assert_eq!(code, 1);
    let (code, _, _) = invoke(&["condition-l", "--preset", "free:3", "--max-degree", "5"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_2() {
    // No presentation source.
    let (code, _, err) = invoke(&["growth", "--max-degree", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--preset"), "{err}");
    // Unknown preset.
    let (code, _, _) = invoke(&["growth", "--preset", "nosuch"]);
    assert_eq!(code, 2);
    // Conflicting sources.
    let (code, _, _) = invoke(&["growth", "--preset", "bii", "--file", "x.mono"]);
    assert_eq!(code, 2);
    // Unreadable file.
    let (code, _, _) = invoke(&["growth", "--file", "/nonexistent/x.mono"]);
    assert_eq!(code, 2);
    // Invalid word.
    let (code, _, _) = invoke(&["divides", "--preset", "bii", "--left", "zz", "--right", "b"]);
    assert_eq!(code, 2);
    // Degree above the configured cap.
    let (code, _, _) = invoke(&["growth", "--preset", "bii", "--max-degree", "20"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_presentation_file_exits_2() {
    let dir = std::env::temp_dir().join("monoid-growth-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inhomogeneous.mono");
    std::fs::write(&path, "alphabet a b\nrel a b = b\n").unwrap();
    let (code, _, err) = invoke(&["growth", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("different lengths"), "{err}");
}

#[test]
fn budget_errors_exit_3() {
    let (code, _, err) = invoke(&[
        "skew",
        "--preset",
        "bii",
        "--max-degree",
        "8",
        "--budget",
        "2",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"), "{err}");
    let (code, _, err) = invoke(&[
        "growth",
        "--preset",
        "free:3",
        "--max-degree",
        "12",
        "--word-budget",
        "1000",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("word budget"), "{err}");
}

#[test]
fn help_is_a_success() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("growth"));
    assert!(out.contains("condition-l"));
}
