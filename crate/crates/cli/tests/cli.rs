use std::io::Write;
use std::path::PathBuf;

use tempfile::NamedTempFile;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tripleseq").chain(args.iter().copied());
    let code = tripleseq_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_catalog(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn sequence_examples() {
    let (code, out, _) = cli(&["sequence", "--label", "M7.1.1", "--ell", "3", "--mode", "count"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("count=336 least=0132456"));
    assert!(out.contains("Number of 3-good sequencing found: 336"));
    assert!(out.contains("Lexicographic least 3-good sequencing : 0132456"));

    let (_, out, _) = cli(&["sequence", "--label", "M10.116.1", "--ell", "4", "--mode", "exists"]);
    assert_eq!(out.trim(), "exists=false");

    let (_, out, _) = cli(&["sequence", "--label", "M7.1.1", "--ell", "2"]);
    assert_eq!(out.lines().next(), Some("count=5040 least=0123456"));

    let (_, out, _) = cli(&["sequence", "--label", "M9.1.1", "--ell", "4", "--mode", "least"]);
    assert_eq!(out.lines().next(), Some("least=023471856"));
}

#[test]
fn sequence_structured_and_enumerate() {
    let (_, out, _) = cli(&["--format", "structured", "sequence", "--label", "M9.7.1", "--ell", "4"]);
    let v = json(&out);
    assert_eq!(v["label"], "M9.7.1");
    assert_eq!(v["ell"], 4);
    assert_eq!(v["exists"], true);
    assert_eq!(v["count"], 324);
    assert_eq!(v["least"], "031485726");

    let (_, out, _) = cli(&["sequence", "--label", "M9.1.1", "--ell", "4", "--mode", "enumerate"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "023471856");
    assert_eq!(lines[18], "count=18 least=023471856");

    let (_, out, _) = cli(&["sequence", "--label", "M9.1.1", "--ell", "4", "--mode", "enumerate", "--format", "structured"]);
    assert_eq!(json(&out)["sequencings"].as_array().unwrap().len(), 18);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["sequence", "--label", "M9.99.1", "--ell", "3"]).0, 2);
    assert_eq!(cli(&["sequence", "--label", "M7.1.1", "--ell", "1"]).0, 2);
    assert_eq!(cli(&["sequence", "--label", "M7.1.1", "--ell", "8"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["report", "--v", "8"]).0, 2);
    assert_eq!(cli(&["enumerate", "--v", "10", "--kind", "tts"]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("delete-exp"));
}

#[test]
fn validate_examples() {
    let (code, out, _) = cli(&["validate", &fixture("mts9.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 18);
    assert!(out.lines().all(|l| l.ends_with(": valid")));

    let (code, out, _) = cli(&["validate", &fixture("tts_as_printed.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("T7.2: invalid\n"));
    assert!(out.contains("  pair {1,3} covered 3 times, expected 2"));

    let bad = temp_catalog("mts 3 M3.1.1\n0 1 2\n0 1 2\n");
    let (code, out, _) = cli(&["--format", "structured", "validate", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v[0]["valid"], false);

    let (code, out, _) = cli(&["validate"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2 + 3 + 18 + 143 + 153);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = temp_catalog("mts 7 M7.1.1\n0 1 2\n0 1 x\n");
    let (code, _, err) = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = cli(&["validate", "/nonexistent/catalog.txt"]);
    assert_eq!(code, 1);
    assert!(err.contains("nonexistent"));
}

#[test]
fn lint_examples() {
    let (code, out, _) = cli(&["lint", &fixture("tts_as_printed.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("T7.2: error: extra block {1,3,5} (listed 3 times, derived system has 2)"));
    assert!(out.contains("T7.2: error: missing block {0,1,2} (listed 1 time, derived system has 2)"));
    assert!(out.contains("T9.1: error: missing block {0,1,6}"));
    assert!(out.contains("  repair: "));

    let (code, out, _) = cli(&["lint", &fixture("tts_orientable.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "153 entries, 0 errors, 0 warnings");

    let moved = temp_catalog("tts 3 T3.1\n0 1 2\n0 1 2\n");
    let (code, out, _) = cli(&["--format", "structured", "lint", moved.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out), serde_json::json!([]));
}

#[test]
fn orient_examples() {
    let (code, out, _) = cli(&["orient", "--label", "T7.1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# T7.1: 2 valid assignments, 2 isomorphism classes\n"));

    let (_, out, _) = cli(&["orient", "--label", "T7.2"]);
    assert!(out.contains("1 isomorphism class\n"));
    assert_eq!(out.matches("mts 7 ").count(), 1);

    let (_, out, _) = cli(&["--format", "structured", "orient", "--label", "T9.4", "--all"]);
    let v = json(&out);
    assert_eq!(v["label"], "T9.4");
    assert_eq!(v["assignments"].as_u64().unwrap() % 2, 0);
    assert!(v["orientations"].as_array().unwrap().len() >= 2);

    let (_, out, _) = cli(&["orient", "--label", "M7.1.1"]);
    assert!(out.contains("2 isomorphism classes"));
}

#[test]
fn canon_examples() {
    let (code, a, _) = cli(&["canon", "--label", "M7.3.1"]);
    assert_eq!(code, 0);
    assert!(a.starts_with("mts 7 M7.3.1\n"));
    assert!(a.ends_with("# self-converse: true\n"));

    let (_, out, _) = cli(&["canon", "--label", "M7.1.1"]);
    assert!(out.ends_with("# self-converse: false\n"));

    let (_, t, _) = cli(&["canon", "--label", "T9.1"]);
    assert!(t.starts_with("tts 9 T9.1\n"));
    assert_eq!(t.lines().count(), 1 + 24);

    let (_, s, _) = cli(&["--format", "structured", "canon", "--label", "M3.1.1"]);
    assert_eq!(json(&s)["rows"], serde_json::json!([[0, 1, 2], [0, 2, 1]]));
}

#[test]
fn enumerate_examples() {
    let (code, out, err) = cli(&["enumerate", "--v", "7", "--kind", "tts"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("tts 7 ").count(), 4);
    assert!(err.contains("4 designs"));

    let (_, out, _) = cli(&["enumerate", "--v", "7", "--kind", "mts"]);
    assert_eq!(out.matches("mts 7 ").count(), 3);

    let (_, out, _) = cli(&["enumerate", "--v", "6", "--kind", "mts"]);
    assert!(out.is_empty());

    let (_, out, _) = cli(&["--format", "structured", "enumerate", "--v", "4", "--kind", "tts"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 1);

    // generated catalog text reads back in
    let (_, out, _) = cli(&["enumerate", "--v", "9", "--kind", "mts"]);
    let f = temp_catalog(&out);
    let (code, out, _) = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!((code, out.lines().count()), (0, 18));
}

#[test]
fn delete_exp_examples() {
    let (code, out, _) = cli(&["delete-exp", "--label", "M10.118.1", "--ell", "4"]);
    assert_eq!(code, 0);
    let rows: Vec<_> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 30);
    let row: Vec<_> = rows.iter().find(|r| r.starts_with("(0,1,8)")).unwrap().split_whitespace().collect();
    assert_eq!(row, ["(0,1,8)", "920", "0128736459"]);

    let (_, out, _) = cli(&["delete-exp", "--label", "M10.134.1", "--ell", "4"]);
    let row: Vec<_> = out.lines().find(|r| r.starts_with("(1,9,8)")).unwrap().split_whitespace().collect();
    assert_eq!(row, ["(1,9,8)", "540", "0192836457"]);

    let (_, out, _) = cli(&["--format", "structured", "delete-exp", "--label", "M7.1.1", "--ell", "3"]);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r["count"].as_u64().unwrap() >= 336));
}

#[test]
fn report_examples() {
    let (code, out, err) = cli(&["report", "--v", "7"]);
    assert_eq!(code, 0);
    let row: Vec<_> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row, ["7", "4", "3", "3", "3", "0", "0"]);
    assert!(out.contains("M7.2.1 ell=3 count=336 least=0132564"));
    assert!(err.contains("enumerating TTS(7)"));

    let (_, out, _) = cli(&["report", "--v", "6"]);
    let row: Vec<_> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row, ["6", "1", "0", "0", "0", "0", "0"]);

    let (_, out, _) = cli(&["--format", "structured", "report", "--v", "10"]);
    let v = json(&out);
    assert_eq!(v["row"]["nonisomorphic_tts"], serde_json::Value::Null);
    assert_eq!(v["row"]["orientable_tts"], 134);
    assert_eq!(v["row"]["nonisomorphic_mts"], 143);
    assert_eq!(v["row"]["good_counts"], serde_json::json!([143, 138, 0]));
}

#[test]
fn report_paths_agree() {
    let (_, generated, _) = cli(&["report", "--v", "9"]);
    let (_, listed, _) = cli(&["report", "--v", "9", "--from-fixtures"]);
    let row: Vec<_> = generated.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row, ["9", "36", "16", "18", "18", "3", "0"]);
    let per_design = |s: &str| s.lines().filter(|l| l.starts_with('M')).map(String::from).collect::<Vec<_>>();
    assert_eq!(per_design(&generated), per_design(&listed));
    assert_eq!(per_design(&generated).len(), 18 * 3);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["report", "--v", "9"][..],
        &["sequence", "--label", "M10.1.1", "--ell", "3"][..],
        &["delete-exp", "--label", "M10.116.2", "--ell", "4"][..],
    ] {
        let one: Vec<&str> = ["--threads", "1"].iter().chain(args).copied().collect();
        let four: Vec<&str> = ["--threads", "4"].iter().chain(args).copied().collect();
        assert_eq!(cli(&one).1, cli(&four).1, "{args:?}");
    }
}

#[test]
fn directory_source() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("mts7.txt"), dir.path().join("a.txt")).unwrap();
    std::fs::copy(fixture("mts_small.txt"), dir.path().join("b.txt")).unwrap();
    std::fs::write(dir.path().join("notes.md"), "ignored").unwrap();
    let (code, out, _) = cli(&["validate", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
}
