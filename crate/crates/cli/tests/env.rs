// Separate binary: the variable is process-wide.

#[test]
fn fixture_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.txt"), "mts 3 X3\n0 1 2\n0 2 1\n").unwrap();
    std::env::set_var(tripleseq_cli::FIXTURES_ENV, dir.path());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tripleseq_cli::run(["tripleseq", "validate"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "X3: valid\n");

    let mut out = Vec::new();
    let code = tripleseq_cli::run(["tripleseq", "sequence", "--label", "X3", "--ell", "3"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().lines().next(), Some("count=0"));
    std::env::remove_var(tripleseq_cli::FIXTURES_ENV);
}
