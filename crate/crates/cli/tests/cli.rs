use parry_pascal_cli::run;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("parry-pascal").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn describe_golden_ratio() {
    let (code, out, err) = cli(&["describe", "--dbeta", "1,1"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("β ≈ 1.618034"));
    assert!(out.contains("d*_β(1) = (10)^ω"));
    assert!(out.contains("U = 1,2,3,5,8,13,21,34,55,89,…"));
    assert!(out.contains("C_β = 1"));
    assert!(out.contains("a1\ta0\t-"));
}

#[test]
fn describe_custom_system() {
    let (code, out, _) = cli(&[
        "describe",
        "--custom-coeffs",
        "1,1",
        "--custom-init",
        "1,3",
        "--terms",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "U = 1,3,4,7,11,18,…");
}

#[test]
fn conversions() {
    assert_eq!(cli(&["convert", "--dbeta", "1,1", "rep", "7"]).1, "1010\n");
    assert_eq!(cli(&["convert", "--dbeta", "1,1", "val", "1010"]).1, "7\n");
    assert_eq!(cli(&["convert", "--dbeta", "1;1", "rep", "0"]).1, "\n");
    assert_eq!(cli(&["convert", "--dbeta", "2,1,0,1", "rep", "20"]).1, "1000\n");
    let (code, _, err) = cli(&["convert", "--dbeta", "1,1", "val", "11"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["describe", "--dbeta", "1,2"][..],
        &["describe", "--dbeta", "x"],
        &["uset", "--mod", "4"],
        &["uset", "--residue", "0"],
        &["uset", "--format", "svg"],
        &["segments", "--format", "pbm"],
        &["converge", "--from", "5", "--n", "4"],
        &["triangle", "--bogus"],
        &["frobnicate"],
        &["describe", "--custom-coeffs", "1,1"],
        &["uset", "--threads", "0"],
    ] {
        let (code, out, err) = cli(args);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn io_errors_exit_two() {
    let (code, _, err) = cli(&["uset", "--n", "3", "--out", "/nonexistent/dir/u.pbm"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn outputs_are_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["uset", "--n", "8", "--scale", "2"][..],
        &["uset", "--n", "7", "--mod", "3", "--residue", "2", "--format", "csv"],
        &["segments", "--maxlen", "7", "--iters", "2"],
        &["segments", "--maxlen", "6", "--iters", "1", "--format", "json"],
        &["triangle", "--rows", "30", "--cols", "20", "--format", "csv"],
        &[
            "converge",
            "--from",
            "2",
            "--n",
            "6",
            "--maxlen",
            "6",
            "--iters",
            "2",
            "--spacing",
            "0.01",
        ],
    ] {
        let mut outputs = Vec::new();
        for threads in ["1", "3"] {
            let path = dir.path().join(format!("out-{threads}"));
            let mut full = args.to_vec();
            full.extend(["--threads", threads, "--out", path.to_str().unwrap()]);
            let (code, _, err) = cli(&full);
            assert_eq!(code, 0, "{args:?}: {err}");
            outputs.push(std::fs::read(&path).unwrap());
        }
        let (code, stdout, _) = cli(args);
        assert_eq!(code, 0);
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        assert_eq!(outputs[0], stdout.into_bytes(), "{args:?}");
    }
}

#[test]
fn verify_passes_for_golden_ratio() {
    let (code, out, _) = cli(&["verify", "--dbeta", "1,1", "--maxlen", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.trim_end().ends_with("failed") && out.contains(", 0 failed"));
}

#[test]
fn verify_other_systems() {
    for dbeta in ["2,1,0,1", "1,0,0,1", "1;1"] {
        let (code, out, _) = cli(&["verify", "--dbeta", dbeta, "--maxlen", "4"]);
        assert_eq!(code, 0, "{dbeta}\n{out}");
    }
    let (code, out, _) = cli(&["verify", "--maxlen", "5", "--mod", "3", "--residue", "2"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn uset_pbm_shape() {
    let (code, out, _) = cli(&["uset", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "P1\n5 5\n1 0 0 0 0\n1 1 0 0 0\n1 1 1 0 0\n1 1 0 1 0\n1 0 1 0 1\n");
}
