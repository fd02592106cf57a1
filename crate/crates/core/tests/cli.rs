use std::process::{Command, Output};

fn matargs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matargs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = matargs(&["zonal-eval", "--kappa", "2", "--eigs", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 8.0 / 3.0).abs() < 1e-15);

    let o = matargs(&["gamma-mv", "--m", "2", "--a", "3"]);
    assert!(stdout(&o).starts_with("4.712388980"));
}

#[test]
fn discrimination_run_passes() {
    let o = matargs(&[
        "verify-theorem1", "--m", "2", "--a", "4", "--kappa", "2,0", "--z", "identity",
        "--samples", "1000000", "--seed", "42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert!(v["z_incorrect"].as_f64().unwrap().abs() >= 10.0);
    assert!(v["z_correct"].as_f64().unwrap().abs() <= 4.0);
}

#[test]
fn verdict_exit_codes() {
    // Too few samples to reject the incorrect constant: inconclusive.
    let o = matargs(&[
        "verify-theorem1", "--m", "2", "--a", "4", "--kappa", "2", "--samples", "200",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    // An absurd acceptance band turns the same run into a failure.
    let o = matargs(&[
        "verify-theorem1", "--m", "2", "--a", "4", "--kappa", "2", "--samples", "2000",
        "--z-pass", "0",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn usage_and_domain_errors() {
    for args in [
        &["verify-theorem1", "--m", "2", "--a", "1.9", "--kappa", "2"][..],
        &["gen-pochhammer", "--b", "1", "--kappa", "1,2", "--m", "2"],
        &["verify-corollary1", "--m", "2", "--a", "4", "--kappa", "1", "--v", "diag:1,-1"],
        &["verify-lemma2", "--m", "2", "--kappa", "2", "--grid-size", "2"],
        &["verify-gamma-quad", "--m", "3", "--a", "3"],
        &["zonal-eval", "--kappa", "2"],
        &["frobnicate"],
    ] {
        let o = matargs(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let o = matargs(&["verify-theorem1", "--m", "2", "--a", "1.9", "--kappa", "2"]);
    assert!(stderr(&o).contains("requires a > k_1 + (m-1)/2"));
}

#[test]
fn matrix_files_are_read() {
    let dir = std::env::temp_dir().join(format!("matargs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z.json");
    std::fs::write(&path, r#"{"m": 2, "data": [[2.0, 0.5], [0.5, 1.0]]}"#).unwrap();
    let o = matargs(&[
        "zonal-eval", "--kappa", "1", "--matrix", path.to_str().unwrap(), "--m", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 3.0).abs() < 1e-12);
    let o = matargs(&["zonal-eval", "--kappa", "1", "--matrix", "/no/such/file.json", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "verify-theorem1", "--m", "2", "--a", "3.5", "--kappa", "1,1", "--z", "random",
        "--samples", "30000", "--seed", "9",
    ];
    assert_eq!(matargs(&args).stdout, matargs(&args).stdout);
    let other_seed = [&args[..args.len() - 1], &["10"]].concat();
    assert_ne!(matargs(&args).stdout, matargs(&other_seed).stdout);
}

#[test]
fn selftest_passes() {
    let o = matargs(&["selftest", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
}
