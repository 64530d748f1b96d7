use std::process::Command;

fn ctxsd(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ctxsd"))
        .args(args)
        .env_remove("CTXSD_TOL")
        .output()
        .unwrap()
}

#[test]
fn table_defaults() {
    let out = ctxsd(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches(" advantage").count(), 8);
    assert!(!text.contains("no advantage"));
}

#[test]
fn table_reports_impossible_usd() {
    let text = String::from_utf8(ctxsd(&["table", "--c", "1"]).stdout).unwrap();
    assert!(text.contains("USD impossible"));
}

#[test]
fn figure_to_file_and_stdout_match() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.csv");
    let out = ctxsd(&["figure", "fig4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = ctxsd(&["figure", "fig4"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    assert!(String::from_utf8(stdout).unwrap().starts_with("c,Pg_Q,Pg_NC\n0,0.75,0.375\n"));
}

#[test]
fn sweep_csv() {
    let out = ctxsd(&["sweep", "c", "--points", "3", "--target", "mesd:pg:q", "--target", "mesd:pg:nc"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "c,mesd:pg:q,mesd:pg:nc\n0,1,1\n0.5,0.853553391,0.75\n1,0.5,0.5\n"
    );
}

#[test]
fn bounds_single_target() {
    let out = ctxsd(&["bounds", "--c", "0.5", "usd:p0:nc"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "usd:p0:nc 0.75\n");
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(ctxsd(&["figure", "fig9"]).status.code(), Some(2));
    assert_eq!(ctxsd(&["figure", "fig2", "--out", "/nonexistent-dir/f.csv"]).status.code(), Some(2));
    assert_eq!(ctxsd(&["sweep", "x", "--target", "mesd:pg:q"]).status.code(), Some(2));
    assert_eq!(ctxsd(&["verify", "--points", "3"]).status.code(), Some(2));
    assert_eq!(ctxsd(&["bogus"]).status.code(), Some(2));
}

#[test]
fn corrupted_tolerance_fails_verification() {
    let out = Command::new(env!("CARGO_BIN_EXE_ctxsd"))
        .args(["verify", "--points", "5"])
        .env("CTXSD_TOL", "construction=1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_small_grid_passes() {
    let out = ctxsd(&["verify", "--points", "5"]);
    assert_eq!(out.status.code(), Some(0));
}
