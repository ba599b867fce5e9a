use std::io::Write;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn sghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sghom")).args(args).env_remove("SGHOM_SEED").output().unwrap()
}

fn sghom_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sghom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_pipeline_builds_rho_of_sp9_plus() {
    let sp = sghom(&["gen", "sp+", "9"]);
    assert!(sp.status.success());
    let rho = sghom_stdin(&["gen", "rho", "-"], &sp.stdout);
    assert!(rho.status.success());
    assert!(stdout(&rho).starts_with("20 "));
}

#[test]
fn mad_of_cycle() {
    let o = sghom(&["mad", &data("c7.sg")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("mad = 2/1"));
}

#[test]
fn manifest_on_stderr() {
    let o = sghom(&["mad", &data("c7.sg")]);
    let err = String::from_utf8(o.stderr).unwrap();
    let line = err.lines().find(|l| l.starts_with("manifest ")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&line["manifest ".len()..]).unwrap();
    assert_eq!(v["subcommand"], "mad");
    assert_eq!(v["outcome"], "ok");
    assert_eq!(v["seed"], 0);
}

#[test]
fn verify_cf_table() {
    let o = sghom(&["verify", "cf"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("c=3-4    forbid=4"));
    assert!(out.contains("c=12-20  forbid=0"));
    assert!(out.contains("cf OK bound=table mode=exhaustive"));
}

#[test]
fn hom_found_and_none() {
    let o = sghom(&["hom", &data("c7.sg"), &data("c7.sg")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("FOUND map="));
    // closed 4-walks in C7 are balanced
    let o = sghom(&["hom", &data("c4_unbalanced.sg"), &data("c7.sg")]);
    assert_eq!(o.status.code(), Some(1));
    let o = sghom(&["sphom", &data("c7.sg"), &data("k2.sg")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NONE");
}

#[test]
fn chi_of_unbalanced_c4() {
    let o = sghom(&["chi", &data("c4_unbalanced.sg")]);
    assert_eq!(stdout(&o).trim(), "chi_s = 4");
}

#[test]
fn switching_round_trip() {
    let o = sghom(&["switch", &data("c7.sg"), "0,3"]);
    assert!(o.status.success());
    let switched = std::env::temp_dir().join("sghom_cli_switched.sg");
    std::fs::write(&switched, &o.stdout).unwrap();
    let e = sghom(&["equiv", &data("c7.sg"), switched.to_str().unwrap()]);
    assert!(e.status.success());
    assert_eq!(stdout(&e).trim(), "EQUIVALENT");
    let e = sghom(&["equiv", &data("c7.sg"), &data("c4_unbalanced.sg")]);
    assert_eq!(e.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(sghom(&["bogus"]).status.code(), Some(64));
    assert_eq!(sghom(&["verify", "nope"]).status.code(), Some(64));
    assert_eq!(sghom(&["discharge", &data("c7.sg"), "--theorem", "sp7"]).status.code(), Some(64));
}

#[test]
fn library_errors_exit_2() {
    assert_eq!(sghom(&["gen", "sp", "7"]).status.code(), Some(2));
    assert_eq!(sghom(&["mad", "/nonexistent/graph.sg"]).status.code(), Some(2));
    assert_eq!(sghom(&["reduce", "SP5:C9"]).status.code(), Some(2));
}

#[test]
fn discharge_reports_violations() {
    let o = sghom(&["discharge", &data("c7.sg"), "--theorem", "sp5"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("negative final weight"));
    assert!(out.contains("configuration SP5:C2"));
}

#[test]
fn audits_pass() {
    let o = sghom(&["audit", "sp9-degrees"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("degree=4 t=4 b=0 n=0: skipped (C6)"));
    let o = sghom(&["audit", "spq:13"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2*(q+1)/(q+3)"));
}

#[test]
fn reduce_transcript() {
    let o = sghom(&["reduce", "SP9:C4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("REDUCIBLE"));
    let o = sghom(&["verify", "reduce:SP9:C7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mode=forbidding"));
}

#[test]
fn json_checks() {
    let o = sghom(&["--json", "verify", "sp5claims"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["ok"] == true));
}

#[test]
fn sampled_runs_are_reproducible() {
    let a = sghom(&["verify", "p75", "--seed", "3"]);
    let b = Command::new(env!("CARGO_BIN_EXE_sghom")).args(["verify", "p75"]).env("SGHOM_SEED", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("mode=sampled(seed=3"));
}
