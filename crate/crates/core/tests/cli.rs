use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn programs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

fn rfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfn")).args(args).output().expect("run rfn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn program(name: &str) -> String {
    programs().join(name).display().to_string()
}

fn scratch_file(dir: &tempfile::TempDir, name: &str, src: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, src).unwrap();
    path.display().to_string()
}

#[test]
fn eval_collect() {
    let o = rfn(&["eval", &program("collect.rfn"), "--fuel", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "inr((5, inr((4, inr((3, inl(unit)))))))");
}

#[test]
fn check_even() {
    let o = rfn(&["check", &program("even.rfn")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn eval_diverge_times_out() {
    let o = rfn(&["eval", &program("diverge.rfn"), "--fuel", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).trim(), "timeout");
}

#[test]
fn type_error_exit_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = scratch_file(&dir, "bad.rfn", "def x : {v: Int32 with v > 0} = 0 - 3\n");
    let o = rfn(&["check", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[E-ENTAIL]"));
    let o = rfn(&["check", &f, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["code"], "E-ENTAIL");
    assert_eq!(lines[0]["severity"], "error");
    assert_eq!(lines[0]["expected"], "{x0: Int32 with x0 > 0}");
    let end = lines[0]["span"]["end"].as_u64().unwrap();
    assert!(end as usize <= std::fs::read_to_string(&f).unwrap().len());
}

#[test]
fn eval_refuses_ill_typed_programs() {
    let dir = tempfile::tempdir().unwrap();
    let f = scratch_file(&dir, "bad.rfn", "def x : {v: Int32 with v > 0} = 0 - 3\nmain = x\n");
    assert_eq!(rfn(&["eval", &f]).status.code(), Some(1));
}

#[test]
fn parse_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = scratch_file(&dir, "parse.rfn", "def x : Int32 = (1 +\n");
    let o = rfn(&["check", &f, "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let d: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(d["code"], "E-PARSE");
    assert_eq!(rfn(&["check", "/nonexistent/file.rfn"]).status.code(), Some(2));
    assert_eq!(rfn(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unbound_name() {
    let dir = tempfile::tempdir().unwrap();
    let f = scratch_file(&dir, "unbound.rfn", "main = y + 1\n");
    let o = rfn(&["check", &f, "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("E-UNBOUND"));
}

#[test]
fn anf_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = scratch_file(
        &dir,
        "anf.rfn",
        "def f : Pi(x: Int32) -> Int32 = fun(x: Int32) => x\nmain = f (1 + 2)\n",
    );
    assert_eq!(rfn(&["check", &f]).status.code(), Some(0));
    let o = rfn(&["check", &f, "--no-anf", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"E-ANF\""));
}

#[test]
fn solver_trace_lines() {
    let o = rfn(&["check", &program("even.rfn"), "--trace-solver"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("entail [(a0 == 42)] |- ((a0 % 2) == 0) : Proved")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("merge ")), "{out}");
}

#[test]
fn solve_with_oracle() {
    let o = rfn(&["solve", "--facts", "y == 2*x + 3*x", "--goal", "y == 5*x", "--oracle", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["entailed"], true);
    assert_eq!(v["oracle_entailed"], true);

    let o = rfn(&["solve", "--facts", "x > 0", "--goal", "x > 1", "--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("countermodel x = 1"));

    let o = rfn(&["solve", "--facts", "x > 1; y == x", "--goal", "y > 0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_is_deterministic() {
    for name in ["collect.rfn", "max.rfn", "even.rfn"] {
        let runs: Vec<Output> = (0..3).map(|_| rfn(&["check", &program(name), "--json"])).collect();
        for r in &runs[1..] {
            assert_eq!(r.status.code(), runs[0].status.code());
            assert_eq!(r.stdout, runs[0].stdout);
        }
    }
}
