use std::path::PathBuf;
use std::process::{Command, Output};

fn dvg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dvg")).args(args).output().expect("dvg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dvg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_then_solve_star() {
    let path = temp("star.json");
    let gen = dvg(&["gen", "star", "-p", "k=4", "--out", path.to_str().unwrap()]);
    assert!(gen.status.success());
    let solved = dvg(&["solve", path.to_str().unwrap(), "--rounds", "1"]);
    assert!(solved.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&solved)).unwrap();
    assert_eq!(v["ratio"], "4/5");
    assert_eq!(v["value"]["half_units"], 8);
    assert_eq!(v["principal_variation"], serde_json::json!([0, 1]));
}

#[test]
fn gen_dot() {
    let o = dvg(&["gen", "nine-vertex", "--format", "dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graph G {"));
}

#[test]
fn exploit_uses_strategy_side() {
    let path = temp("p5.json");
    assert!(dvg(&["gen", "path", "-p", "n=5", "--out", path.to_str().unwrap()]).status.success());
    let o = dvg(&["exploit", path.to_str().unwrap(), "--strategy", "central"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holder"], "a");
    assert_eq!(v["ratio"], "3/5");
    let o = dvg(&["exploit", path.to_str().unwrap(), "--strategy", "greedy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn passing_verify_exits_zero() {
    let o = dvg(&["verify", "star", "-p", "k=6", "--rounds", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["lhs"], "5/7");
    assert_eq!(v["pass"], true);
}

#[test]
fn failing_report_exits_one() {
    // the two-round strategy keeps exactly 1/3 of P_6
    let path = temp("p6.json");
    assert!(dvg(&["gen", "path", "-p", "n=6", "--out", path.to_str().unwrap()]).status.success());
    let o = dvg(&["verify", "two-round-strategy", "--graph", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn csv_report_file() {
    let path = temp("sandwich.csv");
    let o = dvg(&["verify", "sandwich", "--corpus", "connected:5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "bound,instance,lhs,relation,rhs,value,pass,seed,witness");
    // 6 + 21 graphs on 4 and 5 vertices
    assert_eq!(lines.count(), 27);
}

#[test]
fn seeded_corpus_is_reproducible() {
    let args = ["verify", "threshold", "--corpus", "random-trees:20:40", "--seed", "17"];
    let a = dvg(&args);
    let b = dvg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let first: serde_json::Value = serde_json::from_str(stdout(&a).lines().next().unwrap()).unwrap();
    assert_eq!(first["seed"], 17);
    let other = dvg(&["verify", "threshold", "--corpus", "random-trees:20:40", "--seed", "18"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn budget_error() {
    let path = temp("p12.json");
    assert!(dvg(&["gen", "path", "-p", "n=12", "--out", path.to_str().unwrap()]).status.success());
    let o = dvg(&["solve", path.to_str().unwrap(), "--rounds", "3", "--plain", "--budget-nodes", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn unknown_bound() {
    let o = dvg(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_rows() {
    let o = dvg(&["bench", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("instance,n,rounds,config,nodes"));
    assert_eq!(text.lines().count(), 11);
}
