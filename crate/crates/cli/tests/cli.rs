use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankwork")).args(args).env_remove("RANKWORK_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rankwork-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn exact_tables() {
    let v = json(&["exact", "--stat", "eta2", "--n", "1..10"]);
    assert_eq!(v["schema_version"], 1);
    let values: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["eta2"].as_str().unwrap()).collect();
    assert_eq!(values, ["0", "1", "4", "10", "21", "40", "70", "119", "190", "301"]);
    let v = json(&["exact", "--stat", "spt", "--n", "3"]);
    assert_eq!(v["rows"][0]["spt"], "5");
    let o = run(&["exact", "--stat", "p", "--n", "1..3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,p\n1,1\n2,2\n3,3\n");
}

#[test]
fn asymptotic_report() {
    let v = json(&["asym", "--stat", "p", "--n", "100"]);
    assert_eq!(v["exact"], "190569292");
    let rel: f64 = v["rel_error"].as_str().unwrap().parse().unwrap();
    assert!(rel < 1e-8);
}

#[test]
fn verify_and_scan() {
    let v = json(&["verify", "--law", "r2-modular", "--h", "1", "--k", "3", "--z", "0.8"]);
    assert_eq!(v["pass"], true);
    let o = run(&["scan", "--stat", "p", "--mod", "11", "--a-max", "11", "--n-max", "40", "--primitive", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("statistic,A,B,modulus,n_max_tested,status"));
    assert_eq!(lines.next(), Some("\"p\",11,6,11,40,verified-up-to 40"));
    assert_eq!(lines.next(), None);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["progression", "--stat", "p", "--a", "5", "--b", "4", "--mod", "5", "--n-max", "50"]).status.code(), Some(0));
    assert_eq!(run(&["progression", "--stat", "p", "--a", "13", "--b", "6", "--mod", "13", "--n-max", "20"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--law", "no-such-law"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--law", "r2-modular", "--h", "2", "--k", "4", "--z", "1"]).status.code(), Some(2));
    assert_eq!(run(&["asym", "--stat", "eta2", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--stat", "eta2", "--mod", "5", "--a-max", "100", "--n-max", "100"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-suite", "--digits", "30", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["scan", "--stat", "spt", "--mod", "7", "--a-max", "14", "--n-max", "30", "--threads", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn output_directory_from_environment() {
    let dir = scratch("env");
    let o = Command::new(env!("CARGO_BIN_EXE_rankwork"))
        .args(["exact", "--stat", "p", "--n", "5", "--format", "csv", "--output", "p.csv"])
        .env("RANKWORK_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(dir.join("p.csv")).unwrap(), "n,p\n5,7\n");
    std::fs::remove_dir_all(dir).unwrap();
}
