use std::process::{Command, Output};

fn cmrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmrel")).args(args).env_remove("CMREL_PREC").env_remove("CMREL_SAMPLE_BOX").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn emit_and_simple_queries() {
    let o = cmrel(&["relations", "emit", "--case", "ord"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "X12");
    assert_eq!(stdout(&cmrel(&["relations", "emit", "--case", "ram0"])).trim(), "-b*X12^2 + 2*a*X12*X22");
    assert_eq!(stdout(&cmrel(&["class-number", "-23"])).trim(), "3");
    assert_eq!(stdout(&cmrel(&["forms", "-23"])).lines().count(), 3);
    assert_eq!(stdout(&cmrel(&["symbols", "kronecker", "-3", "5"])).trim(), "-1");
    assert_eq!(stdout(&cmrel(&["symbols", "hilbert", "-1", "-1", "infinity"])).trim(), "-1");
    assert_eq!(stdout(&cmrel(&["deuring", "--d", "-3", "--p", "7"])).trim(), "ordinary");
}

#[test]
fn reduce_prints_the_remainder() {
    assert_eq!(stdout(&cmrel(&["reduce", "X11*X22 - X12*X21 - 1"])).trim(), "0");
    let o = cmrel(&["reduce", "X11*X22 - 1", "--json"]);
    let v = json(&o);
    assert_eq!(v["remainder"], "X12*X21");
    assert_eq!(v["in_ideal"], false);
    let o = cmrel(&["reduce", "s^2*X12", "--root", "s=5"]);
    assert_eq!(stdout(&o).trim(), "5*X12");
}

#[test]
fn pset_json() {
    assert!(stdout(&cmrel(&["pset", "--d0", "-3", "--dj", "-4"])).contains("\"primes\":[]"));
    let v = json(&cmrel(&["pset", "--d0", "-3", "--dj", "-7"]));
    assert_eq!(v["primes"], serde_json::json!([5]));
    let strict = json(&cmrel(&["pset", "--d0", "-3", "--dj", "-7", "--strict-def"]));
    assert_eq!(strict["primes"], v["primes"]);
}

#[test]
fn nontrivial_report_is_deterministic() {
    let args = ["nontrivial", "--case", "ram4", "--trials", "20", "--seed", "7"];
    let a = cmrel(&args);
    let b = cmrel(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["symbolically_nonzero"], true);
    assert_eq!(v["seed"], 7);
    assert!(v["witness"].is_object());
    let g = json(&cmrel(&["nontrivial", "--poly", "X11*X22 - X12*X21 - 1", "--trials", "5", "--seed", "1"]));
    assert_eq!(g["symbolically_nonzero"], false);
}

#[test]
fn sample_box_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_cmrel"))
        .args(["nontrivial", "--case", "ram0", "--trials", "5", "--seed", "3"])
        .env("CMREL_SAMPLE_BOX", "7")
        .output()
        .unwrap();
    assert_eq!(json(&o)["sampling"]["sample_box"], 7);
}

#[test]
fn gz_report() {
    let v = json(&cmrel(&["gz", "--d1", "-3", "--d2", "-7", "--prec", "192"]));
    assert_eq!(v["integer"], 3375);
    assert_eq!(v["factors"], serde_json::json!([[3, 3], [5, 3]]));
    assert!(v["residual"].as_f64().unwrap() < 1e-6);
    let auto = json(&cmrel(&["gz", "--d1", "-3", "--d2", "-4"]));
    assert_eq!(auto["integer"], -1728);
}

#[test]
fn domain_and_usage_errors() {
    let o = cmrel(&["class-number", "-5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "invalid_discriminant");
    let o = cmrel(&["gz", "--d1", "-3", "--d2", "-3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "equal_discriminants");
    let o = cmrel(&["relations", "emit", "--case", "nope"]);
    assert_eq!(json(&o)["error"], "unknown_case");
    let o = cmrel(&["reduce", "X11 + c"]);
    assert_eq!(json(&o)["error"], "undeclared_symbol");
    assert_eq!(cmrel(&["pset", "--d0", "-3"]).status.code(), Some(2));
    assert_eq!(cmrel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cmrel(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = cmrel(&["scan", "--d0", "-3", "--from", "-40", "--to", "-4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("d,h_class,pset_size"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("-4,1,0,"), "{first}");
    let stdout_csv = stdout(&cmrel(&["scan", "--d0", "-3", "--from", "-40", "--to", "-4"]));
    assert_eq!(stdout_csv, text);
    let empty = stdout(&cmrel(&["scan", "--d0", "-3", "--from", "-2", "--to", "-1", "--json"]));
    assert_eq!(empty.trim(), "[]");
}
