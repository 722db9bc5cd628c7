use std::process::{Command, Output};

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_zeta_two() {
    let o = qzeta(&["eval", "zeta", "2", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q + q^2 - q^3 + 2q^4 - 4q^5 + O(q^6)");
}

#[test]
fn float_eval_carries_a_bound() {
    let o = qzeta(&["--q", "0.5", "eval", "zeta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" ± "));
}

#[test]
fn divergent_input_exits_one() {
    let o = qzeta(&["eval", "zeta", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverge"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qzeta(&["eval", "zeta", "x"]).status.code(), Some(2));
    assert_eq!(qzeta(&["--backend", "exact", "--q", "0.5", "eval", "zeta", "2"]).status.code(), Some(2));
    assert_eq!(qzeta(&["--backend", "float", "eval", "zeta", "2"]).status.code(), Some(2));
    assert_eq!(qzeta(&["verify", "no_such_identity"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // five Jackson levels cannot reach 1e-12
    let o = qzeta(&["--q", "0.5", "--tol", "1e-12", "verify", "jackson_rep", "--s", "2", "--k", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fail"));
}

#[test]
fn verify_duality() {
    let o = qzeta(&["verify", "duality", "--s", "3", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass duality"));
}

#[test]
fn catalog_lists_identities() {
    let out = stdout(&qzeta(&["catalog"]));
    for id in ["qstuffle", "duality", "drin", "qdiff_head"] {
        assert!(out.lines().any(|l| l.starts_with(id)), "{id}");
    }
}

#[test]
fn json_output() {
    let o = qzeta(&["--format", "json", "eval", "zeta", "2", "--order", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "q + q^2 - q^3 + O(q^4)");
    assert_eq!(v["backend"], "exact:Q=4");
}

#[test]
fn csv_output() {
    let o = qzeta(&["--format", "csv", "verify", "duality", "--s", "3", "--order", "20"]);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "id");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "duality");
    assert_eq!(&rows[0][2], "pass");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("qzeta-cli-{}.txt", std::process::id()));
    let o = qzeta(&["--output", path.to_str().unwrap(), "eval", "zeta", "3", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written.trim(), "q^2 + q^4 + O(q^5)");
}

#[test]
fn suite_summary() {
    let o = qzeta(&["suite", "duality", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.ends_with("passed, 0 failed, 0 warnings"), "{last}");
}
