use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-stringy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn euler_table_csv_rows() {
    let o = run(&["euler-table", "--genus", "3..4", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "genus,euler_exact,euler_formula,match");
    assert_eq!(lines[1], "3,560,128,false");
    assert_eq!(lines[2], "4,41664/5,2304/5,false");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_genus_two() {
    let o = run(&["verify", "--genus", "2..2", "--format", "json"]);
    let outcomes: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    let status = |name: &str| {
        outcomes
            .iter()
            .find(|v| v["check_name"] == name)
            .map(|v| v["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("residue-sum"), "pass");
    assert_eq!(status("even-coefficient-sum"), "pass");
    assert_eq!(status("stringy-euler"), "skip");
    assert_eq!(status("display-type4-line"), "warn");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compute_json_schema() {
    let o = run(&["compute", "--genus", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    let r = &reports[0];
    assert_eq!(r["genus"], 3);
    assert_eq!(r["euler_formula"], "128");
    assert_eq!(r["is_polynomial"], true);
    assert_eq!(r["breakdown"].as_array().unwrap().len(), 7);
    assert!(r["e_st"]["num"].is_array());
    assert!(r["display_difference"]["num"].is_array());
    let e_st: hodge_stringy::FactoredRational = serde_json::from_value(r["e_st"].clone()).unwrap();
    assert_eq!(e_st.uv_degree(), Ok(12));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["stratum", "--genus", "2..4", "--format", "json"]);
    let b = run(&["stratum", "--genus", "2..4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("divisors.csv");
    let o = run(&["divisors", "--genus", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("genus,J,closed_uv_degree,open_uv_degree\n3,D1,11,11\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--genus", "2..13"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--genus", "2"]).status.code(), Some(2));
    assert_eq!(run(&["stratum", "--stratum", "type9"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let missing = run(&["stratum", "--out", "/nonexistent-dir/out.json"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn stratum_type_alias_and_clamp_warning() {
    let o = run(&["stratum", "--type", "type3", "--genus", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "genus,stratum,dim,uv_degree,dim_check,symmetric\n2,type3,3,3,true,true\n");
    let clamped = run(&["euler-table", "--genus", "2..3", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&clamped.stderr).contains("warning"));
    assert_eq!(stdout(&clamped).lines().count(), 2);
}

#[test]
fn strict_mode_fails_on_display_deltas() {
    let lax = run(&["verify", "--genus", "3", "--format", "csv"]);
    let strict = run(&["verify", "--genus", "3", "--format", "csv", "--strict"]);
    assert!(stdout(&lax).contains("3,display-type1-line,warn,false"));
    assert!(stdout(&strict).contains("3,display-type1-line,fail,false"));
}
