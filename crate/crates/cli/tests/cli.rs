use std::path::PathBuf;
use std::process::{Command, Output};

fn qg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qg"))
        .args(args)
        .output()
        .expect("spawn qg")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qg-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

fn diagnostic(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).expect("stderr is a JSON diagnostic")
}

#[test]
fn analyze_d8_text() {
    let out = qg(&["analyze", "--group", "D8", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("QG = 4Q + M2(Q)"), "{text}");
}

#[test]
fn predicates_q8_json() {
    let out = qg(&["predicates", "--group", "Q8"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["predicates"]["higman_finite_units"], true);
    assert_eq!(v["predicates"]["cut"], true);
    assert!(v.get("wedderburn").map_or(true, |w| w.is_null()));
}

#[test]
fn non_associative_table_exits_2() {
    // A loop of order 5: Latin with identity, not associative.
    let table = r#"{"order":5,"table":[
        [0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;
    let path = scratch("loop.json", table);
    let out = qg(&["analyze", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let d = diagnostic(&out);
    assert_eq!(d["error"]["kind"], "INPUT");
    assert_eq!(d["error"]["variant"], "NotAssociative");
}

#[test]
fn unknown_name_and_missing_file_exit_2() {
    let out = qg(&["analyze", "--group", "Z99"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["variant"], "UnknownName");
    let out = qg(&["analyze", "--input", "/nonexistent/qg.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_bound_exits_3() {
    let out = qg(&["wedderburn", "--group", "C16", "--max-order", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(diagnostic(&out)["error"]["kind"], "BOUND");
}

#[test]
fn out_file_matches_stdout_and_is_deterministic() {
    let path = std::env::temp_dir().join(format!("qg-cli-{}-s3.json", std::process::id()));
    let out = qg(&["analyze", "--group", "S3", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let again = qg(&["analyze", "--group", "S3", "--seed", "7"]);
    assert_eq!(written, String::from_utf8(again.stdout).unwrap());
}

#[test]
fn permutation_input() {
    let path = scratch("s3perm.json", r#"{"degree":3,"generators":[[[0,1,2]],[[0,1]]]}"#);
    let out = qg(&["wedderburn", "--input", path.to_str().unwrap(), "--format", "text"]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("QG = 2Q + M2(Q)"));
}

#[test]
fn catalog_list_has_small_nonabelian_groups() {
    let out = qg(&["catalog-list"]);
    let names: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    for n in ["D6", "D8", "Q8", "P16", "Q12", "Q16"] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}
