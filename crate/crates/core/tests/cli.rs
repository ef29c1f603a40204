use std::process::{Command, Output};

fn rwmaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwmaps")).args(args).output().expect("run rwmaps")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn graph_edges_and_json() {
    let o = rwmaps(&["graph", "--n", "4", "--a", "2", "--r", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 16);
    let o = rwmaps(&["graph", "--n", "4", "--a", "2", "--r", "1", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "rwmaps/1");
}

#[test]
fn classify_text_for_k44() {
    let o = rwmaps(&["classify", "--n", "4", "--a", "2", "--r", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("class 2_{0,1}"), "{text}");
    assert!(text.contains("faces 4, 8"), "{text}");
}

#[test]
fn classify_json_is_versioned() {
    let o = rwmaps(&["classify", "--n", "22", "--a", "2", "--r", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "rwmaps/1");
    assert_eq!(v["maps"].as_array().unwrap().len(), 3);
    assert_eq!(v["overlap"], true);
}

#[test]
fn verify_family_iv() {
    let o = rwmaps(&["verify", "--family", "iv", "--max", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("6 graphs, 0 mismatches"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--family", "ii", "--max", "10", "--format", "json"];
    assert_eq!(rwmaps(&args).stdout, rwmaps(&args).stdout);
}

#[test]
fn h2_census() {
    let o = rwmaps(&["cycles", "--n", "24", "--a", "8", "--r", "19", "--group", "h2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["identity_holds"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(rwmaps(&["graph", "--n", "8", "--a", "1", "--r", "4"]).status.code(), Some(3));
    assert_eq!(rwmaps(&["classify", "--n", "4", "--a", "2", "--r", "1", "--format", "yaml"]).status.code(), Some(3));
    assert_eq!(rwmaps(&["cycles", "--n", "8", "--a", "2", "--r", "1", "--group", "h1"]).status.code(), Some(3));
    assert_eq!(rwmaps(&["oracle", "--n", "12", "--a", "2", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rwmaps"))
        .args(["aut", "--n", "12", "--a", "2", "--r", "1"])
        .env("RWMAPS_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_on_smallest_family_ii_graph() {
    let o = rwmaps(&["oracle", "--n", "6", "--a", "5", "--r", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 3);
}
