use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_all_a2() {
    let out = run(&["verify", "all", "A2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5 maximal 1-rigid objects"));
    assert!(!text.contains("FAIL"));
    assert!(!text.contains("elapsed"));
}

#[test]
fn verify_all_a3_m2_counts() {
    let v = json(&["verify", "all", "A3", "--m", "2", "--json"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["counts"]["maximal_m_rigid"], 55);
    assert_eq!(v["counts"]["summand_sizes"]["3"], 55);
    assert_eq!(v["counts"]["complements"]["3"], 165);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn m_zero_is_a_usage_error() {
    assert_eq!(
        run(&["verify", "all", "A2", "--m", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["enumerate", "X9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_exit_code() {
    let out = run(&["enumerate", "A3", "--max-cliques", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "cluster", "A3", "--max-cliques", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("capped"));
}

#[test]
fn enumerate_and_complements() {
    let v = json(&["enumerate", "A2", "--m", "2", "--json"]);
    assert_eq!(v["count"], 12);
    let v = json(&["complements", "A1", "--m", "2", "--object", "", "--json"]);
    assert_eq!(v["complements"].as_array().unwrap().len(), 3);
    let v = json(&[
        "complements",
        "A3",
        "--m",
        "2",
        "--object",
        "001,011,111",
        "--drop",
        "001",
        "--json",
    ]);
    assert_eq!(v["complements"].as_array().unwrap().len(), 3);
}

#[test]
fn localise_and_endo() {
    let v = json(&[
        "localise", "A2", "--object", "01,11", "--at", "11", "--json",
    ]);
    assert_eq!(v["image"], serde_json::json!(["1[0]"]));
    assert_eq!(v["maximal"], true);
    let v = json(&["endo", "A2", "--object", "01,11", "--json"]);
    assert_eq!(v["total_dim"], 3);
    let v = json(&[
        "endo",
        "A2",
        "--object",
        "01,11",
        "--factor-at",
        "11",
        "--json",
    ]);
    assert_eq!(v["factor"]["dims"], serde_json::json!([[1]]));
    assert_eq!(v["dims_agree"], true);
}

#[test]
fn hom_roots_and_domain() {
    let v = json(&["hom", "A2", "10", "01", "--json"]);
    assert_eq!(v["hom_d"], 0);
    assert_eq!(v["ext_cluster"], serde_json::json!([0, 1]));
    let v = json(&["roots", "D4", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 12);
    let v = json(&["fd", "A3", "--m", "2", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 15);
    let v = json(&["ar-quiver", "A3", "--json"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn quiver_from_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("a3_zigzag.json");
    std::fs::write(
        &path,
        r#"{"vertices":["a","b","c"],"arrows":[["a","b"],["c","b"]]}"#,
    )
    .unwrap();
    let v = json(&[
        "verify",
        "cluster",
        path.to_str().unwrap(),
        "--m",
        "2",
        "--json",
    ]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["counts"]["maximal_m_rigid"], 55);
}

#[test]
fn window_flag() {
    assert_eq!(
        run(&["fd", "A2", "--window", "-1:1"]).status.code(),
        Some(3)
    );
    assert!(run(&["fd", "A2", "--window", "-4:8"]).status.success());
    assert_eq!(
        run(&["fd", "A2", "--window", "oops"]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["verify", "all", "D4", "--m", "1", "--json"]);
    let b = run(&["verify", "all", "D4", "--m", "1", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_flag_adds_elapsed() {
    let v = json(&["verify", "cluster", "A2", "--json", "--timings"]);
    assert!(v["elapsed_ms"].is_u64());
}
