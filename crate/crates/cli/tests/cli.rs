use std::process::{Command, Output};

fn towerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerlab")).args(args).output().expect("binary runs")
}

#[test]
fn csv_report_columns() {
    let out = towerlab(&["verify", "--p", "41", "--r", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "check_id,p,r,expected,computed,verdict,provenance_tag");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].starts_with("C1,41,3,(2),(2),pass,published"), "{}", rows[0]);
}

#[test]
fn table_and_json_outputs() {
    let out = towerlab(&["scan-cond1", "--pmax", "200", "--r", "3,7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check_id"));
    assert!(text.contains("3 pairs: (41,3) (41,7) (137,3)"), "{text}");

    let out = towerlab(&["pell8", "--pmax", "1000", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["exceptional"], serde_json::json!([761]));
}

#[test]
fn exit_codes() {
    assert_eq!(towerlab(&["groups", "verify"]).status.code(), Some(0));
    // usage errors
    assert_eq!(towerlab(&["pell8"]).status.code(), Some(2));
    assert_eq!(towerlab(&["verify", "--p", "73", "--r", "3"]).status.code(), Some(2));
    assert_eq!(towerlab(&["pell8", "--pmax", "100000000"]).status.code(), Some(2));
    assert_eq!(towerlab(&["oracle", "validate", "--file", "/nonexistent.json"]).status.code(), Some(2));
    // findings
    let dir = std::env::temp_dir().join(format!("towerlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"[{"field": "K2(p=41,r=3)", "order": 8, "invariants": [8], "source": "test"}]"#).unwrap();
    let out = towerlab(&["oracle", "validate", "--file", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains(r#""fixture/K2(p=41,r=3)",41,3,4,"K2(p=41,r=3): 8",fail,fixture"#));
    std::fs::remove_dir_all(&dir).unwrap();
}
