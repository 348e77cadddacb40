use std::process::{Command, Output};

fn hunl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hunl")).args(args).output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(hunl(&["--help"]).status.code(), Some(0));
    assert_eq!(hunl(&["match", "--hands", "lots"]).status.code(), Some(1));
    assert_eq!(hunl(&["match", "--hands", "3", "--duplicate"]).status.code(), Some(1));
    assert_eq!(hunl(&["match", "--agent-a", "nobody"]).status.code(), Some(1));
    assert_eq!(hunl(&["replay", "/nonexistent/history.jsonl"]).status.code(), Some(2));
    assert_eq!(hunl(&["lint-library", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(hunl(&["advise", "--hole", "5c4x"]).status.code(), Some(2));
}

#[test]
fn match_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    let p = path.to_str().unwrap();
    let out = hunl(&["match", "--hands", "20", "--seed", "7", "--duplicate", "--out", p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stats: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["hands"], 20);
    let out = hunl(&["replay", p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("20 records replayed, 0 failed"));

    // A cut-off final line is a data error, with the earlier hands reported.
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() - 40]).unwrap();
    let out = hunl(&["replay", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("19 earlier records are intact"));
}

#[test]
fn replay_warns_on_library_change() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    let p = path.to_str().unwrap();
    assert!(hunl(&["match", "--hands", "4", "--out", p]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let hash = v["library_hash"].as_str().unwrap().to_string();
    std::fs::write(&path, text.replace(&hash, "0000")).unwrap();
    let out = hunl(&["replay", p]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("different skill library"));
}

#[test]
fn advise_trace_flop() {
    let out = hunl(&["advise", "--hole", "5c4c", "--board", "7s6hJc", "--history", "r2.75 r9 c"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("Scenario: F-A2") && s.contains("Verdict: attack remaining +5.0"), "{s}");
    let out = hunl(&["advise", "--hole", "5c4c", "--board", "7s6hJc", "--history", "r2.75 r9 c", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["digest"]["scenario"], "F-A2");
}
