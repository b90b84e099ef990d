use std::process::{Command, Output};

fn cutcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutcx"))
        .args(args)
        .output()
        .expect("run cutcx")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fvector_and_hvector() {
    let out = cutcx(&["fvector", "-g", "path:5", "-k", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 5 10 6");
    let out = cutcx(&["hvector", "-g", "path:5", "-k", "2", "--csv"]);
    assert_eq!(stdout(&out).trim(), "1,2,3,0");
}

#[test]
fn betti_json() {
    let out = cutcx(&["betti", "-g", "grid:3x3", "-k", "5"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["betti"]["3"], 25);
    assert_eq!(value["euler_reduced"], -25);
}

#[test]
fn shelling_find_exit_codes() {
    assert_eq!(
        cutcx(&["shelling", "find", "-g", "path:6", "-k", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        cutcx(&["shelling", "find", "-g", "cycle:5", "-k", "2"]).status.code(),
        Some(1)
    );
    let out = cutcx(&["shelling", "find", "-g", "grid:3x3", "-k", "3", "--max-nodes", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("cutcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = dir.join("c6.txt");
    let json = dir.join("c6.json");
    std::fs::write(&text, stdout(&cutcx(&["family", "cycle:6"]))).unwrap();
    std::fs::write(&json, stdout(&cutcx(&["family", "cycle:6", "--json"]))).unwrap();
    let a = cutcx(&["cut-complex", "-f", text.to_str().unwrap(), "-k", "3"]);
    let b = cutcx(&["cut-complex", "-f", json.to_str().unwrap(), "-k", "3"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn morse_grid() {
    let out = cutcx(&["morse", "grid-delta4", "3", "3"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["acyclic"], true);
    assert_eq!(value["critical_by_dim"]["4"], 20);
}

#[test]
fn characters_match_dimension() {
    let out = cutcx(&["character", "hook", "5", "3", "1,1,1,1,1"]);
    assert!(stdout(&out).trim().ends_with("\t6"));
    let out = cutcx(&["character", "cycle", "6", "3", "--element", "r0", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["r0"], 4);
}

#[test]
fn verify_formulas_csv() {
    let out = cutcx(&[
        "verify-formulas",
        "--family",
        "squared-path",
        "--range",
        "5..7",
        "--csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("group,check,parameters,expected,computed,status"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));
}

#[test]
fn tables_pass() {
    let out = cutcx(&["tables", "--which", "grid-2n"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("grid-2n: 30 cells, 0 differ"));
}

#[test]
fn bad_input_is_an_error() {
    let out = cutcx(&["betti", "-g", "nonsense:3", "-k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
