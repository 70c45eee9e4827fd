use std::process::{Command, Output};

fn katabol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_katabol")).args(args).env_remove("KATABOL_CACHE").output().expect("run katabol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn atom_latex() {
    let o = katabol(&["atom", "--k", "3", "--lambda", "2,1,1", "--format", "latex"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "S_{2,1,1}+t\\,S_{3,1}");
}

#[test]
fn kconj_and_pieri() {
    let o = katabol(&["kconj", "--k", "4", "--lambda", "2,2,1,1"]);
    assert_eq!(stdout(&o).trim(), "[3,2,1]");
    let o = katabol(&["pieri", "--k", "4", "--lambda", "3,2,1", "--ell", "2", "--col"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["[3,2,1,1,1]", "[3,2,2,1]", "[3,3,2]"]);
}

#[test]
fn exit_codes() {
    let o = katabol(&["atom", "--k", "2", "--lambda", "3,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2-bounded"));
    assert_eq!(katabol(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(katabol(&["atom", "--k", "3", "--lambda", "x"]).status.code(), Some(2));
    assert_eq!(katabol(&["poset", "--k", "3", "--lambda", "2,1", "--format", "latex"]).status.code(), Some(2));
    assert_eq!(katabol(&["classify", "--k", "3", "--tableau", "22/11"]).status.code(), Some(2));
}

fn report(args: &[&str]) -> serde_json::Value {
    let o = katabol(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_reports() {
    let r = report(&["verify", "all", "--max-degree", "0"]);
    assert_eq!(r["suite"], "all");
    let cells = r["cells"].as_array().unwrap();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c["status"] == "holds"));
    let r = report(&["verify", "involution", "--max-degree", "8", "--k-range", "1..6"]);
    assert!(r["cells"].as_array().unwrap().iter().all(|c| c["status"] == "holds"));
    let r = report(&["verify", "positivity", "--max-degree", "6", "--k-range", "1..6", "--jobs", "4"]);
    assert!(r["cells"].as_array().unwrap().iter().all(|c| c["status"] == "holds"));
}

#[test]
fn deterministic_output() {
    for args in [
        &["decompose", "--k", "3", "--lambda", "2,1,1,1", "--format", "json"][..],
        &["poset", "--k", "4", "--lambda", "3,2,2,1,1", "--format", "dot", "--filled"][..],
        &["verify", "decomposition", "--max-degree", "4", "--k-range", "2..3", "--no-timing"][..],
        &["macdonald", "--lambda", "2,2", "--format", "json"][..],
    ] {
        assert_eq!(katabol(args).stdout, katabol(args).stdout, "{:?}", args);
    }
}

#[test]
fn cache_warm_equals_cold() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["atom", "--k", "4", "--lambda", "3,2,2,1,1,1", "--cache", d, "--format", "json"];
    let cold = katabol(&args);
    assert!(dir.path().join("4").join("3,2,2,1,1,1.json").exists());
    let warm = katabol(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_katabol"))
        .args(["atom", "--k", "4", "--lambda", "3,2,2,1,1,1", "--format", "json"])
        .env("KATABOL_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(env.stdout, cold.stdout);
}

#[test]
fn hall_littlewood_in_atoms() {
    let o = katabol(&["hl", "--lambda", "2,1,1", "--k", "4", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "A^{(4)}_{2,1,1}+t\\,A^{(4)}_{2,2}+(t+t^{2})\\,A^{(4)}_{3,1}+t^{3}\\,A^{(4)}_{4}");
}
