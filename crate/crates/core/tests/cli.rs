use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperclass"))
        .args(args)
        .env_remove("HYPERCLASS_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classnum_genus_zero() {
    let out = run(&["classnum", "--p", "3", "--e", "2", "--poly", "1+0T+1T^2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().last().unwrap();
    assert!(row.starts_with("3,2,1+0T+1T^2,2,0,2,2,2,"), "{row}");
    assert!(row.ends_with(",ok"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["classnum", "--p", "3", "--poly", "2+0T+1T^2"])), 2);
    assert_eq!(code(&run(&["classnum", "--p", "3", "--e", "1", "--poly", "1+0T+1T^2"])), 2);
    assert_eq!(code(&run(&["classnum", "--p", "4", "--poly", "1+1T"])), 2);
    assert_eq!(code(&run(&["witness", "--p", "7", "--k", "6"])), 2);
    assert_eq!(code(&run(&["verify", "bogus"])), 2);
}

#[test]
fn witness_threshold_exits_three() {
    let out = run(&["witness", "--p", "3", "--k", "8"]);
    assert_eq!(code(&out), 3);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "search exhausted");
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.csv"));
        let out = run(&["verify", "thm1", "--p", "3", "--cap", "4", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        outputs.push(std::fs::read(&path).unwrap());
    }
    // the header echoes --out, so compare everything after it
    let body = |b: &[u8]| String::from_utf8(b.to_vec()).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&outputs[0]), body(&outputs[1]));
    let a = run(&["verify", "gekeler", "--p", "3", "--cap", "4", "--format", "json"]);
    let b = run(&["verify", "gekeler", "--p", "3", "--cap", "4", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["field"]["p"], 3);
    assert_eq!(v["summary"]["failures"], 0);
}

#[test]
fn witness_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = run(&["witness", "--p", "5", "--k", "8", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let re = run(&["recheck", "--cert", path.to_str().unwrap()]);
    assert_eq!(code(&re), 0, "{}", String::from_utf8_lossy(&re.stderr));
    // tamper with h and the recheck must fail
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let h = v["certificate"]["plus"]["h"].as_u64().unwrap();
    v["certificate"]["plus"]["h"] = (h + 8).into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&run(&["recheck", "--cert", path.to_str().unwrap()])), 1);
}

#[test]
fn eight_criterion_and_survey() {
    let out = run(&["verify", "8crit", "--grid", "5:4", "--instances", "3"]);
    assert_eq!(code(&out), 0);
    let out = run(&["survey", "--p", "5", "--k", "4", "--cap", "20", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let total: u64 = v["summary"]["h_mod_8"].as_array().unwrap().iter().map(|p| p[1].as_u64().unwrap()).sum();
    assert_eq!(total, 20);
    assert_eq!(code(&run(&["survey", "--p", "5", "--k", "6"])), 2);
}

#[test]
fn count_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperclass"))
        // T^5 − T − 1 is irreducible over F_5; genus 2 needs F_25
        .args(["classnum", "--p", "5", "--poly", "4+4T+0T^2+0T^3+0T^4+1T^5"])
        .env("HYPERCLASS_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    assert_eq!(code(&run(&["classnum", "--p", "5", "--poly", "4+4T+0T^2+0T^3+0T^4+1T^5"])), 0);
}
