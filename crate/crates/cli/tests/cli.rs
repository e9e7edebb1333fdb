use std::process::Command;

fn voaforge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_voaforge")).args(args).env_remove("VOAFORGE_SEED").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn parse_prints_the_input_grammar() {
    let (code, out, _) = voaforge(&["parse", ":c[x] b[x]:"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-:b[x] c[x]:");
    let (code, out, _) = voaforge(&["parse", "d^2 beta[h]"]);
    assert_eq!((code, out.trim()), (0, "d^2 beta[h]"));
}

#[test]
fn parse_errors_exit_with_two() {
    let (code, _, err) = voaforge(&["parse", "b[x] +"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    let (code, _, _) = voaforge(&["circle", "b[x]"]);
    assert_eq!(code, 2);
    let (code, _, err) = voaforge(&["verify", "no-such-suite"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"), "{err}");
}

#[test]
fn circle_with_oracle_check() {
    let (code, out, err) = voaforge(&["circle", "@v_x", "@v_y", "1", "--oracle-check"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-3/2");
    assert!(err.contains("agrees"), "{err}");
    let (code, out, _) = voaforge(&["circle", "b[x]", "c[y]", "-1"]);
    assert_eq!((code, out.trim()), (0, ":b^x c^{y'}:"));
}

#[test]
fn json_output_is_valid() {
    let (code, out, _) = voaforge(&["--json", "wick", "b[x]", "c[x]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    let (code, out, _) = voaforge(&["grade", "--json", "@C_gamma_b_b"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weight"], 2);
    assert_eq!(v["degree"], 0);
    assert_eq!(v["b_number"], 2);
    assert_eq!(v["poly_degree"], 3);
}

#[test]
fn ope_and_mode() {
    let (code, out, _) = voaforge(&["ope", "b[x]", "b[y]"]);
    assert_eq!((code, out.trim()), (0, "~ 0"));
    let (code, out, _) = voaforge(&["--json", "ope", "@theta_W_x", "@theta_W_y"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    let (code, direct, _) = voaforge(&["mode", "@D", "0", "b[x]"]);
    let (_, theta, _) = voaforge(&["canon", "@theta_W_x"]);
    assert_eq!(code, 0);
    assert_eq!(direct, theta);
}

#[test]
fn verify_runs_suites_and_reports_json() {
    let (code, out, _) = voaforge(&["verify", "--json", "weight4", "dva"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["dva", "weight4"]);
    assert_eq!(v["passed"], true);
    let (code, out, _) = voaforge(&["verify", "--seed", "3", "--json", "oracle-equivalence"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["seed"], 3);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_voaforge")).args(["verify", "--json", "dva"]).env("VOAFORGE_SEED", "11").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"][0]["seed"], 11);
}

#[test]
fn class_verbs() {
    let (code, out, _) = voaforge(&["--json", "psi-class", "--monomial", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weight"], 2);
    let (code, _, _) = voaforge(&["psi-class", "--monomial", "q"]);
    assert_eq!(code, 2);
    let (code, out, _) = voaforge(&["h-class", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("5/12"), "{out}");
}

#[test]
fn jet_verbs() {
    let (code, out, _) = voaforge(&["jet", "invariants", "--copies", "2", "--level", "1", "--weight", "0", "--degree", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariant_dimension"], 3);
    assert_eq!(v["generated_dimension"], 3);
    let (code, out, _) = voaforge(&["jet", "verify-appendix"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn oracle_diff_reports_agreement() {
    let (code, out, _) = voaforge(&["oracle-diff", "@L", "@v_h", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("agrees"), "{out}");
}
