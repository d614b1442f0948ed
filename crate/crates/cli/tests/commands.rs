use std::process::{Command, Output};

fn krv_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krv-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = krv_lab(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn dims_column(v: &serde_json::Value) -> Vec<u64> {
    v["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect()
}

#[test]
fn dims_weight_two() {
    let v = json(&["dims", "--weight", "2", "--j-max", "6"]);
    assert_eq!(dims_column(&v), [0, 1, 0, 1, 0, 1]);
    assert_eq!(v["schema"], "krv-lab/1");
    assert_eq!(v["all_match"], true);
}

#[test]
fn dims_weight_three() {
    let v = json(&["dims", "--weight", "3", "--j-max", "9", "--jobs", "2"]);
    assert_eq!(dims_column(&v), [0, 0, 1, 0, 1, 0, 1, 0, 2]);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["match"], true);
        if row["j"].as_u64().unwrap() % 2 == 0 {
            assert_eq!(row["dim"], 0);
        }
    }
}

#[test]
fn dims_csv_and_text() {
    let o = krv_lab(&["dims", "--weight", "2", "--j-max", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "i,j,dim\n2,1,0\n2,2,1\n2,3,0\n");
    let o = krv_lab(&["dims", "--weight", "3", "--j-max", "5"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("NO"));
}

#[test]
fn dims_cap_is_a_usage_error() {
    let o = krv_lab(&["dims", "--weight", "3", "--j-max", "14"]);
    assert_eq!(o.status.code(), Some(2));
    let o = krv_lab(&["dims", "--weight", "4", "--j-max", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn basis_examples() {
    let v = json(&["basis", "2", "2"]);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"][0], "tr(xxyy) - tr(xyxy)");
    let v = json(&["basis", "2", "3"]);
    assert_eq!(v["dim"], 0);
    assert_eq!(v["basis"].as_array().unwrap().len(), 0);
    let v = json(&["basis", "3", "5"]);
    assert_eq!(v["dim"], 1);
    assert_eq!((v["i"].as_u64(), v["j"].as_u64()), (Some(3), Some(5)));
}

#[test]
fn basis_text_shows_tree_form() {
    let o = krv_lab(&["basis", "2", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("theta(x;"));
}

#[test]
fn delta_report() {
    let v = json(&["delta", "2"]);
    assert_eq!(v["theta"], "theta(x; [[x,y],y])");
    assert_eq!(v["symplectic"], true);
    assert_eq!(v["divergence"], "0");
    assert_eq!(krv_lab(&["delta", "3"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["cocycle", "roundtrip"] {
        let v = json(&["verify", suite, "--cases", "50", "--seed", "17"]);
        assert_eq!(v["passed"], true);
        assert_eq!(v["suites"][0]["cases"].as_array().unwrap().len(), 50);
    }
    let v = json(&["verify", "crosscheck"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_text_lists_cases() {
    let o = krv_lab(&["verify", "euler", "--cases", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    assert!(text.contains("euler: 3/3 passed (seed 0)"));
}

#[test]
fn verify_unknown_suite() {
    assert_eq!(krv_lab(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let v = json(&["eval", "[x,[y,x]]"]);
    assert_eq!(v["sort"], "LiePoly");
    let v = json(&["eval", "div(theta(x; ad(y,2)(x)))"]);
    assert_eq!((v["sort"].as_str(), v["value"].as_str()), (Some("TracePoly"), Some("0")));
    let o = krv_lab(&["eval", "tr(x*y) + tr(y*x)"]);
    assert_eq!(stdout(&o), "2*tr(xy)\n");
}

#[test]
fn eval_errors() {
    let o = krv_lab(&["eval", "tr(x * )"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error at 7"));
    let o = krv_lab(&["eval", "theta(tr(x); y)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("expects LiePoly, got TracePoly"), "{err}");
}

#[test]
fn poly_table() {
    let v = json(&["poly", "--d-max", "6"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2]["dim_cond_i"], 1);
    assert_eq!(rows[5]["dim_joint"], 0);
}

#[test]
fn relaxed_mode_flag() {
    let strict = json(&["basis", "3", "3"]);
    let relaxed = json(&["basis", "3", "3", "--relaxed-div"]);
    assert!(relaxed["dim"].as_u64() >= strict["dim"].as_u64());
}
