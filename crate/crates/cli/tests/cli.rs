use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-imm"))
        .args(args)
        .env_remove("IMM_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn term_count(args: &[&str]) -> usize {
    let out = run(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["terms"].as_array().unwrap().len()
}

#[test]
fn immanant_term_counts() {
    assert_eq!(
        term_count(&["imm", "--group", "c3", "--partition", "1,1,1"]),
        4
    );
    assert_eq!(term_count(&["imm", "--group", "c3", "--partition", "3"]), 4);
    assert_eq!(
        term_count(&["imm", "--group", "c5", "--partition", "4,1"]),
        0
    );
    assert_eq!(
        term_count(&[
            "imm",
            "--group",
            "c5",
            "--partition",
            "2,1,1,1",
            "--mode",
            "orbit"
        ]),
        0
    );
}

#[test]
fn polynomial_wire_form() {
    let out = run(&["imm", "--group", "c3", "--partition", "1,1,1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim_end(),
        r#"{"group":"c3","terms":[{"exp":[0,0,3],"coeff":"-1"},{"exp":[0,3,0],"coeff":"-1"},{"exp":[1,1,1],"coeff":"3"},{"exp":[3,0,0],"coeff":"-1"}]}"#
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 terms"));
}

#[test]
fn out_file_gets_the_polynomial() {
    let path = std::env::temp_dir().join(format!("cayley-imm-{}.json", std::process::id()));
    let out = run(&[
        "imm",
        "--group",
        "c2xc2",
        "--partition",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let summary = json(&out);
    assert_eq!(summary["group"], "c2xc2");
    let poly: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(
        poly["terms"].as_array().unwrap().len() as u64,
        summary["support_size"].as_u64().unwrap()
    );
}

#[test]
fn support_counts() {
    let out = run(&["support", "--group", "c3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!((v["P"].as_u64(), v["D"].as_u64()), (Some(4), Some(4)));
    for route in ["backtrack", "bruteforce"] {
        let other = json(&run(&["support", "--group", "c6", "--route", route]));
        let formula = json(&run(&["support", "--group", "c6"]));
        for k in ["P", "D", "I_hook", "I_cohook"] {
            assert_eq!(other[k], formula[k], "{route} {k}");
        }
    }
    let full = json(&run(&["support", "--group", "c4", "--report", "full"]));
    assert_eq!(
        full["monomials"].as_array().unwrap().len() as u64,
        full["P"].as_u64().unwrap()
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["imm", "--group", "d3", "--partition", "3"])), 2);
    assert_eq!(
        code(&run(&["imm", "--group", "c3", "--partition", "3,2"])),
        2
    );
    assert_eq!(
        code(&run(&["imm", "--group", "c3", "--partition", "2,3"])),
        2
    );
    assert_eq!(
        code(&run(&["imm", "--group", "c11", "--partition", "11"])),
        3
    );
    assert_eq!(code(&run(&["twin", "--group", "c5"])), 2);
    assert_eq!(code(&run(&["padic", "--group", "c6", "--all"])), 2);
    assert_eq!(code(&run(&["search-pd-gap", "--max-order", "13"])), 3);
    assert_eq!(code(&run(&["explore", "--conjecture", "3", "--n", "8"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_cayley-imm"))
        .args(["support", "--group", "c3"])
        .env("IMM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad_threads), 2);
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_cayley-imm"))
        .args(["support", "--group", "c5"])
        .env("IMM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(
        json(&out)["P"],
        json(&run(&["support", "--group", "c5"]))["P"]
    );
}

fn verify(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["verify"];
    full.extend_from_slice(args);
    let out = run(&full);
    (code(&out), json(&out))
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["group"].as_str().unwrap().to_string(),
                r["status"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn verify_twin_suite() {
    let (c, v) = verify(&["--suite", "thm15", "--groups", "c7,c9,c3xc3"]);
    assert_eq!(c, 0);
    assert!(statuses(&v).iter().all(|(_, s)| s == "pass"));
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_x0_power_coefficients() {
    let (c, v) = verify(&["--suite", "prop42", "--groups", "c6,c8"]);
    assert_eq!(c, 0);
    let coeffs: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["detail"]["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["-3", "5"]);
}

#[test]
fn verify_prime_power_counts() {
    let (c, v) = verify(&["--suite", "thm13", "--groups", "c4,c8,c9,c2xc2,c2xc4,c3xc3"]);
    assert_eq!(c, 0);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["detail"]["P"], r["detail"]["D"]);
    }
    // order 6 is not a prime power
    let (c, v) = verify(&["--suite", "thm13", "--groups", "c6"]);
    assert_eq!(c, 0);
    assert_eq!(statuses(&v), [("c6".to_string(), "skipped".to_string())]);
}

#[test]
fn verify_max_order_filters_defaults() {
    let (c, v) = verify(&["--suite", "hall", "--max-order", "5"]);
    assert_eq!(c, 0);
    let groups: Vec<String> = statuses(&v).into_iter().map(|(g, _)| g).collect();
    assert_eq!(groups, ["c4", "c5", "c2xc2"]);
}

#[test]
fn verify_output_is_reproducible() {
    let args = [
        "verify", "--suite", "jacobi", "--groups", "c5,c6", "--seed", "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = run(&[
        "verify", "--suite", "jacobi", "--groups", "c5,c6", "--seed", "10",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn minors_report() {
    let out = run(&[
        "minors",
        "--group",
        "c7",
        "--seeds",
        "5",
        "--range",
        "32",
        "--checks",
        "jacobi,f1,t2t12,scalars,reduction",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let checks = v["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.values().all(|c| c["status"] == "pass"));
    assert_eq!(code(&run(&["minors", "--group", "c3", "--range", "1"])), 2);
}

#[test]
fn padic_rows() {
    let out = run(&["padic", "--group", "c9", "--all"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["strictly_minimal"] == true));

    let csv = run(&["padic", "--group", "c4", "--all", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("sequence,min_valuation,strictly_minimal")
    );
    assert_eq!(lines.next(), Some("0 0 0 0,3,true"));

    let one = json(&run(&["padic", "--group", "c4", "--sequence", "0,0,0,0"]));
    assert_eq!(one["one_block_valuation"], 3);
    assert_eq!(
        code(&run(&["padic", "--group", "c4", "--sequence", "1,0,0,0"])),
        2
    );
}

#[test]
fn explorations_are_reports() {
    let out = run(&["explore", "--conjecture", "3", "--n", "7"]);
    assert_eq!(code(&out), 0);
    let row = &json(&out)["rows"][0];
    assert_eq!(row["group"], "c7");
    assert!(row["i_lambda"].is_u64() && row["P"].is_u64());

    let gap = run(&["search-pd-gap", "--max-order", "9"]);
    assert_eq!(code(&gap), 0);
    let v = json(&gap);
    for r in v["rows"].as_array().unwrap() {
        if r["prime_power"] == true {
            assert_eq!(r["P"], r["D"], "{}", r["group"]);
        }
    }
}
