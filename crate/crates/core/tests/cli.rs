use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauge-logic")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gauge-logic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 7] = [
        (&["decode", "20662426080"], "∀ y ¬\n"),
        (&["classify", "6"], "FormulaCode\n"),
        (&["factor", "2916"], "2^2 * 3^6\n"),
        (&["encode", "--kind", "symbol", "∀"], "5\n"),
        (&["parse", "(!G(x,y)->!M(z))"], "(!G(x,y) -> !M(z))\nsymbols: ( ¬ G ( x , y ) → ¬ M ( z ) )\nfree: x y z\n"),
        (&["normalize", "dagger(phi)*phi"], "1/2 * chi^2\nmu * sqrtlambda^-1 * chi\n1/2 * mu^2 * lambda^-1\n"),
        (&["normalize", "--keep", "rho", "dagger(phi)*phi"], "rho^2\n"),
    ];
    for (args, expected) in cases {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(stdout(&o), expected, "{args:?}");
    }
}

#[test]
fn encode_decode_round_trip() {
    let o = run(&["encode", "--kind", "formula", "forall y. !G(x,y)"]);
    assert_eq!(code(&o), 0);
    let n = stdout(&o).trim().to_owned();
    let back = run(&["decode", &n]);
    assert_eq!(stdout(&back), "∀ y ¬ G ( x , y )\n");
}

#[test]
fn derivation_from_stdin() {
    let o = run_stdin(&["encode", "--kind", "derivation", "--format", "factored", "-"], "M(0)\n!M(0)\n");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let pairs: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // g(M(0)) = 2^27 * 3^7 * 5^21 * 7^9
    assert_eq!(pairs[0], serde_json::json!([1, "5648213664576000000000000000000000"]));
    assert_eq!(pairs.as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 8] = [
        (&["classify", "10"], 3),
        (&["decode", "18"], 3),
        (&["factor", "0"], 3),
        (&["bogus"], 2),
        (&["parse", "G(x,"], 2),
        (&["eval", "chi", "--assign", "rho=1"], 2),
        (&["higgs", "verify", "--all"], 0),
        (&["demo", "goedel"], 0),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&run(args)), expected, "{args:?}");
    }
}

#[test]
fn precondition_violation_is_a_failed_check() {
    let dir = std::env::temp_dir().join(format!("gauge-logic-facts-{}", std::process::id()));
    std::fs::write(&dir, r#"{"g_facts":[["2","4"]]}"#).unwrap();
    let o = run(&["check-indef", "--i", "2", "--j", "4", "--k", "6", "--facts", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(code(&o), 1);
}

#[test]
fn checks_and_demos_succeed() {
    for args in [
        &["check-indef", "--i", "2", "--j", "4", "--k", "6"][..],
        &["check-def"],
        &["check-def", "--order", "swapped"],
        &["nonequiv"],
        &["demo", "tarski"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["--json", "higgs", "verify", "--all"][..],
        &["--json", "check-def"],
        &["--json", "nonequiv"],
        &["--json", "demo", "goedel"],
        &["--json", "classify", "18"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
        assert!(parsed.is_object(), "{args:?}");
    }
}

#[test]
fn json_verdicts() {
    let o = run(&["--json", "higgs", "verify", "--all"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], "verified");
    assert_eq!(v["step_verdicts"].as_array().unwrap().len(), 4);
    let c: serde_json::Value = serde_json::from_slice(&run(&["--json", "classify", "18"]).stdout).unwrap();
    assert_eq!(c, serde_json::json!({"class": "Invalid", "reason": "mixed-parity exponents"}));
}

#[test]
fn registered_symbols() {
    let o = run(&["--register", "H:predicate", "encode", "--kind", "symbol", "H"]);
    assert_eq!(stdout(&o), "37\n");
}
