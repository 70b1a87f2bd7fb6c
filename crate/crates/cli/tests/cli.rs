use std::process::Command;

use serde_json::Value;
use trigint_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn go(args: &str) -> trigint_cli::Outcome {
    run(std::iter::once("trig-engine").chain(args.split_whitespace()))
}

#[test]
fn eval_exact() {
    let o = go("eval --family c --n 2 --p 1 --format exact");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "π²/16 − 1/4\n");
}

#[test]
fn eval_latex_and_float() {
    let o = go("eval --family c --n 2 --p 1 --format latex");
    assert_eq!(o.stdout.trim(), "\\frac{\\pi^{2}}{16} - \\frac{1}{4}");
    let o = go("eval --family c --n 2 --p 1 --format float --digits 12");
    assert_eq!(o.stdout.trim(), "0.366850275068");
}

#[test]
fn halfline_float() {
    let o = go("halfline --kind cos --n 0 --p 1/2 --b 0 --format float");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("1.2533141373"), "{}", o.stdout);
}

#[test]
fn identities_sum1() {
    let o = go("identities --check sum1 --max-n 50");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("0 failed"));
}

#[test]
fn identities_sum99_json() {
    let o = go("identities --check sum99 --max-n 6 --format json");
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn alternative_constant_terms_are_reported_as_failures() {
    let o = go("identities --check star --max-n 2");
    assert_eq!(o.code, EXIT_VERIFY_FAILED);
    assert!(o.stdout.contains("FAIL"));
}

#[test]
fn json_schema() {
    let o = go("eval --family c --n 2 --p 2 --format json --verify");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["integral", "params", "exact", "float", "verified"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["exact"]["pi_coeffs"][0], "0/1");
    assert_eq!(v["verified"], true);
    let o = go("eval --family c --n 2 --p 2 --format json");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["verified"].is_null());

    let o = go("halfline --kind sin --n 1 --p 1/3 --b 0.5 --format json");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["exact"]["gamma_arg"], "2/3");
    assert_eq!(v["exact"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "--bogus",
        "eval",
        "eval --family c --p 1/2",
        "halfline --kind cos --p 1",
        "halfline --kind cos --p 3/2",
        "table --gr 9.999.9",
        "table --gr 3.621.3 --range 5..2",
        "eval --family c --n 1 --digits 0",
        "eval --family power-arg --p 1/2",
        "eval --family fresnel --x 7",
        "--format yaml eval --family c",
    ] {
        let o = go(args);
        assert_eq!(o.code, EXIT_USAGE, "{args}: {o:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let o = go("--help");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("halfline"));
}

#[test]
fn forced_failure_exit_1() {
    let o = go("verify --family complete --max-n 2 --max-p 2 --tol 0");
    assert_eq!(o.code, EXIT_VERIFY_FAILED);
    let o = go("halfline --kind cos --n 1 --p 1/4 --verify --tol 1e-300");
    assert_eq!(o.code, EXIT_VERIFY_FAILED);
    let o = go("table --gr 3.822.2 --range 0..1 --tol 1e-300");
    assert_eq!(o.code, EXIT_VERIFY_FAILED);
}

#[test]
fn verify_passes_at_default_tolerance() {
    let o = go("verify --family complete --max-n 4 --max-p 4");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let o = go("halfline --kind cos --n 1 --p 1/4 --verify");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("verified: true"));
}

#[test]
fn deterministic_output() {
    for args in [
        "table --gr 3.821.3 --range 0..6 --format json",
        "verify --family complete --max-n 3 --max-p 3",
        "eval --family multidim --n 3 --format json",
    ] {
        assert_eq!(go(args), go(args), "{args}");
    }
}

#[test]
fn table_rows() {
    for gr in ["3.621.3", "3.621.4", "3.761.11", "3.821.3", "3.822.1", "3.822.2", "3.821.14"] {
        let o = go(&format!("table --gr {gr} --range 0..3"));
        assert_eq!(o.code, EXIT_OK, "{gr}: {}", o.stdout);
        assert_eq!(o.stdout.matches("| yes |").count(), 4, "{gr}");
    }
    let o = go("table --gr 3.764.2 --range 1..3 --p 1/3 --b 0.25 --format json");
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v[2]["params"]["a"], 3);
    assert_eq!(v[2]["params"]["p"], "1/3");
}

#[test]
fn other_families() {
    let o = go("eval --family log-weighted --n 0 --format float --digits 10 --verify");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.starts_with("-1.107399029"));
    let o = go("eval --family double-log --p 1/4 --q 1/4 --format float --digits 9");
    assert_eq!(o.stdout.trim(), "-1.06182414");
    let o = go("eval --family fresnel --x 1 --format float --digits 15 --verify");
    assert!(o.stdout.starts_with("0.779893400376823"), "{}", o.stdout);
    assert_eq!(o.code, EXIT_OK);
    let o = go("eval --family power-arg --kind sin --n 1 --p 3 --verify");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
}

#[test]
fn binary_exit_codes_and_env_digits() {
    let bin = env!("CARGO_BIN_EXE_trig-engine");
    let out = Command::new(bin)
        .args(["eval", "--family", "c", "--n", "0", "--p", "0", "--format", "float"])
        .env("TRIG_ENGINE_DIGITS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1.5707963");

    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin)
        .args(["verify", "--family", "complete", "--max-n", "1", "--max-p", "1", "--tol", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
