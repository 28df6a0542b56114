use std::path::PathBuf;
use std::process::{Command, Output};

fn qwk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwk")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn structure_q1_passes() {
    let out = qwk(&["check", "structure", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "qwk-report/1");
    assert_eq!(r["suite"], "structure");
    assert_eq!(r["pass"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c.get("elapsed_ms").is_none()));
}

#[test]
fn dw_lemmas_and_w_dims_examples() {
    let out = qwk(&["check", "dw-lemmas", "--n", "2", "--E", "principal"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qwk(&["check", "w-dims", "--n", "2", "--E", "principal", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "graded-dimensions").unwrap();
    assert_eq!(c["data"]["w_dims"], c["data"]["symmetric_dims"]);
    assert_eq!(c["data"]["w_dims"]["4"], 4);
}

#[test]
fn character_csv_rows() {
    let out = qwk(&["compute", "character", "--lambda", "1,0", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda_1,lambda_2,multiplicity");
    assert_eq!(lines.len() - 1, 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "character", "--lambda", "1,0", "--n", "3", "--depth", "3"][..],
        &["compute", "character", "--lambda", "1,0,0,0,0", "--depth", "1"],
        &["check", "no-such-suite"],
        &["check", "structure", "--n", "0"],
        &["check", "verma", "--n", "2", "--lambda", "1,2,3"],
        &["check", "pbw", "--cap", "12"],
        &["frobnicate"],
    ] {
        assert_eq!(qwk(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn walgebra_basis_lists_central_element() {
    let out = qwk(&["compute", "walgebra-basis", "--n", "2", "--E", "principal", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let basis = r["basis"].as_array().unwrap();
    assert_eq!(basis[0]["element"], "1");
    assert!(basis.iter().any(|b| b["element"] == "1*e(1,1) + 1*e(2,2)"));
    assert_eq!(r["invariant"], true);
}

#[test]
fn whittaker_and_star_commands() {
    let out = qwk(&["compute", "whittaker", "--lambda", "-2,2", "--window", "0:2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["solve"]["dim"], 4);
    assert_eq!(r["lambda_nu"]["member"], true);
    let out = qwk(&["compute", "star", "--kind", "gutt", "--n", "1", "--p", "f(1,1)", "--q", "f(1,1)"]);
    assert_eq!(out.status.code(), Some(0));
    // f ∗ f = [f,f]/2 ħ² = e(1,1) ħ²
    assert_eq!(json(&out)["product"], "1*hbar^2*e(1,1)");
}

#[test]
fn config_file_and_output_path() {
    let cfg = scratch("suite.cfg");
    let report = scratch("report.json");
    std::fs::write(&cfg, "# q(3) minimal\nn = 3\nE = minimal\nseed = 11\n").unwrap();
    let out = qwk(&["--config", cfg.to_str().unwrap(), "check", "good-grading", "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["config"]["n"], 3);
    assert_eq!(r["config"]["E"], "minimal");
    assert_eq!(r["config"]["seed"], 11);
    std::fs::write(&cfg, "n = 3\nbogus = 1\n").unwrap();
    assert_eq!(qwk(&["--config", cfg.to_str().unwrap(), "check", "forms"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for args in [&["check", "pbw", "--samples", "50"][..], &["check", "whittaker", "--samples", "20", "--seed", "5"], &["check", "clifford"]] {
        let (a, b) = (qwk(args), qwk(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timings_only_when_requested() {
    let r = json(&qwk(&["check", "forms", "--n", "2", "--timings"]));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["elapsed_ms"].is_u64()));
}
