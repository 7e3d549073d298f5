//! End-to-end checks of the binary: deterministic output, exit codes, and
//! the shape of both output formats.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn unram(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unram"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

const JOBS: &str = concat!(
    r#"{"label":"43.a1","ainvs":["0","1","1","0","0"],"p":"13","gens":[["0","0"]]}"#,
    "\n",
    r#"{"label":"11.a3","ainvs":["0","-1","1","0","0"],"p":"5"}"#,
    "\n",
);

#[test]
fn analyze_json_output_is_deterministic_and_ordered() {
    let first = unram(&["analyze", "--json", "-"], Some(JOBS));
    let second = unram(&["analyze", "--json", "-"], Some(JOBS));
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let lines: Vec<serde_json::Value> = String::from_utf8(first.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["job"]["label"], "43.a1");
    assert_eq!(lines[1]["job"]["label"], "11.a3");
    assert_eq!(lines[0]["bounds"]["class_valuation_lower"], 2);
    assert_eq!(lines[0]["certificates"][0]["multiple"], 19);
    assert_eq!(lines[0]["certificates"][0]["vp_x"], "-6");
    assert_eq!(lines[1]["torsion"], "Z/5");
    assert_eq!(lines[1]["bounds"]["class_valuation_lower"], 0);
}

#[test]
fn analyze_keeps_going_past_a_failed_job_and_exits_one() {
    let input = concat!(
        r#"{"label":"degenerate","ainvs":["0","0","0","0","0"],"p":"5"}"#,
        "\n",
        r#"{"label":"43.a1","ainvs":["0","1","1","0","0"],"p":"13"}"#,
        "\n",
    );
    let out = unram(&["analyze", "--json", "-"], Some(input));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("singular-curve"), "stderr: {stderr}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1, "the healthy job still reports");
    assert!(stdout.contains("\"label\":\"43.a1\""));
}

#[test]
fn analyze_rejects_an_even_prime() {
    let out = unram(&["analyze", "--ainvs", "0,1,1,0,0", "--p", "2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("invalid-prime"));
}

#[test]
fn local_subcommand_prints_the_reduction_table() {
    let out = unram(&["local", "--ainvs", "0,0,0,-2401,1"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2: IV c3 additive"), "{text}");
    assert!(text.contains("1069: I1 c1 non-split multiplicative"), "{text}");
    assert!(text.contains("51791533"), "{text}");
}

#[test]
fn witness_subcommand_certifies_the_nineteenth_multiple() {
    let out = unram(
        &["witness", "--ainvs", "0,1,1,0,0", "--base", "0,0", "--p", "13", "--n", "2"],
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("base 0 x 19 at level 2"), "{text}");
    assert!(text.contains("v(x) = -6"), "{text}");
    assert!(text.contains("outside pE: proved"), "{text}");
}

#[test]
fn reproduce_examples_passes_cleanly() {
    let out = unram(&["reproduce-examples"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("reproduce-examples: PASS (4 reports)"), "{text}");
}
