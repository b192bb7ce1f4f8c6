use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetalift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn lines_of(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

#[test]
fn lift_to_a_larger_group() {
    let out = run(&[
        "lift", "--p", "1", "--q", "0", "--lambda", "2", "--r", "2", "--s", "1", "--m0", "1",
        "--n0", "1",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["kind"], "aq_weakly_fair");
    assert_eq!(
        v["blocks"],
        serde_json::json!([{"p":1,"q":0,"lambda":"1"},{"p":1,"q":1,"lambda":"1"}])
    );
}

#[test]
fn vanishing_lift_exits_zero() {
    let out = run(&[
        "lift", "--p", "1", "--q", "1", "--lambda", "1/2,-1/2", "--r", "4", "--s", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), serde_json::json!({"status": "vanishes"}));
}

#[test]
fn lift_down_gives_a_discrete_series() {
    let out = run(&[
        "lift", "--p", "2", "--q", "1", "--lambda", "1,0,2", "--r", "0", "--s", "1",
    ]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "discrete_series");
    assert_eq!(v["param"]["q_part"], serde_json::json!(["2"]));
}

#[test]
fn invalid_input_exits_two() {
    let out = run(&[
        "lift", "--p", "1", "--q", "1", "--lambda", "1/2,1/2", "--r", "2", "--s", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated"));

    let out = run(&[
        "lift", "--p", "1", "--q", "0", "--lambda", "2/3", "--r", "2", "--s", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = run(&["packet", "--kappas", "-1/2,1/2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_table() {
    let out = run(&[
        "invariants",
        "--p",
        "1",
        "--q",
        "1",
        "--lambda",
        "1/2,-1/2",
        "--r",
        "0",
        "--s",
        "4",
    ]);
    let v = json_of(&out);
    assert_eq!(v["swapped"], true);
    let table = v["c_counts"].as_array().unwrap();
    assert_eq!(table.len(), 11);
    assert_eq!(table[0], serde_json::json!({"t": 0, "plus": 0, "minus": 0}));
}

#[test]
fn packet_rows() {
    let v = json_of(&run(&["packet", "--kappas", "1/2,-1/2"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let mut sigs: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r["p"].as_u64().unwrap(), r["q"].as_u64().unwrap()))
        .collect();
    sigs.sort();
    assert_eq!(sigs, vec![(0, 2), (1, 1), (1, 1), (2, 0)]);
    assert_eq!(
        json_of(&run(&["packet", "--kappas", "3"]))
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn apacket_contains_the_lift() {
    let v = json_of(&run(&[
        "apacket", "--mus", "1/2,-1/2", "--mu0", "0", "--r", "3", "--s", "1",
    ]));
    let lifted = serde_json::json!([{"p":1,"q":0,"lambda":"-1"},{"p":1,"q":1,"lambda":"0"},{"p":1,"q":0,"lambda":"1"}]);
    assert!(v["members"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m["member"] == lifted));
}

#[test]
fn ktype_map_and_split() {
    let v = json_of(&run(&[
        "ktype-map",
        "--a",
        "3",
        "--b",
        "-1",
        "--r",
        "2",
        "--s",
        "0",
        "--m1",
        "0",
        "--m2",
        "0",
    ]));
    assert_eq!(v["mu_prime"], serde_json::json!({"a": [2, 0], "b": []}));
    assert_eq!(v["split"]["mu1"], serde_json::json!({"a": [3], "b": [-1]}));
    let v = json_of(&run(&[
        "ktype-map",
        "--a",
        "1",
        "--b",
        "-1",
        "--r",
        "1",
        "--s",
        "1",
    ]));
    assert_eq!(v["mu_prime"], Value::Null);
}

#[test]
fn verify_streams_cases_then_summary() {
    let args = [
        "verify", "--suite", "two_path", "--max-n", "3", "--height", "7/2", "--max-dm", "4",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let lines = lines_of(&out);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["cases"].as_u64().unwrap() as usize, lines.len() - 1);
    assert!(lines[..lines.len() - 1].iter().all(|l| l["equal"] == true));
    let first = lines[0].as_object().unwrap();
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    assert_eq!(keys, ["lambda", "target", "path_a", "path_b", "equal"]);

    // byte-identical on a second run
    assert_eq!(run(&args).stdout, out.stdout);
}

#[test]
fn other_suites_pass_at_small_bounds() {
    for suite in [
        "eta_prime",
        "persistence",
        "round_trip",
        "duality",
        "li",
        "packets",
        "globalization",
        "ktypes",
    ] {
        let out = run(&[
            "verify", "--suite", suite, "--max-n", "2", "--max-dm", "2", "--height", "5/2",
        ]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn enumerate_emits_a_summary() {
    let out = run(&[
        "enumerate",
        "--max-n",
        "1",
        "--max-dm",
        "1",
        "--height",
        "1/2",
    ]);
    let lines = lines_of(&out);
    assert_eq!(lines.last().unwrap()["summary"]["records"], 14);
    assert_eq!(lines.len(), 15);
}
