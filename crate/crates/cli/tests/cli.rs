use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatslice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).expect("json output"),
    )
}

#[test]
fn member_prints_certificate() {
    let o = run(&["member", "--nvars", "2", "q1^2 - q2^2", "--ideal", "q1^2+1", "q2^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(q1^2 + 1) * (1)"), "{}", stdout(&o));
    let (code, v) = json(&["member", "--nvars", "2", "q1^2 - q2^2", "--ideal", "q1^2+1", "q2^2+1"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["cofactors"].as_array().unwrap().len(), 2);
}

#[test]
fn non_member_exits_one_with_normal_form() {
    let o = run(&["member", "(q1 + q2)*(q1 + q2)", "--ideal", "q1^2+1", "q2^2+1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("normal form: 2q1 q2 - 2"), "{}", stdout(&o));
}

#[test]
fn vc_lists_two_orbits() {
    let (code, v) = json(&["vc", "--nvars", "2", "--ideal", "q1^2+1", "q2^2+1"]);
    assert_eq!(code, 0);
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 2);
    let ys: Vec<Value> = orbits.iter().map(|o| o["y"].clone()).collect();
    assert!(ys.contains(&serde_json::json!(["1", "1"])) && ys.contains(&serde_json::json!(["1", "-1"])));
    assert!(v["real_points"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mul", "q +", "q"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "q1 q2", "--nvars", "2", "--at", "i"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["vc", "--ideal", "q1 - i", "q2 - q1"]).status.code(), Some(3));
    assert_eq!(
        run(&["vc", "--ideal", "q1 - i", "q2 - q1", "--slice-catalog", "builtin"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["vc", "--ideal", "q1", "--slice-catalog", "i,i"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["qp-verify", "q + 1", "q + 1", "--ideal", "(q+1)^2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["qp-verify", "(q+1)^2", "q + 1", "--ideal", "(q+1)^3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["symmetrize", "(i, j)"]).status.code(), Some(2));
}

#[test]
fn ring_operations() {
    assert_eq!(stdout(&run(&["mul", "q1 - q2", "q1 + q2"])).trim(), "q1^2 - q2^2");
    assert_eq!(
        stdout(&run(&["mul", "q*i", "1"])).trim(),
        stdout(&run(&["mul", "i*q", "1"])).trim()
    );
    assert_eq!(stdout(&run(&["symm", "q + 1"])).trim(), "q^2 + 2q + 1");
    assert_eq!(stdout(&run(&["conj", "q^2 i + q j + 1"])).trim(), "-q^2 i - q j + 1");
    assert_eq!(stdout(&run(&["eval", "q1 q2", "--at", "i", "j"])).trim(), "k");
    assert_eq!(stdout(&run(&["divide", "q^2 + 1", "q - i"])).trim(), "Q = q + i\nR = 0");
}

#[test]
fn roots_and_symmetrize() {
    let (_, v) = json(&["roots", "(q - i)*(q - j)"]);
    assert_eq!(v["spheres"].as_array().unwrap().len(), 0);
    assert_eq!(v["isolated"].as_array().unwrap().len(), 1);
    let o = run(&["symmetrize", "(i, i)", "(-i, -i)", "S[(0,1),(0,-1)]"]);
    assert_eq!(stdout(&o).trim(), "orbit: S[(0,1),(0,-1)]\norbit: S[(0,1),(0,1)]");
}

#[test]
fn bounded_searches() {
    let o = run(&["qp-search", "--ideal", "(q+1)^3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "radical-check",
        "q + 1",
        "--ideal",
        "(q+1)^2",
        "--samples",
        "5",
        "--n-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("evidence only"));
    let o = run(&["reducibility", "--ideal", "q^2 + 1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no witness found at bound 4"));
    assert_eq!(run(&["thm36-check", "--ideal", "(q+1)^2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "radical-check",
        "q + 1",
        "--ideal",
        "(q+1)^3",
        "--samples",
        "4",
        "--seed",
        "9",
        "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["gb", "--order", "lex", "q1^2 + 1", "q2 - q1 i"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn bundled_suite_passes() {
    let o = run(&["paper-examples"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 8, "{text}");
}
