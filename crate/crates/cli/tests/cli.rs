//! End-to-end tests of the `syncolor` binary: determinism, pipe
//! composability, exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_syncolor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_is_deterministic_and_reparses() {
    let first = run(&["gen", "cerny", "4"], "");
    let second = run(&["gen", "cerny", "4"], "");
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let analyzed = run(&["analyze"], &stdout(&first));
    assert!(analyzed.status.success());
    let report = stdout(&analyzed);
    assert!(report.starts_with("tool: syncolor "));
    assert!(report.contains("input-sha256: "));
    assert!(report.contains("shortest_reset_length: 9"));
    // Same input, same report.
    let again = run(&["analyze"], &stdout(&first));
    assert_eq!(analyzed.stdout, again.stdout);
}

#[test]
fn debruijn_pipes_into_free_certificate() {
    let machine = run(&["gen", "debruijn", "2", "--group", "z2"], "");
    assert!(machine.status.success());
    let cert = run(&["certify"], &stdout(&machine));
    assert!(cert.status.success());
    let report = stdout(&cert);
    assert!(report.contains("verdict: free"), "{report}");
    assert!(report.contains("ideal: syn"));
}

#[test]
fn cerny_flip_group_order_is_two() {
    // The flip coloring collapses every generator to the complement map;
    // the group it generates has order 2 (not 2^n).
    let dfa = run(&["gen", "cerny", "3"], "");
    let colored = run(&["color", "-", "flip"], &stdout(&dfa));
    assert!(colored.status.success(), "{:?}", colored);
    let order = run(&["group", "-", "order"], &stdout(&colored));
    assert!(order.status.success());
    assert!(stdout(&order).contains("order: 2\n"), "{}", stdout(&order));
}

#[test]
fn element_orders_on_debruijn_k1() {
    let machine = stdout(&run(&["gen", "debruijn", "1", "--group", "z2"], ""));
    let identity = run(&["group", "-", "element-order", "0.0^-1"], &machine);
    assert!(identity.status.success());
    assert!(stdout(&identity).contains("order: 1"));
    // Both generators act with infinite order (B_e is the difference map).
    for word in ["0", "1", "1.1"] {
        let shift = run(&["group", "-", "element-order", word], &machine);
        assert!(shift.status.success());
        assert!(stdout(&shift).contains("verdict: exceeds-cap 64"));
    }
}

#[test]
fn check_reset_with_explicit_ideal() {
    let dfa = stdout(&run(&["gen", "cerny", "3"], ""));
    let colored = stdout(&run(&["color", "-", "flip"], &dfa));
    // w1 and its complement generate an ideal the flip coloring preserves.
    let w1 = "1.1.0.0.1.1.0.0";
    let w2 = "0.0.1.1.0.0.1.1";
    let weak = run(&["check-reset", "-", "--ideal", w1, w2], &colored);
    assert!(weak.status.success());
    assert!(stdout(&weak).contains("verdict: weakly-reset"));
    // Without an ideal the flip coloring is not reset.
    let plain = run(&["check-reset", "-"], &colored);
    assert!(plain.status.success());
    assert!(stdout(&plain).contains("verdict: not-reset"));
}

#[test]
fn exit_codes() {
    // Parse error: 2.
    let bad = run(&["analyze"], "type: dfa\nalphabet: 0\nstates: q\n");
    assert_eq!(bad.status.code(), Some(2));
    // Wrong machine kind for certify: 2.
    let dfa = stdout(&run(&["gen", "cerny", "3"], ""));
    let wrong = run(&["certify"], &dfa);
    assert_eq!(wrong.status.code(), Some(2));
    // Analysis error that is not a usage problem: 1.
    let noninvertible = "type: mealy\nalphabet: 0 1\nstates: q\n\
                         trans: q 0|0 q\ntrans: q 1|0 q\n";
    let failed = run(&["group", "-", "order"], noninvertible);
    assert_eq!(failed.status.code(), Some(1));
    // Success: 0.
    let ok = run(&["gen", "cerny", "3"], "");
    assert_eq!(ok.status.code(), Some(0));
}
