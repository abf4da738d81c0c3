//! Acceptance gate, command-line half: the whole identity registry must
//! verify through the binary in one invocation.

use std::process::Command;
use std::time::{Duration, Instant};

#[test]
fn criterion_8_full_registry_through_the_binary() {
    let started = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_bperm"))
        .args(["verify", "--all", "--n-max", "4"])
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(output.stdout).expect("utf-8 stdout");
    let pass_lines = stdout.lines().filter(|l| l.contains(" pass ")).count();
    let ok = output.status.success() && pass_lines == 37;
    println!(
        "criterion 8: {} (verify --all --n-max 4, {pass_lines} identities) [{} ms]",
        if ok { "pass" } else { "FAIL" },
        started.elapsed().as_millis()
    );
    assert!(output.status.success(), "exit status {:?}\n{stdout}", output.status);
    assert_eq!(pass_lines, 37, "expected every identity to report pass\n{stdout}");
    assert!(
        started.elapsed() < Duration::from_secs(300),
        "criterion 8 exceeded five minutes"
    );
}
