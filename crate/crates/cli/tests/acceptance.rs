//! Acceptance check for the command-line interface: deterministic output and
//! the documented exit-status contract.

use std::process::{Command, Output};

fn dk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dk"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("dk_acc_{name}_{}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

/// Criterion 9: repeated runs are byte-identical, and exit statuses follow
/// the contract (0 = success, 1 = verification failure, 2 = usage error).
#[test]
fn acceptance_9_cli_determinism_and_exit_status_contract() {
    // Determinism: the same seeded invocation produces identical bytes.
    let first = dk(&["verify", "--seed", "11", "--samples", "20"]);
    let second = dk(&["verify", "--seed", "11", "--samples", "20"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "repeated runs diverged");

    let dyn_first = dk(&["dynamics", "--mass", "1", "--momentum", "0.3,-0.2,0.5"]);
    let dyn_second = dk(&["dynamics", "--mass", "1", "--momentum", "0.3,-0.2,0.5"]);
    assert_eq!(dyn_first.status.code(), Some(0));
    assert_eq!(dyn_first.stdout, dyn_second.stdout);

    // Exit 0: passing verification work.
    let build = dk(&["sector", "build", "--sector", "scalar", "--seed", "7"]);
    assert_eq!(build.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&build.stdout).unwrap();
    let quad = serde_json::to_string(&report["quad"]).unwrap();

    let quad_path = write_temp("scalar_quad", &quad);
    let classify = dk(&["sector", "classify", "--input", quad_path.to_str().unwrap()]);
    assert_eq!(classify.status.code(), Some(0));

    // Exit 1: checks that ran but failed their thresholds.
    let too_tight = dk(&["verify", "--seed", "11", "--samples", "3", "--tol", "1e-30"]);
    assert_eq!(too_tight.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&too_tight.stdout).unwrap();
    assert_eq!(report["verdict"], "fails");
    assert!(report["guidance"].is_string(), "tight tolerance lacks guidance");

    let off_shell = dk(&["dynamics", "--mass", "1", "--boson-mass", "2.5"]);
    assert_eq!(off_shell.status.code(), Some(1));

    let generic = write_temp(
        "generic_quad",
        "[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],\
          [[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]",
    );
    let unmatched = dk(&["sector", "classify", "--input", generic.to_str().unwrap()]);
    assert_eq!(unmatched.status.code(), Some(1));

    // Exit 2: arguments or input files that cannot be used at all.
    assert_eq!(dk(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(dk(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        dk(&["dynamics", "--mass", "-1"]).status.code(),
        Some(2),
        "negative mass must be a usage error"
    );
    let empty = write_temp("empty", "");
    assert_eq!(
        dk(&["decompose", "--input", empty.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let pair = write_temp(
        "pair_for_classify",
        "[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]]]",
    );
    assert_eq!(
        dk(&["sector", "classify", "--input", pair.to_str().unwrap()]).status.code(),
        Some(2),
        "wrong arity must be a usage error"
    );
}
