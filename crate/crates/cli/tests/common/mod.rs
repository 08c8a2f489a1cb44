#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// One fixed configuration per subcommand, checked byte for byte.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "eigen",
        &["eigen", "--J", "1", "--D", "0.5", "--r", "0.5", "--Bz", "1"],
    ),
    (
        "evolve",
        &[
            "evolve",
            "--t-max",
            "2",
            "--t-steps",
            "4",
            "--observables",
            "purity",
        ],
    ),
    ("steady", &["steady", "--alpha", "pi/3"]),
    (
        "sweep",
        &[
            "sweep",
            "--axis1",
            "D:0.05:2:3",
            "--axis2",
            "r:0.3:2:3",
            "--derivative",
            "D",
        ],
    ),
    (
        "derivative",
        &["derivative", "--derivative", "r", "--Bz", "0.75"],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.csv"))
}

/// Runs the binary with a clean `DIPCOH_CONFIG`.
pub fn dipcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dipcoh"))
        .args(args)
        .env_remove("DIPCOH_CONFIG")
        .output()
        .expect("spawn dipcoh")
}

pub fn stdout_of(args: &[&str]) -> String {
    let out = dipcoh(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Inputs that must be rejected with exit code 2.
pub const MALFORMED: &[&[&str]] = &[
    &["eigen", "--r", "0"],
    &["eigen", "--r", "-1"],
    &["eigen", "--D", "-0.1"],
    &["eigen", "--J", "nan"],
    &["eigen", "--Bz", "one"],
    &["evolve", "--alpha", "4"],
    &["evolve", "--gamma", "-0.1"],
    &["evolve", "--t-max", "-1"],
    &["evolve", "--t-steps", "0"],
    &["evolve", "--observables", "entropy"],
    &["steady", "--alpha", "pi/0"],
    &["sweep"],
    &["sweep", "--axis1", "D:0:1"],
    &["sweep", "--axis1", "q:0:1:3"],
    &["sweep", "--axis1", "D:1:0:3"],
    &["sweep", "--axis1", "r:0:1:3"],
    &["derivative"],
    &["derivative", "--derivative", "J"],
    &["bogus"],
    &["eigen", "--unknown-flag", "1"],
    &[],
];
