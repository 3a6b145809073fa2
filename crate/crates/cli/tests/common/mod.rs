#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("{name}.json")]
        .iter()
        .collect()
}

pub fn run(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetmetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// One golden case per subcommand: name and argv, with `@file` resolved to
/// the data directory.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("jets", &["jets", "--order", "4", "@cusp.pres"]),
    ("hilbert", &["hilbert", "@quartic.pres"]),
    ("hilbert_local", &["hilbert", "@cusp.pres", "--window", "1..12"]),
    ("distance", &["distance", "@x2.pres", "@x3.pres", "--max-order", "6", "--ext", "2"]),
    ("defpair_distance", &["defpair-distance", "@pair_a.pres", "@pair_b.pres", "--max-order", "4"]),
    ("slopes_delta0", &["slopes", "@plane.pres", "--which", "delta0", "-n", "20"]),
    ("slopes_eps0", &["slopes", "@plane.pres", "--which", "eps0", "-n", "100"]),
    ("slopes_rho", &["slopes", "@space.pres", "--which", "rho"]),
    ("slopes_quasidim", &["slopes", "@plane.pres", "--which", "quasidim"]),
    ("slopes_trace", &["slopes", "@plane.pres", "--which", "trace", "--orders", "10,20,40"]),
    ("resolve", &["resolve", "@embedded.pres"]),
    ("resolve_residue", &["resolve", "@x2.pres", "--residue", "-n", "3", "--hcap", "5"]),
    ("classify", &["classify", "@quartic.pres"]),
    ("euler", &["euler", "@quartic.pres"]),
    ("limit", &["limit", "--template", "@family.tpl", "--range", "1..10", "-n", "3"]),
];

pub fn argv(case: &[&str]) -> Vec<String> {
    case.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => data(f),
            None => a.to_string(),
        })
        .collect()
}
