//! Acceptance run: `verify --suite all --seed 42` twice through the built
//! binary, then one line per criterion.

use serde_json::Value;
use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

struct Run {
    stdout: Vec<u8>,
    timings: BTreeMap<String, f64>,
}

fn verify_all() -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tetrablock"))
        .args(["verify", "--suite", "all", "--seed", "42", "--no-timestamp"])
        .output()
        .expect("run tetrablock");
    let stderr = String::from_utf8_lossy(&out.stderr);
    eprint!("{stderr}");
    // "lemma1: pass (12.3 s)"
    let timings = stderr
        .lines()
        .filter_map(|l| {
            let (name, rest) = l.split_once(": ")?;
            let secs = rest.split_once('(')?.1.strip_suffix(" s)")?;
            Some((name.to_string(), secs.parse().ok()?))
        })
        .collect();
    Run {
        stdout: out.stdout,
        timings,
    }
}

struct Report(Value);

impl Report {
    fn check(&self, suite: &str, name: &str) -> Option<&Value> {
        self.0["result"]["suites"]
            .as_array()?
            .iter()
            .find(|s| s["suite"] == suite)?["checks"]
            .as_array()?
            .iter()
            .find(|c| c["name"] == name)
    }

    /// Passed with zero failures over exactly `trials` trials.
    fn clean(&self, suite: &str, name: &str, trials: u64) -> bool {
        self.check(suite, name)
            .is_some_and(|c| c["passed"] == true && c["failures"] == 0 && c["trials"].as_u64() == Some(trials))
    }

    /// Passed over exactly `trials` trials, failures allowed.
    fn passed(&self, suite: &str, name: &str, trials: u64) -> bool {
        self.check(suite, name)
            .is_some_and(|c| c["passed"] == true && c["trials"].as_u64() == Some(trials))
    }

    fn metric(&self, suite: &str, name: &str, key: &str) -> f64 {
        self.check(suite, name)
            .and_then(|c| c["metrics"][key].as_f64())
            .unwrap_or(f64::NAN)
    }

    fn size(&self, key: &str) -> u64 {
        self.0["result"]["sizes"][key].as_u64().unwrap_or(0)
    }
}

fn main() -> ExitCode {
    let first = verify_all();
    let second = verify_all();
    let report = Report(serde_json::from_slice(&first.stdout).expect("verify report is JSON"));
    let t = |s: &str| first.timings.get(s).copied().unwrap_or(f64::INFINITY);

    let lemma1_time = t("lemma1");
    let prop31_time = t("prop31");
    let scan_time = t("corollary");
    let rho_scans = ["0.25", "0.5", "0.75", "1"]
        .iter()
        .all(|r| report.clean("corollary", &format!("scan_G2RHO({r})"), 10_000));
    let bullets = ["pencil_singleton", "flat_singleton"].iter().all(|b| {
        report.clean("thm2", &format!("{b}_is_singleton"), 100)
            && report.clean("thm2", &format!("{b}_misses"), 100)
            && report.clean("thm2", &format!("{b}_perturbations_hit"), 100 * 50)
    });

    let criteria: Vec<(String, bool)> = vec![
        (
            format!("three membership criteria agree on 10^4 points ({lemma1_time:.1} s of 60)"),
            report.clean("lemma1", "three_criteria_agree", 10_000) && lemma1_time <= 60.0,
        ),
        (
            format!(
                "extremal identity, gap {:.1e}, grid excess {:.1e}",
                report.metric("lemma1", "extremal_identity", "max_abs_gap"),
                report.metric("lemma1", "extremal_identity", "max_grid_excess")
            ),
            report.clean("lemma1", "extremal_identity", 10_000)
                && report.metric("lemma1", "extremal_identity", "max_abs_gap") <= 1e-12
                && report.metric("lemma1", "extremal_identity", "max_grid_excess") <= 1e-9,
        ),
        (
            format!(
                "preimage round trips for 4 radii, residual {:.1e} ({prop31_time:.1} s of 30)",
                report.metric("prop31", "preimage_round_trip", "max_residual")
            ),
            report.clean("prop31", "preimage_round_trip", 4 * 10_000)
                && report.metric("prop31", "preimage_round_trip", "max_residual") <= 1e-12
                && prop31_time <= 30.0,
        ),
        (
            "G2,rho closed form vs preimage search, 3 radii x 10^4".to_string(),
            report.clean("prop31", "g2rho_vs_preimage_search", 3 * 10_000),
        ),
        (
            format!(
                "separating hyperplanes at 10^3 exterior points, residual {:.1e}",
                report.metric("lemma2", "separating_hyperplanes_miss", "max_residual")
            ),
            report.clean("lemma2", "separating_hyperplanes_miss", 1_000)
                && report.metric("lemma2", "separating_hyperplanes_miss", "max_residual") <= 1e-12
                && report.size("miss_samples") >= 100_000,
        ),
        (
            "(1, r, r) members miss and non-members hit, 3 x 200 each".to_string(),
            report.clean("thm1", "one_r_r_members_miss", 3 * 200)
                && report.clean("thm1", "one_r_r_non_members_hit", 3 * 200),
        ),
        (
            "singleton bullets, corner contains zero, convexity, witness rejected".to_string(),
            bullets
                && report.clean("thm2", "corner_contains_zero", 3)
                && report.clean("thm2", "corner_midpoint_convex", 1_000)
                && report.clean("thm2", "corner_excludes_witness", 2),
        ),
        (
            format!("C-convexity scans clean, control violates ({scan_time:.1} s of 600)"),
            report.clean("corollary", "scan_E", 10_000)
                && rho_scans
                && report.passed("corollary", "scan_control", 1_000)
                && report.metric("corollary", "scan_E", "resolution") == 256.0
                && scan_time <= 600.0,
        ),
        (
            format!(
                "gradient vs finite differences, relative error {:.1e}",
                report.metric("thm1", "gradient_vs_finite_differences", "max_relative_error")
            ),
            report.clean("thm1", "gradient_vs_finite_differences", 100)
                && report.metric("thm1", "gradient_vs_finite_differences", "max_relative_error") <= 1e-6,
        ),
        (
            format!("two runs byte-identical ({} bytes)", first.stdout.len()),
            !first.stdout.is_empty() && first.stdout == second.stdout,
        ),
    ];

    let mut ok = true;
    for (i, (label, passed)) in criteria.iter().enumerate() {
        println!(
            "{} criterion {:>2}: {label}",
            if *passed { "PASS" } else { "FAIL" },
            i + 1
        );
        ok &= passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
