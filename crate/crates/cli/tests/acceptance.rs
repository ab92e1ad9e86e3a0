//! The eight acceptance criteria, one line each. Runs without the test
//! harness so the lines always show; exits nonzero if any criterion fails.

use krasner::report::{Report, Verdict};
use krasner_cli::suite::{run_criterion, SuiteConfig, CRITERIA};

/// The acceptance settings: W = 16, 240 value cases, 25 random structures
/// that must all come out of the generator.
fn config() -> SuiteConfig {
    SuiteConfig {
        seed: 42,
        random: 25,
        min_random: 25,
        window: 16,
        value_cases: 240,
        ..SuiteConfig::default()
    }
}

fn summary(report: &Report) -> String {
    let first = report.failures().next().map(|e| {
        format!(
            "; first failure {}: {}",
            e.id,
            e.witness.as_deref().unwrap_or("")
        )
    });
    format!(
        "{} checks{}",
        report.count(Verdict::Pass) + report.count(Verdict::Fail),
        first.unwrap_or_default()
    )
}

fn main() {
    let cfg = config();
    assert!(cfg.value_cases >= 200 && cfg.window == 16);
    let mut failed = Vec::new();
    for (n, (id, statement)) in CRITERIA.iter().enumerate() {
        let outcome = run_criterion(id, &cfg);
        // a criterion that checked nothing has not passed
        let ok = matches!(&outcome, Ok(r) if r.passed() && r.count(Verdict::Pass) > 0);
        let detail = match &outcome {
            Ok(r) => summary(r),
            Err(e) => format!("error: {e}"),
        };
        println!(
            "criterion {} [{}] {id}: {statement} ({detail})",
            n + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(*id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
