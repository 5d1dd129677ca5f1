//! One pass/fail line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use wittcalc::suite::{criterion_count, run_all};

const SEED: u64 = 2024;

fn main() -> ExitCode {
    let results = run_all(SEED);
    assert_eq!(results.len(), criterion_count());
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
