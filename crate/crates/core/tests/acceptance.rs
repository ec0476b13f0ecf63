//! Runs the ten acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use twobridge::acceptance::run_criterion;

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=10 {
        let outcome = run_criterion(id);
        println!("{outcome}");
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
