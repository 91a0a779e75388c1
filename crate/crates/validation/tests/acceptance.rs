//! Prints one PASS/FAIL line per acceptance criterion and fails if any criterion does.

use std::process::ExitCode;

fn main() -> ExitCode {
    let outcomes = logint_validation::all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!(
        "acceptance: {} passed, {} failed{}",
        outcomes.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" (criteria {failed:?})") }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
