use std::process::ExitCode;
use std::time::Instant;

use dgkern::suite::{run_criterion, SuiteConfig};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=12 {
        let r = run_criterion(id, &cfg);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {} ({:.2?}): {}", r.id, r.name, r.elapsed, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of 12 criteria passed in {:.2?}", 12 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
