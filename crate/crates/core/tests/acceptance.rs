//! Acceptance suite: runs every theorem-suite check and prints one PASS/FAIL
//! line per criterion.  The long `(3, 2)` census runs only with
//! `VARIETYLAB_FULL_CENSUS=1`.

use varietylab::suite::{self, SuiteOptions};

fn main() {
    let opts = SuiteOptions::from_env();
    let mut failed = 0;
    for id in 1..=suite::CHECKS.len() {
        let outcome = suite::run_check(id, &opts);
        println!("{}", outcome.line());
        failed += !outcome.pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", suite::CHECKS.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
