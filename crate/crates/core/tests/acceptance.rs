//! Runs the eight acceptance checks, printing one line per check.

use quatslice::suite::{check_ids, run_check};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in check_ids() {
        let outcome = run_check(id).expect("known check");
        println!("{}", outcome.line());
        if !outcome.ok() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing checks: {failed:?}");
}
