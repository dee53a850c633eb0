//! Generating functions of pattern-avoiding partitions against their
//! closed forms as sums of f-series.

use ising_pbw::qseries::{check_closed_forms, ClosedFormGroup};

fn main() {
    let q = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(25);
    let mut failed = 0;
    for group in ClosedFormGroup::ALL {
        println!("{group:?}");
        for check in check_closed_forms(group, q) {
            failed += usize::from(!check.passed());
            println!("  {check}");
        }
    }
    std::process::exit(i32::from(failed > 0));
}
