//! Pattern-avoiding partitions for each module, with their counts against p(n).

use ising_pbw::label::ModuleLabel;
use ising_pbw::partitions::{partition_count, PatternSet};

fn main() {
    for label in ModuleLabel::ALL {
        let set = PatternSet::for_module(label);
        println!(
            "{label}: exceptional patterns {:?}",
            set.exceptional.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
        for n in 0..=10 {
            let basis = set.enumerate(n);
            let shown: Vec<String> = basis.iter().map(|p| p.plus_notation()).collect();
            println!("  n={n:2}  {:3} of p(n)={:3}  {}", basis.len(), partition_count(n), shown.join("  "));
        }
    }
}
