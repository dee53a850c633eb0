//! Linear algebra against combinatorics: per-weight table, then the refined
//! character against its f-series expression.

use ising_pbw::label::ModuleLabel;
use ising_pbw::qseries::{character_combination, theorem_rhs};
use ising_pbw::reduction::{monotonicity_violations, ModuleSpec};

fn main() -> ising_pbw::Result<()> {
    for label in [ModuleLabel::H0, ModuleLabel::HHalf, ModuleLabel::HSixteenth] {
        let n = if label == ModuleLabel::HSixteenth { 16 } else { 15 };
        let spec = ModuleSpec::new(label)?;
        let echelons = spec.echelons_up_to(n);
        let report = spec.cross_check_echelons(&echelons);
        println!("{label}\n{}", report.to_tsv());
        println!("monotonicity violations: {}", monotonicity_violations(&echelons).len());

        let character = spec.refined_character(n)?;
        match character.first_discrepancy(&theorem_rhs(label, n)) {
            None => println!("character = q^h ({}) through q^{n}\n", character_combination(label)),
            Some(d) => println!("character differs: {d}\n"),
        }
    }
    Ok(())
}
