//! Pivots and quotient basis of A^W_n, weight by weight.

use ising_pbw::label::ModuleLabel;
use ising_pbw::reduction::ModuleSpec;

fn main() -> ising_pbw::Result<()> {
    let label: ModuleLabel = std::env::args().nth(1).as_deref().unwrap_or("h1/2").parse()?;
    let max_weight = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(10);
    let spec = ModuleSpec::new(label)?;
    for record in spec.pivots_up_to(max_weight) {
        let basis: Vec<String> = record.basis.iter().map(|p| p.plus_notation()).collect();
        println!("n={:2} rank {:3}  basis: {}", record.n, record.pivots.len(), basis.join("  "));
    }
    Ok(())
}
