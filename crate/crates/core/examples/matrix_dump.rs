//! A_4 and its reduced echelon form for h = 1/2, as CSV.

use ising_pbw::label::ModuleLabel;
use ising_pbw::rational::format_rational;
use ising_pbw::reduction::{echelon_csv, ModuleSpec};

fn main() -> ising_pbw::Result<()> {
    let spec = ModuleSpec::new(ModuleLabel::HHalf)?;
    let a = spec.build_an(4);
    println!("A_4 rows:");
    for (label, row) in a.row_labels.iter().zip(a.matrix.to_dense()) {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        println!("  L_{} u_{}: {}", label.mu, label.generator, cells.join(", "));
    }
    println!("\nA^W_4:\n{}", echelon_csv(&spec.echelon(4)));
    Ok(())
}
