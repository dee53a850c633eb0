//! Rows of A^W_n for the exceptional patterns of h = 1/2 and their
//! maximal-length parts.

use ising_pbw::label::ModuleLabel;
use ising_pbw::reduction::ModuleSpec;

fn main() -> ising_pbw::Result<()> {
    let spec = ModuleSpec::new(ModuleLabel::HHalf)?;
    for (lambda, uk) in spec.uk_fixtures()? {
        println!("{}: {uk}", lambda.plus_notation());
    }
    Ok(())
}
