//! Multi-modular RREF with its certificate, compared to plain rational
//! elimination on a mid-sized A_n.

use std::time::Instant;

use ising_pbw::label::ModuleLabel;
use ising_pbw::linalg::{certify, rref, rref_multimodular};
use ising_pbw::reduction::ModuleSpec;

fn main() -> ising_pbw::Result<()> {
    let spec = ModuleSpec::new(ModuleLabel::HSixteenth)?;
    let a = spec.build_an(12);
    println!("A_12 for h1/16: {} x {}", a.matrix.nrows(), a.columns.len());

    let start = Instant::now();
    let (fast, stats) = rref_multimodular(&a.matrix);
    println!("multi-modular: rank {} in {:.2?}, {stats:?}", fast.rank(), start.elapsed());

    let start = Instant::now();
    let slow = rref(&a.matrix);
    println!("rational:      rank {} in {:.2?}", slow.rank(), start.elapsed());

    println!("identical: {}, certified: {}", fast == slow, certify(&a.matrix, &fast));
    Ok(())
}
