//! Singular vectors of M(1/2, h) for the three Ising highest weights.
//!
//! Run with `cargo run --release --example singular_vectors`.

use ising_pbw::rational::rat;
use ising_pbw::virasoro::{Verma, VermaSpec};

fn main() {
    for (h, levels) in [(rat(0, 1), 1..=6), (rat(1, 2), 1..=6), (rat(1, 16), 1..=6)] {
        let verma = Verma::new(VermaSpec::new(rat(1, 2), h.clone()));
        for level in levels {
            for v in verma.singular_vectors(level) {
                assert!(verma.check_singular(&v).is_ok());
                println!("h={h} level {level}: {v}");
            }
        }
    }
}
