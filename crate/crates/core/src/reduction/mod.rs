//! Submodule leading terms through graded reduced echelon forms.
//!
//! For each weight `n`, the rows of `A_n` are the words `L_mu u_k` applied
//! to the singular generators `u_k`. The pivots of its reduced echelon form
//! are the leading monomials of the weight-`n` part of the maximal submodule,
//! and the non-pivots index a basis of the irreducible quotient.

mod checks;
mod echelon;
mod matrix;
mod output;
mod spec;

pub use checks::{monotonicity_violations, CrossCheckReport, WeightCheck};
pub use echelon::{refined_character_of, EchelonResult, PivotRecord};
pub use matrix::{RowLabel, WeightMatrix};
pub use output::echelon_csv;
pub use spec::ModuleSpec;
