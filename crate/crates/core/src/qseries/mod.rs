//! Truncated bivariate series in `t` and `q`, the Nahm-type sums
//! `f_{a,b,c,d}`, and generating functions of pattern-avoiding partitions.

mod bipoly;
mod closed_forms;
mod nahm;

pub use bipoly::{BiPoly, Discrepancy, Q_DENOMINATOR};
pub use closed_forms::{
    character_combination, check_closed_forms, p_series, theorem_rhs, ClosedForm, ClosedFormGroup, FCombination,
};
pub use nahm::{
    catalogued_transformations, check_transformation, eval_f, poch, random_transformations, IdentityCheck, NahmParams,
    Transformation,
};
