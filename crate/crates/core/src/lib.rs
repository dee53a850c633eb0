pub mod error;
pub mod label;
pub mod linalg;
pub mod partitions;
pub mod qseries;
pub mod rational;
pub mod virasoro;

pub use error::{Error, Result};
pub mod cli;
pub mod reduction;
