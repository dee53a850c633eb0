use std::fmt::Write as _;

use crate::rational::format_rational;

use super::EchelonResult;

/// The echelon matrix as CSV: a header of column partitions in `2+1+1`
/// notation, then one line of `num/den` entries per row.
pub fn echelon_csv(e: &EchelonResult) -> String {
    let header: Vec<String> = e.column_order.iter().map(|p| p.plus_notation()).collect();
    let mut out = header.join(", ");
    out.push('\n');
    for row in e.to_dense() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        let _ = writeln!(out, "{}", cells.join(", "));
    }
    out
}
