use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::ModuleLabel;
use crate::linalg::{rref_exact, SparseMatrix};
use crate::partitions::Partition;
use crate::qseries::BiPoly;
use crate::rational::Rational;
use crate::virasoro::PBWVector;

use super::ModuleSpec;

/// The reduced echelon form `A^W_n` of `A_n`, read back as PBW vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EchelonResult {
    pub weight: u32,
    /// Weight-`n` monomials, descending.
    pub column_order: Vec<Partition>,
    /// The rows `u^W_lambda`, ordered by pivot.
    pub rows: Vec<PBWVector>,
    pub pivots: Vec<Partition>,
    pub non_pivots: Vec<Partition>,
}

impl EchelonResult {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The row whose pivot is `lambda`.
    pub fn row_for(&self, lambda: &Partition) -> Option<&PBWVector> {
        self.pivots.iter().position(|p| p == lambda).map(|i| &self.rows[i])
    }

    /// Dense rows in column order.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| self.column_order.iter().map(|c| r.coefficient(c)).collect()).collect()
    }
}

/// Pivot and non-pivot sets of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PivotRecord {
    pub label: ModuleLabel,
    pub n: u32,
    pub pivots: Vec<Partition>,
    pub basis: Vec<Partition>,
}

impl From<(&ModuleSpec, &EchelonResult)> for PivotRecord {
    fn from((spec, e): (&ModuleSpec, &EchelonResult)) -> Self {
        PivotRecord { label: spec.label, n: e.weight, pivots: e.pivots.clone(), basis: e.non_pivots.clone() }
    }
}

impl ModuleSpec {
    /// `A^W_n` from an exact RREF of `A_n`.
    pub fn echelon(&self, n: u32) -> EchelonResult {
        let a = self.build_an(n);
        echelon_from(self, n, a.columns, &a.matrix)
    }

    /// `A^W_n` for every `n <= max_weight`. Weights are independent and run
    /// on the current rayon pool; results come back in weight order.
    pub fn echelons_up_to(&self, max_weight: u32) -> Vec<EchelonResult> {
        // Largest weights first so the long jobs start early.
        let mut results: Vec<EchelonResult> =
            (0..=max_weight).rev().collect::<Vec<_>>().into_par_iter().map(|n| self.echelon(n)).collect();
        results.reverse();
        results
    }

    pub fn pivots_up_to(&self, max_weight: u32) -> Vec<PivotRecord> {
        self.echelons_up_to(max_weight).iter().map(|e| PivotRecord::from((self, e))).collect()
    }

    /// Basis partitions of the irreducible quotient for each weight.
    ///
    /// For the vacuum module every basis partition must avoid the part 1;
    /// anything else is reported as an inconsistency.
    pub fn quotient_basis(&self, max_weight: u32) -> Result<Vec<Vec<Partition>>> {
        let bases: Vec<Vec<Partition>> = self.echelons_up_to(max_weight).into_iter().map(|e| e.non_pivots).collect();
        self.check_basis(&bases)?;
        Ok(bases)
    }

    pub fn check_basis(&self, bases: &[Vec<Partition>]) -> Result<()> {
        for (n, basis) in bases.iter().enumerate() {
            if let Some(bad) = basis.iter().find(|l| !self.admissible(l)) {
                return Err(Error::Inconsistency(format!(
                    "{}: basis partition {bad} at weight {n} has a part 1, but L_-1|0> lies in the submodule",
                    self.label
                )));
            }
        }
        Ok(())
    }

    /// `sum t^{len(lambda)} q^{h + |lambda|}` over the quotient basis.
    pub fn refined_character(&self, max_weight: u32) -> Result<BiPoly> {
        let bases = self.quotient_basis(max_weight)?;
        Ok(refined_character_of(self.label, &bases))
    }
}

pub fn refined_character_of(label: ModuleLabel, bases: &[Vec<Partition>]) -> BiPoly {
    let max_weight = bases.len().saturating_sub(1) as u32;
    let mut out = BiPoly::zero(max_weight);
    let den = out.q_denominator() as i64;
    for (n, basis) in bases.iter().enumerate() {
        for lambda in basis {
            out.add_scaled(lambda.length(), n as i64 * den, Rational::one());
        }
    }
    out.shift(0, &label.highest_weight())
}

pub(crate) fn echelon_from(
    spec: &ModuleSpec,
    weight: u32,
    columns: Vec<Partition>,
    a: &SparseMatrix<Rational>,
) -> EchelonResult {
    let e = rref_exact(a);
    let vspec = spec.verma.spec().clone();
    let rows: Vec<PBWVector> = e
        .rows
        .iter()
        .map(|row| {
            PBWVector::from_terms(
                vspec.clone(),
                weight as i64,
                row.iter().map(|(c, x)| (columns[*c as usize].clone(), x.clone())),
            )
            .expect("columns share one weight")
        })
        .collect();
    let pivots = e.pivot_columns().into_iter().map(|c| columns[c].clone()).collect();
    let non_pivots = e.free_columns().into_iter().map(|c| columns[c].clone()).collect();
    EchelonResult { weight, column_order: columns, rows, pivots, non_pivots }
}
