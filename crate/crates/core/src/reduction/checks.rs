use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{partition_count, partitions_of, Partition};
use crate::virasoro::PBWVector;

use super::echelon::EchelonResult;
use super::ModuleSpec;

/// The three per-weight equalities tying the linear algebra to the
/// combinatorics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub n: u32,
    pub partitions: u64,
    pub rank: usize,
    pub basis_size: usize,
    /// Non-pivots equal the pattern-avoiding partitions.
    pub basis_matches: bool,
    /// Admissible pivots are exactly the admissible partitions containing a pattern.
    pub pivots_match: bool,
    /// `|non-pivots| = p(n) - rank`.
    pub count_matches: bool,
    /// Pivots that contain no forbidden pattern.
    pub unexpected_pivots: Vec<Partition>,
    /// Pattern-containing partitions that are not pivots.
    pub missing_pivots: Vec<Partition>,
}

impl WeightCheck {
    pub fn passed(&self) -> bool {
        self.basis_matches && self.pivots_match && self.count_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub schema: u32,
    pub label: crate::label::ModuleLabel,
    pub max_weight: u32,
    pub passed: bool,
    pub weights: Vec<WeightCheck>,
}

impl CrossCheckReport {
    /// One line per weight, tab separated, with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tp(n)\trank\tbasis\tbasis=P(n)\tpivots=complement\tcount\tresult\n");
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        for w in &self.weights {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                w.n,
                w.partitions,
                w.rank,
                w.basis_size,
                flag(w.basis_matches),
                flag(w.pivots_match),
                flag(w.count_matches),
                flag(w.passed())
            );
        }
        out
    }
}

impl ModuleSpec {
    /// Checks every weight `n <= max_weight`.
    pub fn cross_check(&self, max_weight: u32) -> CrossCheckReport {
        let echelons = self.echelons_up_to(max_weight);
        self.cross_check_echelons(&echelons)
    }

    pub fn cross_check_echelons(&self, echelons: &[EchelonResult]) -> CrossCheckReport {
        let weights: Vec<WeightCheck> = echelons.iter().map(|e| self.check_weight(e)).collect();
        CrossCheckReport {
            schema: 1,
            label: self.label,
            max_weight: echelons.len().saturating_sub(1) as u32,
            passed: weights.iter().all(WeightCheck::passed),
            weights,
        }
    }

    fn check_weight(&self, e: &EchelonResult) -> WeightCheck {
        let n = e.weight;
        let basis: BTreeSet<&Partition> = e.non_pivots.iter().collect();
        let expected_basis = self.patterns.enumerate(n);
        let expected: BTreeSet<&Partition> = expected_basis.iter().collect();

        let all = partitions_of(n);
        let forbidden: BTreeSet<&Partition> =
            all.iter().filter(|l| self.admissible(l) && self.patterns.contains_pattern(l)).collect();
        let pivots: BTreeSet<&Partition> = e.pivots.iter().filter(|l| self.admissible(l)).collect();

        let p_n = partition_count(n);
        WeightCheck {
            n,
            partitions: p_n,
            rank: e.rank(),
            basis_size: e.non_pivots.len(),
            basis_matches: basis == expected,
            pivots_match: pivots == forbidden,
            count_matches: e.non_pivots.len() as u64 == p_n - e.rank() as u64,
            unexpected_pivots: pivots.difference(&forbidden).map(|l| (*l).clone()).collect(),
            missing_pivots: forbidden.difference(&pivots).map(|l| (*l).clone()).collect(),
        }
    }

    /// For each exceptional member `lambda` of `R`, the maximal-length part of
    /// the echelon row with pivot `lambda`.
    pub fn uk_fixtures(&self) -> Result<Vec<(Partition, PBWVector)>> {
        let mut out = Vec::new();
        for lambda in &self.patterns.exceptional {
            let e = self.echelon(lambda.weight());
            let row = e.row_for(lambda).ok_or_else(|| {
                Error::Inconsistency(format!("{}: {lambda} is not a pivot at weight {}", self.label, lambda.weight()))
            })?;
            out.push((lambda.clone(), row.length_leading_part()));
        }
        Ok(out)
    }
}

/// Pivots must propagate: if `lambda` is a pivot at weight `n`, then so are
/// `lambda` with an extra part `v >= 2` and `lambda` with an extra 1.
/// Returns a description of every failure within the computed range.
pub fn monotonicity_violations(echelons: &[EchelonResult]) -> Vec<String> {
    let max = echelons.len().saturating_sub(1) as u32;
    let pivot_sets: Vec<BTreeSet<&Partition>> = echelons.iter().map(|e| e.pivots.iter().collect()).collect();
    let mut out = Vec::new();
    for e in echelons {
        for lambda in &e.pivots {
            for v in 1..=max.saturating_sub(e.weight) {
                let bigger = lambda.with_part(v);
                if !pivot_sets[(e.weight + v) as usize].contains(&bigger) {
                    out.push(format!("{lambda} is a pivot at {} but {bigger} is not at {}", e.weight, e.weight + v));
                }
            }
        }
    }
    out
}
