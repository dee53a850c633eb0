//! Sparse reduced row echelon form over exact fields.
//!
//! Columns are indexed from 0 (the largest monomial) upward; the pivot of a
//! row is its leftmost nonzero column. Rows are stored as column-sorted
//! `(column, value)` lists.

use num_traits::{One, Zero};

pub mod modular;
mod multimodular;

pub use multimodular::{certify, rref_multimodular, ModularStats};

use crate::rational::Rational;

/// The scalar operations elimination needs.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type SparseRow<F> = Vec<(u32, F)>;

/// A row-major sparse matrix with a fixed column count.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    pub ncols: usize,
    pub rows: Vec<SparseRow<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    /// Appends a row given in any column order; zero entries are dropped.
    pub fn push_row(&mut self, mut row: SparseRow<F>) {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, _)| (*c as usize) < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn from_dense(dense: &[Vec<F>]) -> Self {
        let ncols = dense.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(ncols);
        for row in dense {
            m.push_row(row.iter().cloned().enumerate().map(|(c, v)| (c as u32, v)).collect());
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![F::zero(); self.ncols];
                for (c, v) in row {
                    d[*c as usize] = v.clone();
                }
                d
            })
            .collect()
    }
}

/// A matrix in reduced row echelon form: each row has pivot entry one, every
/// pivot column is zero outside its row, and rows are ordered by pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    pub ncols: usize,
    pub rows: Vec<SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0 as usize).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for r in &self.rows {
            is_pivot[r[0].0 as usize] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn to_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix { ncols: self.ncols, rows: self.rows.clone() }
    }

    /// Reduces `row` against the echelon rows; zero iff `row` lies in their span.
    pub fn reduce(&self, row: &SparseRow<F>) -> SparseRow<F> {
        let mut pivot_row = vec![usize::MAX; self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            pivot_row[r[0].0 as usize] = i;
        }
        let mut acc = Dense::new(self.ncols);
        acc.scatter(row);
        for (c, _) in row {
            let i = pivot_row[*c as usize];
            if i != usize::MAX {
                let coeff = acc.get(*c as usize).clone();
                if !coeff.is_zero() {
                    acc.sub_scaled(&coeff, &self.rows[i]);
                }
            }
        }
        acc.gather()
    }

    /// A basis of the kernel `{x : A x = 0}`, one vector per free column:
    /// `x_f = 1`, `x_p = -R[p][f]` on pivots, zero elsewhere.
    pub fn nullspace(&self) -> Vec<SparseRow<F>> {
        let free = self.free_columns();
        let mut basis: Vec<SparseRow<F>> = free.iter().map(|&f| vec![(f as u32, F::one())]).collect();
        let mut slot = vec![usize::MAX; self.ncols];
        for (i, &f) in free.iter().enumerate() {
            slot[f] = i;
        }
        for row in &self.rows {
            let pivot = row[0].0;
            for (c, v) in &row[1..] {
                let i = slot[*c as usize];
                if i != usize::MAX {
                    basis[i].push((pivot, v.neg()));
                }
            }
        }
        for v in &mut basis {
            v.sort_by_key(|(c, _)| *c);
        }
        basis
    }
}

/// Dense scratch row with a touched-column list so gathering is cheap.
struct Dense<F> {
    vals: Vec<F>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl<F: Field> Dense<F> {
    fn new(ncols: usize) -> Self {
        Dense { vals: vec![F::zero(); ncols], touched: Vec::new(), mark: vec![false; ncols] }
    }

    fn touch(&mut self, c: u32) {
        if !self.mark[c as usize] {
            self.mark[c as usize] = true;
            self.touched.push(c);
        }
    }

    fn scatter(&mut self, row: &SparseRow<F>) {
        for (c, v) in row {
            self.touch(*c);
            self.vals[*c as usize] = v.clone();
        }
    }

    fn get(&self, c: usize) -> &F {
        &self.vals[c]
    }

    /// `self -= coeff * row`
    fn sub_scaled(&mut self, coeff: &F, row: &SparseRow<F>) {
        for (c, v) in row {
            self.touch(*c);
            self.vals[*c as usize].sub_mul(coeff, v);
        }
    }

    /// Nonzero entries in column order; resets the scratch.
    fn gather(&mut self) -> SparseRow<F> {
        self.touched.sort_unstable();
        let mut out = Vec::new();
        for &c in &self.touched {
            let v = std::mem::replace(&mut self.vals[c as usize], F::zero());
            self.mark[c as usize] = false;
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Canonical reduced row echelon form. Zero rows are dropped.
///
/// Rows are inserted one at a time into an echelon basis (each new row is
/// swept left to right against the existing pivots on a dense scratch row),
/// then a back-substitution pass from the rightmost pivot clears every pivot
/// column above its pivot.
pub fn rref<F: Field>(matrix: &SparseMatrix<F>) -> Echelon<F> {
    let ncols = matrix.ncols;
    let mut pivot_row = vec![usize::MAX; ncols];
    let mut basis: Vec<SparseRow<F>> = Vec::new();
    let mut acc = Dense::new(ncols);

    // Rows with a smaller leading column first keeps cascades short.
    let mut order: Vec<usize> = (0..matrix.rows.len()).collect();
    order.sort_by_key(|&i| matrix.rows[i].first().map_or(u32::MAX, |e| e.0));

    for i in order {
        let row = &matrix.rows[i];
        if row.is_empty() {
            continue;
        }
        acc.scatter(row);
        // Subtracting a pivot row only changes columns right of its pivot, so
        // one left-to-right pass sees every entry in its final state.
        for (c, &p) in pivot_row.iter().enumerate().skip(row[0].0 as usize) {
            if acc.vals[c].is_zero() {
                continue;
            }
            if p == usize::MAX {
                break;
            }
            let coeff = acc.vals[c].clone();
            acc.sub_scaled(&coeff, &basis[p]);
        }
        let reduced = acc.gather();
        if let Some((lead, lead_val)) = reduced.first().cloned() {
            let inv = lead_val.inv();
            let normalized: SparseRow<F> =
                reduced.into_iter().map(|(c, v)| (c, if c == lead { F::one() } else { v.mul(&inv) })).collect();
            pivot_row[lead as usize] = basis.len();
            basis.push(normalized);
        }
    }

    // Back substitution, rightmost pivot first: rows already processed have
    // zeros in every other pivot column.
    let mut by_pivot: Vec<usize> = (0..basis.len()).collect();
    by_pivot.sort_by_key(|&i| std::cmp::Reverse(basis[i][0].0));
    for &i in &by_pivot {
        let lead = basis[i][0].0;
        let needs = basis[i][1..].iter().any(|(c, _)| pivot_row[*c as usize] != usize::MAX);
        if !needs {
            continue;
        }
        let row = std::mem::take(&mut basis[i]);
        acc.scatter(&row);
        for (c, _) in &row[1..] {
            let p = pivot_row[*c as usize];
            if p != usize::MAX {
                let coeff = acc.vals[*c as usize].clone();
                if !coeff.is_zero() {
                    acc.sub_scaled(&coeff, &basis[p]);
                }
            }
        }
        let reduced = acc.gather();
        debug_assert_eq!(reduced[0].0, lead);
        basis[i] = reduced;
    }

    basis.sort_by_key(|r| r[0].0);
    Echelon { ncols, rows: basis }
}

/// Below this many columns plain rational elimination is faster than
/// working modulo primes.
const MULTIMODULAR_MIN_COLUMNS: usize = 100;

/// Exact RREF over the rationals, choosing the elimination strategy by size.
pub fn rref_exact(matrix: &SparseMatrix<Rational>) -> Echelon<Rational> {
    if matrix.ncols < MULTIMODULAR_MIN_COLUMNS {
        rref(matrix)
    } else {
        rref_multimodular(matrix).0
    }
}
