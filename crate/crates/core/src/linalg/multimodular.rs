//! Exact RREF over `Q` from images modulo many primes.
//!
//! The candidate `R` is rebuilt from residues by CRT and rational
//! reconstruction, then certified: every row of `A` must reduce to zero
//! against `R`. That gives `rowspace(A) <= rowspace(R)`; since
//! `rank_Q(A) >= rank_p(A) = rank(R)` the two row spaces are equal, and `R`,
//! being reduced by construction, is the RREF of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modular::{primes_below_2_31, rational_reconstruction, reduce_matrix, rref_mod, ModEchelon, Modulus};
use super::{Echelon, SparseMatrix};
use crate::rational::Rational;

/// Statistics of a multi-modular run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModularStats {
    pub primes_used: usize,
    pub primes_discarded: usize,
    pub certification_attempts: usize,
}

/// Residues of the free entries of every row, combined by CRT.
struct Accumulator {
    pivots: Vec<u32>,
    /// Free columns right of each pivot, per row.
    slots: Vec<Vec<u32>>,
    values: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

impl Accumulator {
    fn new(image: &ModEchelon) -> Self {
        let pivots = image.pivots();
        let mut is_pivot = vec![false; image.ncols];
        for &c in &pivots {
            is_pivot[c as usize] = true;
        }
        let free: Vec<u32> = (0..image.ncols as u32).filter(|&c| !is_pivot[c as usize]).collect();
        let slots: Vec<Vec<u32>> =
            pivots.iter().map(|&pc| free.iter().copied().filter(|&f| f > pc).collect()).collect();
        let values = slots.iter().map(|s| vec![BigInt::zero(); s.len()]).collect();
        Accumulator { pivots, slots, values, modulus: BigInt::one() }
    }

    /// Garner step: `x = x + M * ((r - x) / M mod p)`.
    fn absorb(&mut self, image: &ModEchelon, m: &Modulus) {
        let p = m.value();
        let m_inv = m.inv(m.of_bigint(&self.modulus));
        for (i, row) in image.rows.iter().enumerate() {
            let mut dense = vec![0u64; self.slots[i].len()];
            let mut k = 0;
            for &(c, v) in &row[1..] {
                while self.slots[i][k] != c {
                    k += 1;
                }
                dense[k] = v as u64;
            }
            for (x, r) in self.values[i].iter_mut().zip(dense) {
                let x_mod = m.of_bigint(x);
                let delta = m.mul(m.reduce(r + p - x_mod), m_inv);
                if delta != 0 {
                    *x += &self.modulus * delta;
                }
            }
        }
        self.modulus *= p;
    }

    /// Reconstructs every entry, or `None` if some residue has no small
    /// rational preimage yet.
    fn reconstruct(&self, ncols: usize) -> Option<Echelon<Rational>> {
        let mut rows = Vec::with_capacity(self.pivots.len());
        for (i, &pc) in self.pivots.iter().enumerate() {
            let mut row = vec![(pc, Rational::one())];
            for (&c, u) in self.slots[i].iter().zip(&self.values[i]) {
                let x = rational_reconstruction(u, &self.modulus)?;
                if !x.is_zero() {
                    row.push((c, x));
                }
            }
            rows.push(row);
        }
        Some(Echelon { ncols, rows })
    }
}

/// Does every row of `a` lie in the row space of the reduced `r`?
///
/// Row `x` of `A` lies in it iff `x = sum_j x[pivot_j] R_j`, and only the
/// free columns need checking. Each check is done over the integers after
/// clearing the denominators of the free column.
pub fn certify(a: &SparseMatrix<Rational>, r: &Echelon<Rational>) -> bool {
    let ncols = a.ncols;
    let mut row_of_pivot = vec![usize::MAX; ncols];
    for (i, row) in r.rows.iter().enumerate() {
        row_of_pivot[row[0].0 as usize] = i;
    }
    // Per free column f: common denominator D_f and integer numerators.
    let mut denom = vec![BigInt::one(); ncols];
    for row in &r.rows {
        for (c, x) in &row[1..] {
            let d = &mut denom[*c as usize];
            *d = d.lcm(x.denom());
        }
    }
    let int_rows: Vec<Vec<(u32, BigInt)>> = r
        .rows
        .iter()
        .map(|row| row[1..].iter().map(|(c, x)| (*c, x.numer() * (&denom[*c as usize] / x.denom()))).collect())
        .collect();

    let mut acc: Vec<BigInt> = vec![BigInt::zero(); ncols];
    let mut touched: Vec<u32> = Vec::new();
    for row in &a.rows {
        // Scale the row to integers.
        let l = row.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
        for (c, x) in row {
            let xi = x.numer() * (&l / x.denom());
            let c = *c as usize;
            match row_of_pivot[c] {
                usize::MAX => {
                    // Free column: contributes -D_f * x_f.
                    if acc[c].is_zero() {
                        touched.push(c as u32);
                    }
                    acc[c] -= &denom[c] * &xi;
                }
                j => {
                    for (f, y) in &int_rows[j] {
                        let f = *f as usize;
                        if acc[f].is_zero() {
                            touched.push(f as u32);
                        }
                        acc[f] += &xi * y;
                    }
                }
            }
        }
        let mut ok = true;
        for &c in &touched {
            if !acc[c as usize].is_zero() {
                ok = false;
            }
            acc[c as usize].set_zero();
        }
        touched.clear();
        if !ok {
            return false;
        }
    }
    true
}

/// Multi-modular RREF. Returns the certified result and run statistics.
pub fn rref_multimodular(a: &SparseMatrix<Rational>) -> (Echelon<Rational>, ModularStats) {
    let mut stats = ModularStats::default();
    let mut acc: Option<Accumulator> = None;
    let mut pending: Option<Echelon<Rational>> = None;

    for prime in primes_below_2_31() {
        let m = Modulus::new(prime);
        let Some(rows) = reduce_matrix(a, &m) else {
            stats.primes_discarded += 1;
            continue;
        };
        let image = rref_mod(a.ncols, &rows, &m);

        // A prime that loses rank, or shifts a pivot right, is unlucky.
        // A better image than the accumulated ones discards those instead.
        if let Some(current) = &acc {
            match compare_pivots(&image.pivots(), &current.pivots) {
                std::cmp::Ordering::Less => {
                    stats.primes_discarded += 1;
                    continue;
                }
                std::cmp::Ordering::Greater => {
                    stats.primes_discarded += stats.primes_used;
                    stats.primes_used = 0;
                    acc = None;
                    pending = None;
                }
                std::cmp::Ordering::Equal => {}
            }
        }

        // Early termination: the previous reconstruction must predict this
        // image before it is worth certifying.
        if let Some(candidate) = pending.take() {
            if predicts(&candidate, &image, &m) {
                stats.certification_attempts += 1;
                if certify(a, &candidate) {
                    stats.primes_used += 1;
                    return (candidate, stats);
                }
            }
        }

        let state = acc.get_or_insert_with(|| Accumulator::new(&image));
        state.absorb(&image, &m);
        stats.primes_used += 1;
        pending = state.reconstruct(a.ncols);
    }
    unreachable!("ran out of 31-bit primes")
}

/// Orders pivot lists by quality: more pivots is better; with equal counts
/// the list that is elementwise further left is better.
fn compare_pivots(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| b.cmp(a))
}

fn predicts(candidate: &Echelon<Rational>, image: &ModEchelon, m: &Modulus) -> bool {
    if candidate.rows.len() != image.rows.len() {
        return false;
    }
    candidate.rows.iter().zip(&image.rows).all(|(r, s)| {
        let mapped: Option<Vec<(u32, u32)>> = r
            .iter()
            .filter_map(|(c, x)| match m.of_rational(x) {
                Some(0) => None,
                Some(v) => Some(Some((*c, v as u32))),
                None => Some(None),
            })
            .collect();
        mapped.as_deref() == Some(s.as_slice())
    })
}
