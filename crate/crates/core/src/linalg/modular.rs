//! Reduced row echelon form over prime fields `F_p`, `p < 2^31`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::SparseMatrix;
use crate::rational::Rational;

/// A prime modulus with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug)]
pub struct Modulus {
    p: u64,
    barrett: u64,
}

impl Modulus {
    pub fn new(p: u32) -> Self {
        assert!((3..1 << 31).contains(&p), "modulus must be an odd prime below 2^31");
        Modulus { p: p as u64, barrett: u64::MAX / p as u64 }
    }

    pub fn value(&self) -> u64 {
        self.p
    }

    /// `a mod p` for any `a < 2^64`.
    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        let q = ((a as u128 * self.barrett as u128) >> 64) as u64;
        let r = a - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn of_bigint(&self, n: &BigInt) -> u64 {
        let r = (n.abs() % self.p).to_u64().expect("residue fits");
        if n.is_negative() && r != 0 {
            self.p - r
        } else {
            r
        }
    }

    /// The image of `x`, or `None` when `p` divides its denominator.
    pub fn of_rational(&self, x: &Rational) -> Option<u64> {
        let den = self.of_bigint(x.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.of_bigint(x.numer()), self.inv(den)))
    }
}

/// Primes below `2^31`, largest first.
pub fn primes_below_2_31() -> impl Iterator<Item = u32> {
    ((1u32 << 30)..(1u32 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u32) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Reduced echelon form over `F_p`, rows sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModEchelon {
    pub ncols: usize,
    pub rows: Vec<Vec<(u32, u32)>>,
}

impl ModEchelon {
    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r[0].0).collect()
    }
}

/// Reduces a rational matrix modulo `p`; `None` if `p` divides a denominator.
pub fn reduce_matrix(matrix: &SparseMatrix<Rational>, m: &Modulus) -> Option<Vec<Vec<(u32, u32)>>> {
    matrix
        .rows
        .iter()
        .map(|row| {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let r = m.of_rational(v)?;
                if r != 0 {
                    out.push((*c, r as u32));
                }
            }
            Some(out)
        })
        .collect()
}

/// Canonical reduced row echelon form over `F_p`; same strategy as the
/// rational [`super::rref`], on a dense `u64` scratch row.
pub fn rref_mod(ncols: usize, rows: &[Vec<(u32, u32)>], m: &Modulus) -> ModEchelon {
    let p = m.value();
    let mut pivot_row = vec![u32::MAX; ncols];
    let mut basis: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut acc = vec![0u64; ncols];

    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    order.sort_by_key(|&i| rows[i][0].0);

    for i in order {
        let row = &rows[i];
        for &(c, v) in row {
            acc[c as usize] = v as u64;
        }
        let start = row[0].0 as usize;
        let mut lead = None;
        for c in start..ncols {
            let coeff = acc[c];
            if coeff == 0 {
                continue;
            }
            let b = pivot_row[c];
            if b == u32::MAX {
                lead = Some(c);
                break;
            }
            let neg = p - coeff;
            for &(col, v) in &basis[b as usize] {
                let slot = &mut acc[col as usize];
                *slot = m.reduce(*slot + neg * v as u64);
            }
        }
        let Some(lead) = lead else {
            continue;
        };
        let inv = m.inv(acc[lead]);
        let mut out = Vec::new();
        for (c, slot) in acc.iter_mut().enumerate().skip(lead) {
            if *slot != 0 {
                out.push((c as u32, m.mul(*slot, inv) as u32));
                *slot = 0;
            }
        }
        pivot_row[lead] = basis.len() as u32;
        basis.push(out);
    }

    // Back substitution from the rightmost pivot. A finished row is nonzero
    // only on its pivot and on free columns, so clearing one pivot column
    // never disturbs another.
    let mut by_pivot: Vec<usize> = (0..basis.len()).collect();
    by_pivot.sort_by_key(|&i| std::cmp::Reverse(basis[i][0].0));
    for &i in &by_pivot {
        if !basis[i][1..].iter().any(|(c, _)| pivot_row[*c as usize] != u32::MAX) {
            continue;
        }
        let row = std::mem::take(&mut basis[i]);
        let lead = row[0].0 as usize;
        for &(c, v) in &row {
            acc[c as usize] = v as u64;
        }
        for c in lead + 1..ncols {
            let coeff = acc[c];
            if coeff == 0 {
                continue;
            }
            let b = pivot_row[c];
            if b == u32::MAX {
                continue;
            }
            let neg = p - coeff;
            for &(col, v) in &basis[b as usize] {
                let slot = &mut acc[col as usize];
                *slot = m.reduce(*slot + neg * v as u64);
            }
        }
        let mut out = Vec::new();
        for (c, slot) in acc.iter_mut().enumerate().skip(lead) {
            if *slot != 0 {
                out.push((c as u32, *slot as u32));
                *slot = 0;
            }
        }
        basis[i] = out;
    }

    basis.sort_by_key(|r| r[0].0);
    ModEchelon { ncols, rows: basis }
}

/// Rational reconstruction: the unique `a/b` with `|a|, b <= sqrt(M/2)` and
/// `a = u b (mod M)`, if it exists.
pub fn rational_reconstruction(u: &BigInt, modulus: &BigInt) -> Option<Rational> {
    if u.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (modulus >> 1u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let x = Rational::new(r1, t1);
    // Rational::new cancels; a common factor with the modulus means failure.
    let den_mod = x.denom() % modulus;
    if den_mod.is_zero() {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn barrett_matches_remainder() {
        let m = Modulus::new(2_147_483_629);
        for a in [0u64, 1, 2_147_483_628, 2_147_483_629, u64::MAX, 1 << 62, 123_456_789_012_345] {
            assert_eq!(m.reduce(a), a % 2_147_483_629);
        }
        assert_eq!(m.mul(m.inv(12345), 12345), 1);
    }

    #[test]
    fn first_primes() {
        let ps: Vec<u32> = primes_below_2_31().take(3).collect();
        assert_eq!(ps, vec![2_147_483_647, 2_147_483_629, 2_147_483_587]);
    }

    #[test]
    fn reconstructs_small_fractions() {
        let modulus = BigInt::from(2_147_483_647u64) * BigInt::from(2_147_483_629u64);
        for x in [rat(-3, 16), rat(600, 49), rat(0, 1), rat(-1, 1), rat(93, 64)] {
            let m = Modulus::new(2_147_483_647);
            let m2 = Modulus::new(2_147_483_629);
            let r1 = BigInt::from(m.of_rational(&x).unwrap());
            let r2 = BigInt::from(m2.of_rational(&x).unwrap());
            // CRT by brute combination
            let p1 = BigInt::from(2_147_483_647u64);
            let p2 = BigInt::from(2_147_483_629u64);
            let inv = BigInt::from(m2.inv(m2.of_bigint(&p1)));
            let u = (&r1 + &p1 * (((&r2 - &r1) % &p2 + &p2) * inv % &p2)) % &modulus;
            assert_eq!(rational_reconstruction(&u, &modulus), Some(x));
        }
    }
}
