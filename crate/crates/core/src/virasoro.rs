//! The Virasoro algebra acting on Verma modules `M(c, h)` in the PBW basis.
//!
//! A basis monomial `L_{-l1} ... L_{-lm} |h>` is keyed by the partition
//! `[l1, ..., lm]`. [`Verma::apply_mode`] computes `L_k v` and straightens the
//! result back into PBW order using
//! `[L_m, L_n] = (m - n) L_{m+n} + delta_{m,-n} (m^3 - m)/12 c`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{rref, SparseMatrix};
use crate::partitions::{partitions_of, Partition};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralCharge(pub Rational);

impl CentralCharge {
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// Highest weight `(c, h)` of a Verma module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VermaSpec {
    pub c: CentralCharge,
    pub h: Rational,
}

impl VermaSpec {
    pub fn new(c: Rational, h: Rational) -> Self {
        VermaSpec { c: CentralCharge(c), h }
    }
}

impl fmt::Display for VermaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {})", self.c.0, self.h)
    }
}

/// A vector of `M(c, h)_{h + weight}` in the PBW basis.
///
/// Weights may be negative only for the zero vector (the result of lowering
/// past the highest weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWVector {
    spec: VermaSpec,
    weight: i64,
    terms: BTreeMap<Partition, Rational>,
}

impl PBWVector {
    pub fn zero(spec: VermaSpec, weight: i64) -> Self {
        PBWVector { spec, weight, terms: BTreeMap::new() }
    }

    /// The highest-weight vector `|h>`.
    pub fn vacuum(spec: VermaSpec) -> Self {
        Self::monomial(spec, Partition::empty())
    }

    pub fn monomial(spec: VermaSpec, lambda: Partition) -> Self {
        let weight = lambda.weight() as i64;
        let mut terms = BTreeMap::new();
        terms.insert(lambda, Rational::one());
        PBWVector { spec, weight, terms }
    }

    /// Builds a vector from `(partition, coefficient)` pairs; every partition
    /// must have the given weight. Repeated keys are summed.
    pub fn from_terms(
        spec: VermaSpec,
        weight: i64,
        terms: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Result<Self> {
        let mut v = Self::zero(spec, weight);
        for (lambda, coeff) in terms {
            if lambda.weight() as i64 != weight {
                return Err(Error::WeightMismatch { left: weight as u32, right: lambda.weight() });
            }
            v.add_term(lambda, &coeff);
        }
        Ok(v)
    }

    pub fn spec(&self) -> &VermaSpec {
        &self.spec
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms keyed in lexicographic partition order.
    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    /// Terms sorted descending by the monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &Rational)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| b.0.compare_pbw(a.0));
        out
    }

    /// The largest monomial in the support.
    pub fn leading_monomial(&self) -> Option<&Partition> {
        self.terms.keys().max_by(|a, b| a.compare_pbw(b))
    }

    fn add_term(&mut self, lambda: Partition, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &PBWVector) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { left: self.weight as u32, right: other.weight as u32 });
        }
        Ok(())
    }

    pub fn add(&self, other: &PBWVector) -> Result<PBWVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (lambda, c) in &other.terms {
            out.add_term(lambda.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PBWVector) -> Result<PBWVector> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> PBWVector {
        if s.is_zero() {
            return PBWVector::zero(self.spec.clone(), self.weight);
        }
        PBWVector {
            spec: self.spec.clone(),
            weight: self.weight,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Scaled so that the leading monomial has coefficient one.
    pub fn normalized(&self) -> PBWVector {
        match self.leading_monomial() {
            Some(lead) => self.scale(&self.terms[lead].recip()),
            None => self.clone(),
        }
    }

    /// If `self = s * other` for a nonzero scalar `s`, returns `s`.
    pub fn proportionality(&self, other: &PBWVector) -> Option<Rational> {
        if self.spec != other.spec || self.weight != other.weight || self.terms.len() != other.terms.len() {
            return None;
        }
        let (lambda, c) = self.terms.iter().next()?;
        let s = c / other.terms.get(lambda)?;
        (other.scale(&s) == *self).then_some(s)
    }

    /// Keeps only the monomials of maximal length: the symbol of the vector
    /// in the associated graded of the length filtration.
    pub fn length_leading_part(&self) -> PBWVector {
        let Some(max_len) = self.terms.keys().map(Partition::length).max() else {
            return self.clone();
        };
        PBWVector {
            spec: self.spec.clone(),
            weight: self.weight,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.length() == max_len)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Drops every monomial with a part equal to one (projection onto the
    /// quotient by the submodule generated by `L_{-1}|h>`).
    pub fn without_ones(&self) -> PBWVector {
        PBWVector {
            spec: self.spec.clone(),
            weight: self.weight,
            terms: self.terms.iter().filter(|(k, _)| k.ones() == 0).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }
}

impl fmt::Display for PBWVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lambda, c)) in self.sorted_terms().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{}", monomial_name(lambda))?;
        }
        Ok(())
    }
}

/// `L-2L-2L-1^2` style rendering of a monomial; the empty one is `|h>`.
pub fn monomial_name(lambda: &Partition) -> String {
    if lambda.is_empty() {
        return "|h>".to_string();
    }
    let mut out = String::new();
    let parts = lambda.parts();
    let mut i = 0;
    while i < parts.len() {
        let v = parts[i];
        let run = parts[i..].iter().take_while(|&&p| p == v).count();
        // Powers are only abbreviated for L_{-1}, matching L_{-2}L_{-2} style.
        if v == 1 && run > 1 {
            out.push_str(&format!("L-1^{run}"));
        } else {
            for _ in 0..run {
                out.push_str(&format!("L-{v}"));
            }
        }
        i += run;
    }
    out
}

impl Serialize for PBWVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(Vec<u32>, String)> =
            self.sorted_terms().into_iter().map(|(k, v)| (k.parts().to_vec(), format_rational(v))).collect();
        let mut s = serializer.serialize_struct("PBWVector", 4)?;
        s.serialize_field("h", &format_rational(&self.spec.h))?;
        s.serialize_field("c", &format_rational(&self.spec.c.0))?;
        s.serialize_field("weight", &self.weight)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

type Terms = Arc<Vec<(Partition, Rational)>>;

/// The Virasoro action on `M(c, h)`, with a memo of `L_k` on basis monomials.
///
/// The memo is shared behind a lock, so one `Verma` can serve several
/// threads; it never changes results.
pub struct Verma {
    spec: VermaSpec,
    memo: Option<RwLock<HashMap<(i32, Partition), Terms>>>,
}

impl Verma {
    pub fn new(spec: VermaSpec) -> Self {
        Verma { spec, memo: Some(RwLock::new(HashMap::new())) }
    }

    /// Same action, recomputed from scratch every time.
    pub fn without_memo(spec: VermaSpec) -> Self {
        Verma { spec, memo: None }
    }

    pub fn spec(&self) -> &VermaSpec {
        &self.spec
    }

    /// `L_k` applied to the basis monomial `lambda`, as `(partition, coefficient)`
    /// pairs in lexicographic partition order.
    pub fn mode_on_monomial(&self, k: i32, lambda: &Partition) -> Terms {
        if let Some(memo) = &self.memo {
            if let Some(hit) = memo.read().unwrap().get(&(k, lambda.clone())) {
                return hit.clone();
            }
        }
        let computed = Arc::new(self.straighten(k, lambda));
        if let Some(memo) = &self.memo {
            memo.write().unwrap().insert((k, lambda.clone()), computed.clone());
        }
        computed
    }

    fn straighten(&self, k: i32, lambda: &Partition) -> Vec<(Partition, Rational)> {
        let weight = lambda.weight() as i64;
        if k > 0 && k as i64 > weight {
            return Vec::new();
        }
        if k == 0 {
            return vec![(lambda.clone(), &self.spec.h + int(weight))];
        }
        let Some(&first) = lambda.parts().first() else {
            // Highest-weight vector: positive modes kill it.
            return if k < 0 {
                vec![(Partition::from_sorted_unchecked(vec![(-k) as u32]), Rational::one())]
            } else {
                Vec::new()
            };
        };
        if k < 0 && (-k) as u32 >= first {
            let mut parts = Vec::with_capacity(lambda.num_parts() + 1);
            parts.push((-k) as u32);
            parts.extend_from_slice(lambda.parts());
            return vec![(Partition::from_sorted_unchecked(parts), Rational::one())];
        }

        // L_k L_{-first} rest = L_{-first} L_k rest + [L_k, L_{-first}] rest
        let rest = lambda.tail();
        let first = first as i32;
        let mut acc: HashMap<Partition, Rational> = HashMap::new();
        for (eta, a) in self.mode_on_monomial(k, &rest).iter() {
            for (zeta, b) in self.mode_on_monomial(-first, eta).iter() {
                *acc.entry(zeta.clone()).or_insert_with(Rational::zero) += a * b;
            }
        }
        let bracket = k + first;
        if bracket != 0 {
            let factor = int(bracket as i64);
            for (eta, a) in self.mode_on_monomial(k - first, &rest).iter() {
                *acc.entry(eta.clone()).or_insert_with(Rational::zero) += &factor * a;
            }
        }
        if k == first {
            let k3 = BigInt::from(k).pow(3) - BigInt::from(k);
            let central = Rational::new(k3, BigInt::from(12)) * &self.spec.c.0;
            *acc.entry(rest).or_insert_with(Rational::zero) += central;
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `L_k v` in PBW normal form, at weight `v.weight() - k`.
    pub fn apply_mode(&self, k: i32, v: &PBWVector) -> PBWVector {
        debug_assert_eq!(v.spec, self.spec);
        let mut acc: HashMap<Partition, Rational> = HashMap::new();
        for (lambda, a) in &v.terms {
            for (eta, b) in self.mode_on_monomial(k, lambda).iter() {
                *acc.entry(eta.clone()).or_insert_with(Rational::zero) += a * b;
            }
        }
        PBWVector {
            spec: v.spec.clone(),
            weight: v.weight - k as i64,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `L_mu v = L_{-mu1} ... L_{-mum} v`, rightmost factor applied first.
    pub fn apply_word(&self, mu: &Partition, v: &PBWVector) -> PBWVector {
        mu.parts().iter().rev().fold(v.clone(), |acc, &part| self.apply_mode(-(part as i32), &acc))
    }

    /// A basis of the singular vectors of `M(c, h)_{h+n}`: the joint kernel of
    /// `L_1` and `L_2` (which generate all positive modes).
    ///
    /// The basis is the reduced echelon form of the kernel in the monomial
    /// order, so each vector has leading coefficient one and the leading
    /// monomials are distinct.
    pub fn singular_vectors(&self, n: u32) -> Vec<PBWVector> {
        let columns = weight_basis(n);
        let lower1 = index_of(&weight_basis(n.saturating_sub(1)));
        let lower2 = index_of(&weight_basis(n.saturating_sub(2)));
        let offset = lower1.len();

        // Column j holds the coordinates of L_1 e_j and L_2 e_j.
        let mut constraint_cols: Vec<Vec<(u32, Rational)>> = Vec::with_capacity(columns.len());
        for lambda in &columns {
            let mut col = Vec::new();
            if n >= 1 {
                for (eta, a) in self.mode_on_monomial(1, lambda).iter() {
                    col.push((lower1[eta] as u32, a.clone()));
                }
            }
            if n >= 2 {
                for (eta, a) in self.mode_on_monomial(2, lambda).iter() {
                    col.push(((offset + lower2[eta]) as u32, a.clone()));
                }
            }
            constraint_cols.push(col);
        }
        let nrows = offset + if n >= 2 { lower2.len() } else { 0 };
        let mut rows: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); nrows];
        for (j, col) in constraint_cols.into_iter().enumerate() {
            for (r, a) in col {
                rows[r as usize].push((j as u32, a));
            }
        }
        let mut matrix = SparseMatrix::new(columns.len());
        for row in rows {
            matrix.push_row(row);
        }
        let kernel = rref(&matrix).nullspace();

        let mut kernel_matrix = SparseMatrix::new(columns.len());
        for v in kernel {
            kernel_matrix.push_row(v);
        }
        rref(&kernel_matrix)
            .rows
            .into_iter()
            .map(|row| PBWVector {
                spec: self.spec.clone(),
                weight: n as i64,
                terms: row.into_iter().map(|(c, a)| (columns[c as usize].clone(), a)).collect(),
            })
            .collect()
    }

    /// Is `v` annihilated by `L_1` and `L_2`? Returns the first mode that
    /// does not kill it.
    pub fn check_singular(&self, v: &PBWVector) -> std::result::Result<(), i32> {
        for k in [1, 2] {
            if !self.apply_mode(k, v).is_zero() {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Number of cached `(mode, monomial)` results.
    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.read().unwrap().len())
    }
}

/// The PBW basis of the weight-`n` space, descending in the monomial order.
pub fn weight_basis(n: u32) -> Vec<Partition> {
    partitions_of(n)
}

pub(crate) fn index_of(basis: &[Partition]) -> HashMap<Partition, usize> {
    basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn spec(c: Rational, h: Rational) -> VermaSpec {
        VermaSpec::new(c, h)
    }

    fn vector(spec: &VermaSpec, terms: &[(&[u32], Rational)]) -> PBWVector {
        let w = terms[0].0.iter().sum::<u32>() as i64;
        PBWVector::from_terms(spec.clone(), w, terms.iter().map(|(k, v)| (p(k), v.clone()))).unwrap()
    }

    #[test]
    fn l1_on_l_minus_1() {
        let s = spec(rat(7, 3), rat(5, 2));
        let m = Verma::new(s.clone());
        let v = m.apply_mode(1, &PBWVector::monomial(s.clone(), p(&[1])));
        assert_eq!(v, PBWVector::vacuum(s).scale(&rat(5, 1)));
    }

    #[test]
    fn l2_on_l_minus_2() {
        // [L_2, L_{-2}] = 4 L_0 + c/2
        let s = spec(rat(1, 2), rat(1, 16));
        let m = Verma::new(s.clone());
        let v = m.apply_mode(2, &PBWVector::monomial(s.clone(), p(&[2])));
        assert_eq!(v.coefficient(&Partition::empty()), rat(4, 16) + rat(1, 4));
        assert_eq!(v.weight(), 0);
    }

    #[test]
    fn lowering_past_highest_weight_is_zero() {
        let s = spec(rat(1, 2), rat(1, 2));
        let m = Verma::new(s.clone());
        let v = m.apply_mode(3, &PBWVector::monomial(s, p(&[1, 1])));
        assert!(v.is_zero());
        assert_eq!(v.weight(), -1);
    }

    #[test]
    fn apply_word_basics() {
        let s = spec(rat(1, 2), rat(1, 2));
        let m = Verma::new(s.clone());
        let vac = PBWVector::vacuum(s.clone());
        assert_eq!(m.apply_word(&Partition::empty(), &vac), vac);
        assert_eq!(m.apply_word(&p(&[2]), &vac), PBWVector::monomial(s.clone(), p(&[2])));
        let l2 = PBWVector::monomial(s.clone(), p(&[2]));
        assert_eq!(m.apply_word(&p(&[2]), &l2), PBWVector::monomial(s.clone(), p(&[2, 2])));
        // L_{-1} L_{-2} = L_{-2} L_{-1} + L_{-3}
        let l1l2 = m.apply_word(&p(&[1]), &l2);
        assert_eq!(l1l2, vector(&s, &[(&[2, 1], rat(1, 1)), (&[3], rat(1, 1))]));
    }

    #[test]
    fn known_singular_vectors_at_half() {
        let s = spec(rat(1, 2), rat(1, 2));
        let m = Verma::new(s.clone());
        let u2 = vector(&s, &[(&[1, 1], rat(1, 1)), (&[2], rat(-4, 3))]);
        let u3 = vector(&s, &[(&[1, 1, 1], rat(1, 1)), (&[2, 1], rat(-3, 1)), (&[3], rat(3, 4))]);
        assert_eq!(m.check_singular(&u2), Ok(()));
        assert_eq!(m.check_singular(&u3), Ok(()));
        assert!(m.apply_mode(1, &u2).is_zero());
    }

    #[test]
    fn singular_solver_levels_one_and_two() {
        let s = spec(rat(1, 2), rat(1, 2));
        let m = Verma::new(s.clone());
        assert!(m.singular_vectors(1).is_empty());
        let level2 = m.singular_vectors(2);
        assert_eq!(level2.len(), 1);
        let u2 = vector(&s, &[(&[1, 1], rat(1, 1)), (&[2], rat(-4, 3))]);
        assert_eq!(level2[0].proportionality(&u2), Some(rat(-3, 4)));
        assert_eq!(level2[0].leading_monomial(), Some(&p(&[2])));
    }

    #[test]
    fn memo_does_not_change_results() {
        let s = spec(rat(1, 2), rat(1, 16));
        let with = Verma::new(s.clone());
        let without = Verma::without_memo(s.clone());
        let vac = PBWVector::vacuum(s);
        for n in 0..=7 {
            for mu in weight_basis(n) {
                assert_eq!(with.apply_word(&mu, &vac), without.apply_word(&mu, &vac));
            }
        }
        assert!(with.memo_len() > 0);
        assert_eq!(without.memo_len(), 0);
    }

    #[test]
    fn vector_arithmetic_checks_weights() {
        let s = spec(rat(1, 2), rat(0, 1));
        let a = PBWVector::monomial(s.clone(), p(&[2]));
        let b = PBWVector::monomial(s.clone(), p(&[3]));
        assert!(matches!(a.add(&b), Err(Error::WeightMismatch { .. })));
        assert!(a.sub(&a).unwrap().is_zero());
        assert!(PBWVector::from_terms(s, 2, [(p(&[3]), rat(1, 1))]).is_err());
    }

    #[test]
    fn renders_monomials() {
        assert_eq!(monomial_name(&p(&[2, 2, 1, 1])), "L-2L-2L-1^2");
        let s = spec(rat(1, 2), rat(1, 2));
        let v = vector(&s, &[(&[2], rat(1, 1)), (&[1, 1], rat(-3, 4))]);
        assert_eq!(v.to_string(), "L-2 - 3/4*L-1^2");
    }
}
