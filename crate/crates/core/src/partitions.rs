//! Partitions as PBW monomials: length and weight, contiguous containment,
//! forbidden-pattern sets, tail-constrained subsets, divisibility of
//! free-module monomials and the monomial order used for leading terms.
//!
//! A partition `[l1, ..., lm]` stands for `L_{-l1} ... L_{-lm} |h>`. Parts
//! equal to one are the powers of `L_{-1}` (the free-module position), parts
//! of size at least two form the power product in `C[L_{-2}, L_{-3}, ...]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::label::ModuleLabel;

/// A weakly decreasing list of positive integers, possibly empty.
///
/// The derived `Ord` is plain lexicographic order on the parts and is only
/// meant for keyed collections. The monomial order is [`Partition::compare_pbw`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        let ok = parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::ParsePartition(format!("{parts:?}")))
        }
    }

    /// Sorts the parts; zeros are dropped.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    /// Number of parts equal to one (the exponent of `L_{-1}`).
    pub fn ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&p| p == 1).count()
    }

    /// Parts of size at least two (the power product).
    pub fn big_parts(&self) -> &[u32] {
        &self.0[..self.0.len() - self.ones()]
    }

    /// Filtration degree `2 * #{parts >= 2} + #{parts == 1}`.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|&p| if p >= 2 { 2 } else { 1 }).sum()
    }

    /// Conformal weight: the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True iff `eta` occurs as a contiguous window of `self`.
    pub fn contains(&self, eta: &Partition) -> bool {
        eta.is_empty() || self.0.windows(eta.0.len()).any(|w| w == eta.parts())
    }

    /// `u_self | u_other` in the free module: same power of `L_{-1}`, and the
    /// power product of `self` divides that of `other`.
    pub fn divides(&self, other: &Partition) -> bool {
        if self.ones() != other.ones() {
            return false;
        }
        // Multiset inclusion of two descending lists.
        let mut theirs = other.big_parts().iter().peekable();
        'outer: for &p in self.big_parts() {
            while let Some(&&q) = theirs.peek() {
                theirs.next();
                match q.cmp(&p) {
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => continue,
                    Ordering::Less => return false,
                }
            }
            return false;
        }
        true
    }

    /// The monomial order: length first, then degree reverse lexicographic on
    /// the power product with `L_{-2} > L_{-3} > ...`, then position (more
    /// factors of `L_{-1}` is larger).
    pub fn compare_pbw(&self, other: &Partition) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| degrevlex(self.big_parts(), other.big_parts()))
            .then_with(|| self.ones().cmp(&other.ones()))
    }

    /// The partition with one more part `v` inserted in order.
    pub fn with_part(&self, v: u32) -> Partition {
        let mut parts = self.0.clone();
        let at = parts.iter().position(|&p| p < v).unwrap_or(parts.len());
        parts.insert(at, v);
        Partition(parts)
    }

    /// `[l1, ..., lm]` without its first part.
    pub fn tail(&self) -> Partition {
        Partition(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    /// `2+2+1` style, used for CSV headers; the empty partition is `0`.
    pub fn plus_notation(&self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
    }
}

/// Degree reverse lexicographic comparison of two power products given as
/// descending lists of variable indices (`L_{-v}` for each part `v`).
fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {}
        unequal => return unequal,
    }
    // The exponent vectors are compared from the smallest variable, i.e. the
    // largest index, which is where both descending lists start.
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (va, vb) = (a[i], b[j]);
        if va != vb {
            // The larger index occurs only on one side, whose exponent there
            // is positive: that side is smaller.
            return if va > vb { Ordering::Less } else { Ordering::Greater };
        }
        let ca = a[i..].iter().take_while(|&&p| p == va).count();
        let cb = b[j..].iter().take_while(|&&p| p == vb).count();
        if ca != cb {
            return cb.cmp(&ca);
        }
        i += ca;
        j += cb;
    }
    Ordering::Equal
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Parses `6,5,3,1`, `[6, 5, 3, 1]` or an empty string / `[]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParsePartition(s.to_string());
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts =
            body.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| err())).collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|_| err())
    }
}

/// All partitions of `n`, sorted descending by [`Partition::compare_pbw`].
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_partitions(n, n, &mut current, &mut out);
    out.sort_by(|a, b| b.compare_pbw(a));
    out
}

fn gen_partitions(rest: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        current.push(p);
        gen_partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

/// One infinite family `[r + o1, ..., r + ok]`, `r >= min_r`, of forbidden
/// windows. Offsets are weakly decreasing and end in zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFamily {
    pub offsets: Vec<u32>,
    pub min_r: u32,
}

impl PatternFamily {
    pub fn new(offsets: &[u32], min_r: u32) -> Self {
        debug_assert!(offsets.windows(2).all(|w| w[0] >= w[1]) && offsets.last() == Some(&0));
        PatternFamily { offsets: offsets.to_vec(), min_r }
    }

    pub fn instantiate(&self, r: u32) -> Partition {
        Partition(self.offsets.iter().map(|o| o + r).collect())
    }

    /// Weight of the instance at `r`.
    pub fn weight_at(&self, r: u32) -> u32 {
        self.offsets.iter().sum::<u32>() + r * self.offsets.len() as u32
    }

    /// Does the window equal some admissible instance?
    fn matches_window(&self, window: &[u32]) -> bool {
        let r = window[window.len() - 1];
        r >= self.min_r && window.iter().zip(&self.offsets).all(|(&w, &o)| w == r + o)
    }
}

/// A set `R` of forbidden windows: finitely many ordinary families plus
/// exceptional partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub label: ModuleLabel,
    pub ordinary: Vec<PatternFamily>,
    pub exceptional: Vec<Partition>,
}

const ORDINARY_OFFSETS: [&[u32]; 11] = [
    &[0, 0, 0],
    &[1, 0, 0],
    &[1, 1, 0],
    &[2, 1, 0],
    &[2, 2, 0],
    &[2, 0, 0],
    &[3, 3, 0, 0],
    &[4, 3, 0, 0],
    &[4, 3, 1, 0],
    &[4, 4, 1, 0],
    &[6, 5, 3, 1, 0],
];

fn parts(list: &[&[u32]]) -> Vec<Partition> {
    list.iter().map(|p| Partition(p.to_vec())).collect()
}

impl PatternSet {
    /// The built-in set for one of the three modules.
    pub fn for_module(label: ModuleLabel) -> Self {
        match label {
            ModuleLabel::H0 => Self::vacuum(),
            ModuleLabel::HHalf => Self::half(),
            ModuleLabel::HSixteenth => Self::sixteenth(),
        }
    }

    /// `R^0`: ordinary families from `r = 2`, except `[r+2, r, r]` from `r = 3`.
    pub fn vacuum() -> Self {
        let ordinary =
            ORDINARY_OFFSETS.iter().map(|o| PatternFamily::new(o, if *o == [2, 0, 0] { 3 } else { 2 })).collect();
        PatternSet {
            label: ModuleLabel::H0,
            ordinary,
            exceptional: parts(&[&[5, 4, 2, 2], &[7, 6, 4, 2, 2], &[7, 7, 4, 2, 2], &[9, 8, 6, 4, 2, 2]]),
        }
    }

    /// `R^{1/2}`.
    pub fn half() -> Self {
        PatternSet {
            label: ModuleLabel::HHalf,
            ordinary: Self::ordinary_from(3),
            exceptional: parts(&[
                &[2],
                &[1, 1, 1],
                &[3, 1, 1],
                &[3, 3],
                &[4, 3, 1],
                &[4, 4, 1],
                &[5, 4, 1, 1],
                &[6, 5, 3, 1],
            ]),
        }
    }

    /// `R^{1/16}`.
    pub fn sixteenth() -> Self {
        PatternSet {
            label: ModuleLabel::HSixteenth,
            ordinary: Self::ordinary_from(3),
            exceptional: parts(&[
                &[2],
                &[1, 1, 1, 1],
                &[3, 1, 1, 1],
                &[3, 3, 1],
                &[4, 3, 1],
                &[4, 4, 1, 1],
                &[5, 4, 1, 1, 1],
                &[5, 5, 1, 1, 1],
                &[6, 5, 3, 1, 1],
                &[6, 6, 3, 1, 1],
                &[7, 6, 4, 1, 1, 1],
                &[8, 7, 5, 3, 1, 1],
            ]),
        }
    }

    fn ordinary_from(min_r: u32) -> Vec<PatternFamily> {
        ORDINARY_OFFSETS.iter().map(|o| PatternFamily::new(o, min_r)).collect()
    }

    /// Every member of `R` of weight at most `max_weight`, ordinary instances
    /// first (family by family, increasing `r`), then the exceptional ones.
    pub fn members_up_to(&self, max_weight: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for family in &self.ordinary {
            let mut r = family.min_r;
            while family.weight_at(r) <= max_weight {
                out.push(family.instantiate(r));
                r += 1;
            }
        }
        out.extend(self.exceptional.iter().filter(|p| p.weight() <= max_weight).cloned());
        out
    }

    /// True iff `lambda` contains some member of `R` (`lambda` lies in `R-bar`).
    pub fn contains_pattern(&self, lambda: &Partition) -> bool {
        if self.exceptional.iter().any(|eta| lambda.contains(eta)) {
            return true;
        }
        self.ordinary.iter().any(|family| {
            let k = family.offsets.len();
            lambda.parts().windows(k).any(|w| family.matches_window(w))
        })
    }

    /// Membership in `P`: no member of `R` is contained in `lambda`; for the
    /// vacuum module all parts must also be at least two.
    pub fn in_p(&self, lambda: &Partition) -> bool {
        if self.label == ModuleLabel::H0 && lambda.ones() > 0 {
            return false;
        }
        !self.contains_pattern(lambda)
    }

    /// `P(n)` in descending monomial order.
    pub fn enumerate(&self, n: u32) -> Vec<Partition> {
        partitions_of(n).into_iter().filter(|l| self.in_p(l)).collect()
    }

    /// `P_tp(n)`: the members of `P(n)` matching the tail pattern.
    pub fn enumerate_tail(&self, tail: &TailPattern, n: u32) -> Vec<Partition> {
        partitions_of(n).into_iter().filter(|l| tail.matches(l) && self.in_p(l)).collect()
    }

    /// Membership in `P` through divisibility: no `eta` in `R-bar` with
    /// `u_eta | u_lambda`. Agrees with [`PatternSet::in_p`] for `R^{1/2}`.
    pub fn avoids_by_divisibility(&self, lambda: &Partition) -> bool {
        if self.label == ModuleLabel::H0 && lambda.ones() > 0 {
            return false;
        }
        let ones = lambda.ones();
        // Group the power product by value to walk its sub-multisets.
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &p in lambda.big_parts() {
            match groups.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut take = vec![0usize; groups.len()];
        loop {
            let mut eta = Vec::new();
            for ((v, _), &t) in groups.iter().zip(&take) {
                eta.extend(std::iter::repeat_n(*v, t));
            }
            eta.extend(std::iter::repeat_n(1, ones));
            if self.contains_pattern(&Partition(eta)) {
                return false;
            }
            // Odometer over 0..=count for each group.
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return true;
                }
                if take[i] < groups[i].1 {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }
}

/// One constraint on a final part of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailItem {
    Eq(u32),
    Gt(u32),
}

impl TailItem {
    fn holds(self, part: u32) -> bool {
        match self {
            TailItem::Eq(v) => part == v,
            TailItem::Gt(v) => part > v,
        }
    }
}

/// Constraints on the last parts of a partition, as in the subsets
/// `P_{>2}`, `P_{5,4}`, `P_{>6,5,3}`.
///
/// With `k` items and `m` parts, a partition matches when `m >= k` and each
/// item holds for the corresponding one of the last `k` parts. A leading
/// `Gt` item bounds the part *before* the exact tail, so it is also satisfied
/// when that part does not exist (`m = k - 1`): `P_{>2}` contains the empty
/// partition and `P_{>5,4}` contains `[4]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailPattern {
    items: Vec<TailItem>,
}

impl TailPattern {
    pub fn new(items: Vec<TailItem>) -> Self {
        assert!(!items.is_empty(), "a tail pattern needs at least one item");
        TailPattern { items }
    }

    pub fn items(&self) -> &[TailItem] {
        &self.items
    }

    pub fn matches(&self, lambda: &Partition) -> bool {
        let k = self.items.len();
        let m = lambda.num_parts();
        let parts = lambda.parts();
        if m >= k {
            return self.items.iter().zip(&parts[m - k..]).all(|(item, &p)| item.holds(p));
        }
        m + 1 == k
            && matches!(self.items[0], TailItem::Gt(_))
            && self.items[1..].iter().zip(parts).all(|(item, &p)| item.holds(p))
    }
}

impl fmt::Display for TailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .items
            .iter()
            .map(|i| match i {
                TailItem::Eq(v) => v.to_string(),
                TailItem::Gt(v) => format!(">{v}"),
            })
            .collect();
        write!(f, "P_{{{}}}", items.join(","))
    }
}

/// Parses `>6,5,3` style notation.
impl FromStr for TailPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParsePartition(s.to_string());
        let items = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.strip_prefix('>') {
                    Some(v) => v.trim().parse().map(TailItem::Gt),
                    None => t.parse().map(TailItem::Eq),
                }
                .map_err(|_| err())
            })
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err(err());
        }
        Ok(TailPattern::new(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn tp(s: &str) -> TailPattern {
        s.parse().unwrap()
    }

    #[test]
    fn length_and_weight() {
        assert_eq!(Partition::empty().length(), 0);
        assert_eq!(p(&[3, 2, 1, 1]).length(), 6);
        assert_eq!(p(&[1, 1, 1, 1]).length(), 4);
        assert_eq!(Partition::empty().weight(), 0);
        assert_eq!(p(&[2, 2]).weight(), 4);
        assert_eq!(p(&[8, 7, 5, 3, 1, 1]).weight(), 25);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!("[6, 5, 3, 1]".parse::<Partition>().unwrap(), p(&[6, 5, 3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn containment() {
        assert!(p(&[3, 2, 1, 1]).contains(&p(&[2, 1])));
        assert!(!p(&[4, 3, 2]).contains(&p(&[4, 2])));
        assert!(p(&[5, 4, 2, 2]).contains(&p(&[5, 4, 2, 2])));
        assert!(p(&[1]).contains(&Partition::empty()));
        assert!(!p(&[2]).contains(&p(&[2, 2])));
    }

    #[test]
    fn divisibility() {
        assert!(p(&[4, 2]).divides(&p(&[4, 3, 2])));
        assert!(!p(&[2, 1]).divides(&p(&[2, 2])));
        assert!(!p(&[3, 3]).divides(&p(&[4, 3])));
        assert!(Partition::empty().divides(&p(&[5, 2])));
        assert!(!Partition::empty().divides(&p(&[5, 1])));
        for l in partitions_of(7) {
            assert!(l.divides(&l));
        }
    }

    #[test]
    fn weight_four_order() {
        let expected: Vec<Partition> = vec![p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1]), p(&[3, 1]), p(&[4])];
        assert_eq!(partitions_of(4), expected);
        assert_eq!(p(&[2, 1, 1]).compare_pbw(&p(&[1, 1, 1])), Ordering::Greater);
        assert_eq!(p(&[3, 1]).compare_pbw(&p(&[4])), Ordering::Greater);
        // x3^2 > x2 x4 in degrevlex with x2 > x3 > x4.
        assert_eq!(p(&[3, 3]).compare_pbw(&p(&[4, 2])), Ordering::Greater);
        assert_eq!(p(&[2]).compare_pbw(&p(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<u64> = (0..=10).map(partition_count).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partition_count(25), 1958);
        for n in 0..=12 {
            assert_eq!(partitions_of(n).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn membership_examples() {
        let half = PatternSet::half();
        assert!(!half.in_p(&p(&[2])));
        assert!(half.in_p(&p(&[4])));
        assert!(!half.in_p(&p(&[6, 5, 3, 1])));
        assert!(!half.in_p(&p(&[7, 5, 5])));
        assert!(half.in_p(&Partition::empty()));

        assert_eq!(half.enumerate(0), vec![Partition::empty()]);
        assert_eq!(half.enumerate(4), vec![p(&[3, 1]), p(&[4])]);
        // [2,2] avoids every member of R^0 (the lightest three-part window
        // already weighs 6).
        assert_eq!(PatternSet::vacuum().enumerate(4), vec![p(&[2, 2]), p(&[4])]);
        assert!(!PatternSet::vacuum().in_p(&p(&[3, 1])));
    }

    #[test]
    fn window_matching_agrees_with_instantiation() {
        for set in [PatternSet::vacuum(), PatternSet::half(), PatternSet::sixteenth()] {
            for n in 0..=16 {
                let members = set.members_up_to(n);
                for l in partitions_of(n) {
                    let brute = members.iter().any(|eta| l.contains(eta));
                    assert_eq!(set.contains_pattern(&l), brute, "{} {l}", set.label);
                }
            }
        }
    }

    #[test]
    fn tail_patterns() {
        let half = PatternSet::half();
        assert_eq!(half.enumerate_tail(&tp(">2"), 0), vec![Partition::empty()]);
        assert!(half.enumerate_tail(&tp(">5,4"), 0).is_empty());
        assert_eq!(half.enumerate_tail(&tp(">2,1"), 4), vec![p(&[3, 1])]);
        assert!(tp(">5,4").matches(&p(&[4])));
        assert!(tp(">5,4").matches(&p(&[7, 4])));
        assert!(!tp(">5,4").matches(&p(&[5, 4])));
        assert!(!tp("5,4").matches(&p(&[4])));
        assert!(!tp("2").matches(&Partition::empty()));
        assert!(tp(">6,5,3").matches(&p(&[5, 3])));
        assert!(!tp(">6,5,3").matches(&p(&[6, 5, 3])));
        assert_eq!(tp(">6,5,3").to_string(), "P_{>6,5,3}");
    }

    #[test]
    fn with_part_keeps_order() {
        assert_eq!(p(&[5, 3, 1]).with_part(4), p(&[5, 4, 3, 1]));
        assert_eq!(p(&[5, 3, 1]).with_part(1), p(&[5, 3, 1, 1]));
        assert_eq!(Partition::empty().with_part(2), p(&[2]));
        assert_eq!(p(&[2, 2]).plus_notation(), "2+2");
    }
}
