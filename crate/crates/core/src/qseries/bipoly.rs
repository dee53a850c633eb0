use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Default q-exponent scale: covers the offsets `1/2 = 8/16` and `1/16`.
pub const Q_DENOMINATOR: u64 = 16;

/// A truncated series in `t` and `q` with rational coefficients.
///
/// q-exponents are stored as integers scaled by `q_denominator`. `limit` is
/// the largest scaled q-exponent that is known: every coefficient at or
/// below it is exact and nothing above it is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    q_denominator: u64,
    limit: i64,
    /// Keyed by `(scaled q-exponent, t-exponent)`.
    terms: BTreeMap<(i64, u32), Rational>,
}

/// Where two series first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub t: u32,
    pub q: Rational,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient of t^{} q^{}: {} vs {}", self.t, self.q, self.left, self.right)
    }
}

impl BiPoly {
    /// The zero series, exact up to `q^{q_truncation}`.
    pub fn zero(q_truncation: u32) -> Self {
        Self::zero_scaled(Q_DENOMINATOR, q_truncation as i64 * Q_DENOMINATOR as i64)
    }

    pub fn zero_scaled(q_denominator: u64, limit: i64) -> Self {
        assert!(q_denominator > 0);
        BiPoly { q_denominator, limit, terms: BTreeMap::new() }
    }

    pub fn one(q_truncation: u32) -> Self {
        Self::monomial(0, 0, Rational::one(), q_truncation)
    }

    /// `coeff * t^t * q^q`, truncated at `q^{q_truncation}`.
    pub fn monomial(t: u32, q: u32, coeff: Rational, q_truncation: u32) -> Self {
        let mut out = Self::zero(q_truncation);
        out.add_scaled(t, q as i64 * Q_DENOMINATOR as i64, coeff);
        out
    }

    pub fn q_denominator(&self) -> u64 {
        self.q_denominator
    }

    /// Largest known scaled q-exponent.
    pub fn limit(&self) -> i64 {
        self.limit
    }

    /// Largest known q-exponent.
    pub fn q_truncation(&self) -> Rational {
        Rational::new(BigInt::from(self.limit), BigInt::from(self.q_denominator))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(t, scaled q, coefficient)` sorted by q, then t.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &Rational)> {
        self.terms.iter().map(|(&(q, t), c)| (t, q, c))
    }

    /// Adds `coeff * t^t q^{q_scaled / q_denominator}`; dropped above the limit.
    pub fn add_scaled(&mut self, t: u32, q_scaled: i64, coeff: Rational) {
        if q_scaled > self.limit || coeff.is_zero() {
            return;
        }
        assert!(q_scaled >= 0, "negative q-exponent");
        match self.terms.entry((q_scaled, t)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient of `t^t q^q`; `None` if `q` is beyond the known range or
    /// not representable at this scale.
    pub fn coefficient(&self, t: u32, q: &Rational) -> Option<Rational> {
        let scaled = q * BigInt::from(self.q_denominator);
        if !scaled.is_integer() {
            return None;
        }
        let s = scaled.to_integer().to_i64()?;
        if s > self.limit {
            return None;
        }
        Some(self.terms.get(&(s, t)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Same series with the scale multiplied by `factor`.
    fn rescaled(&self, factor: u64) -> BiPoly {
        if factor == 1 {
            return self.clone();
        }
        let f = factor as i64;
        BiPoly {
            q_denominator: self.q_denominator * factor,
            limit: self.limit * f,
            terms: self.terms.iter().map(|(&(q, t), c)| ((q * f, t), c.clone())).collect(),
        }
    }

    /// Brings both operands to the lcm of their scales.
    fn reconcile(&self, other: &BiPoly) -> (BiPoly, BiPoly) {
        let den = self.q_denominator.lcm(&other.q_denominator);
        (self.rescaled(den / self.q_denominator), other.rescaled(den / other.q_denominator))
    }

    /// Drops everything above `q^{q_truncation}` (scaled `limit`).
    pub fn truncated_scaled(&self, limit: i64) -> BiPoly {
        let limit = limit.min(self.limit);
        BiPoly {
            q_denominator: self.q_denominator,
            limit,
            terms: self.terms.iter().filter(|(&(q, _), _)| q <= limit).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn truncated(&self, q_truncation: u32) -> BiPoly {
        self.truncated_scaled(q_truncation as i64 * self.q_denominator as i64)
    }

    pub fn scale(&self, s: &Rational) -> BiPoly {
        let mut out = BiPoly::zero_scaled(self.q_denominator, self.limit);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * s)).collect();
        }
        out
    }

    /// Scale needed to represent `q^x` exactly.
    fn scale_for(&self, x: &Rational) -> u64 {
        let d = x.denom().to_u64().expect("q-exponent denominator fits in u64");
        self.q_denominator.lcm(&d) / self.q_denominator
    }

    fn scaled_exponent(&self, x: &Rational) -> i64 {
        let s = x * BigInt::from(self.q_denominator);
        debug_assert!(s.is_integer());
        s.to_integer().to_i64().expect("q-exponent fits in i64")
    }

    /// Multiplication by `t^m q^n`; the known range moves up with it.
    pub fn shift(&self, m: u32, n: &Rational) -> BiPoly {
        assert!(!n.is_negative(), "shifts are by natural q-powers");
        let base = self.rescaled(self.scale_for(n));
        let s = base.scaled_exponent(n);
        BiPoly {
            q_denominator: base.q_denominator,
            limit: base.limit + s,
            terms: base.terms.into_iter().map(|((q, t), c)| ((q + s, t + m), c)).collect(),
        }
    }

    /// The substitution `t -> t q^n`: `t^a q^b -> t^a q^{b + a n}`.
    ///
    /// Fails if some `a n` is not a multiple of `1 / q_denominator`.
    pub fn substitute_t(&self, n: &Rational) -> Result<BiPoly> {
        assert!(!n.is_negative(), "substitution by natural q-powers only");
        let mut out = BiPoly::zero_scaled(self.q_denominator, self.limit);
        let den = BigInt::from(self.q_denominator);
        for (&(q, t), c) in &self.terms {
            let shift = n * BigInt::from(t) * &den;
            if !shift.is_integer() {
                return Err(Error::ScaleResolution {
                    shift: format!("{n}"),
                    needed: n.denom().to_u64().unwrap_or(u64::MAX),
                    have: self.q_denominator,
                });
            }
            out.add_scaled(t, q + shift.to_integer().to_i64().expect("exponent fits"), c.clone());
        }
        Ok(out)
    }

    /// The coefficient map after `t = 1`, keyed by q-exponent.
    pub fn at_t_one(&self) -> BTreeMap<Rational, Rational> {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        let den = BigInt::from(self.q_denominator);
        for (&(q, _), c) in &self.terms {
            *out.entry(Rational::new(BigInt::from(q), den.clone())).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// First coefficient (in q, then t order) where the two series differ,
    /// looking only up to the smaller of the two known ranges.
    pub fn first_discrepancy(&self, other: &BiPoly) -> Option<Discrepancy> {
        let (a, b) = self.reconcile(other);
        let limit = a.limit.min(b.limit);
        let mut keys: Vec<(i64, u32)> =
            a.terms.keys().chain(b.terms.keys()).copied().filter(|&(q, _)| q <= limit).collect();
        keys.sort_unstable();
        keys.dedup();
        let zero = Rational::zero();
        for key in keys {
            let x = a.terms.get(&key).unwrap_or(&zero);
            let y = b.terms.get(&key).unwrap_or(&zero);
            if x != y {
                return Some(Discrepancy {
                    t: key.1,
                    q: Rational::new(BigInt::from(key.0), BigInt::from(a.q_denominator)),
                    left: x.clone(),
                    right: y.clone(),
                });
            }
        }
        None
    }

    /// Equal on the common known range.
    pub fn agrees_with(&self, other: &BiPoly) -> bool {
        self.first_discrepancy(other).is_none()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, other: &BiPoly) -> BiPoly {
        let (mut a, b) = self.reconcile(other);
        a = a.truncated_scaled(b.limit);
        for ((q, t), c) in b.terms {
            a.add_scaled(t, q, c);
        }
        a
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, other: &BiPoly) -> BiPoly {
        self + &(-other)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    /// Both factors have q-exponents at least zero, so the product is known
    /// up to the smaller of the two limits.
    fn mul(self, other: &BiPoly) -> BiPoly {
        let (a, b) = self.reconcile(other);
        let limit = a.limit.min(b.limit);
        let mut out = BiPoly::zero_scaled(a.q_denominator, limit);
        for (&(qa, ta), ca) in &a.terms {
            if qa > limit {
                break;
            }
            for (&(qb, tb), cb) in &b.terms {
                if qa + qb > limit {
                    break;
                }
                out.add_scaled(ta + tb, qa + qb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (&(q, t), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let qexp = Rational::new(BigInt::from(q), BigInt::from(self.q_denominator));
            let mut factors = Vec::new();
            if t > 0 {
                factors.push(if t == 1 { "t".to_string() } else { format!("t^{t}") });
            }
            if !qexp.is_zero() {
                factors.push(if qexp.is_one() { "q".to_string() } else { format!("q^{qexp}") });
            }
            if factors.is_empty() || !a.is_one() {
                factors.insert(0, a.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        write!(f, " + O(q^{})", self.q_truncation())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(u32, i64, String)> = self.terms.iter().map(|(&(q, t), c)| (t, q, format_rational(c))).collect();
        let mut s = serializer.serialize_struct("BiPoly", 2)?;
        s.serialize_field("q_denominator", &self.q_denominator)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}
