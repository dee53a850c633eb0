use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bipoly::{BiPoly, Discrepancy, Q_DENOMINATOR};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parameters of
/// `f_{a,b,c,d}(t, q) = sum_{k1,k2 >= 0} t^{4k1 + 2k2 + d} q^{4k1^2 + 3k1k2 + k2^2 + a k1 + b k2 + c} / ((q)_k1 (q)_k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NahmParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl NahmParams {
    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        NahmParams { a, b, c, d }
    }

    /// The q-exponent of the `(k1, k2)` summand's leading term.
    pub fn exponent(&self, k1: u64, k2: u64) -> u64 {
        4 * k1 * k1 + 3 * k1 * k2 + k2 * k2 + self.a as u64 * k1 + self.b as u64 * k2 + self.c as u64
    }
}

impl fmt::Display for NahmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{{{},{},{},{}}}", self.a, self.b, self.c, self.d)
    }
}

/// Integer coefficients of a series in `q` alone, up to a fixed degree.
type Univariate = Vec<BigInt>;

fn mul_univariate(x: &Univariate, y: &Univariate, degree: usize) -> Univariate {
    let mut out = vec![BigInt::zero(); degree + 1];
    for (i, a) in x.iter().enumerate().take(degree + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(degree + 1 - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

/// `(q)_n = (1 - q)(1 - q^2)...(1 - q^n)` truncated at `q^{q_truncation}`.
pub fn poch(n: u32, q_truncation: u32) -> BiPoly {
    let degree = q_truncation as usize;
    let mut acc: Univariate = vec![BigInt::zero(); degree + 1];
    acc[0] = BigInt::one();
    for j in 1..=n as usize {
        // multiply by (1 - q^j) in place, high degrees first
        for e in (j..=degree).rev() {
            let lower = acc[e - j].clone();
            acc[e] -= lower;
        }
    }
    univariate_to_bipoly(&acc, 0, 0, q_truncation)
}

/// `1 / (q)_k` up to `q^degree`, as the product of geometric series
/// `sum_m q^{jm}` for `j = 1..k`.
fn inverse_poch(k: u32, degree: usize) -> Univariate {
    let mut acc: Univariate = vec![BigInt::zero(); degree + 1];
    acc[0] = BigInt::one();
    for j in 1..=k as usize {
        // multiplying by 1/(1 - q^j) is the prefix recursion a[e] += a[e - j]
        for e in j..=degree {
            let lower = acc[e - j].clone();
            acc[e] += lower;
        }
    }
    acc
}

fn univariate_to_bipoly(coeffs: &Univariate, t: u32, q_offset: u64, q_truncation: u32) -> BiPoly {
    let mut out = BiPoly::zero(q_truncation);
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(t, (q_offset + e as u64) as i64 * Q_DENOMINATOR as i64, Rational::from_integer(c.clone()));
        }
    }
    out
}

/// `f_{a,b,c,d}` truncated at `q^{q_truncation}`.
///
/// Summands are independent, so they are evaluated in parallel and added in
/// a fixed order; the result does not depend on the schedule.
pub fn eval_f(params: NahmParams, q_truncation: u32) -> BiPoly {
    let n = q_truncation as u64;
    let mut lattice = Vec::new();
    let mut k1 = 0u64;
    while params.exponent(k1, 0) <= n {
        let mut k2 = 0u64;
        while params.exponent(k1, k2) <= n {
            lattice.push((k1, k2));
            k2 += 1;
        }
        k1 += 1;
    }
    let summands: Vec<BiPoly> = lattice
        .par_iter()
        .map(|&(k1, k2)| {
            let e = params.exponent(k1, k2);
            let room = (n - e) as usize;
            let series = mul_univariate(&inverse_poch(k1 as u32, room), &inverse_poch(k2 as u32, room), room);
            univariate_to_bipoly(&series, (4 * k1 + 2 * k2) as u32 + params.d, e, q_truncation)
        })
        .collect();
    summands.iter().fold(BiPoly::zero(q_truncation), |acc, s| &acc + s)
}

/// The four transformation rules for `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transformation {
    /// `t^m q^n f_{a,b,c,d} = f_{a,b,c+n,d+m}`
    Shift { m: u32, n: u32 },
    /// `f_{a,b,c,d}(t q^n, q) = f_{a+4n, b+2n, c+dn, d}` for `n` in `N/2`.
    Substitute { n: Rational },
    /// `f_{a,b,c,d} - f_{a+n,b,c,d} = sum_{k<n} f_{a+8+k, b+3, a+c+4+k, d+4}`
    LowerA { n: u32 },
    /// `f_{a,b,c,d} - f_{a,b+n,c,d} = sum_{k<n} f_{a+3, b+2+k, b+c+1+k, d+2}`
    LowerB { n: u32 },
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transformation::Shift { m, n } => write!(f, "shift(t^{m} q^{n})"),
            Transformation::Substitute { n } => write!(f, "substitute(t -> t q^{n})"),
            Transformation::LowerA { n } => write!(f, "lower-a({n})"),
            Transformation::LowerB { n } => write!(f, "lower-b({n})"),
        }
    }
}

/// Outcome of comparing two independently computed series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub discrepancy: Option<Discrepancy>,
}

impl IdentityCheck {
    pub fn compare(name: impl Into<String>, left: &BiPoly, right: &BiPoly) -> Self {
        IdentityCheck { name: name.into(), discrepancy: left.first_discrepancy(right) }
    }

    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.discrepancy {
            None => write!(f, "pass  {}", self.name),
            Some(d) => write!(f, "FAIL  {}: {d}", self.name),
        }
    }
}

fn sum_f(params: impl IntoIterator<Item = NahmParams>, q_truncation: u32) -> BiPoly {
    params.into_iter().fold(BiPoly::zero(q_truncation), |acc, p| &acc + &eval_f(p, q_truncation))
}

/// Checks one transformation rule at `params`, both sides computed
/// independently up to `q^{q_truncation}`.
pub fn check_transformation(rule: &Transformation, p: NahmParams, q_truncation: u32) -> Result<IdentityCheck> {
    let name = format!("{rule} at {p}");
    let NahmParams { a, b, c, d } = p;
    let (left, right) = match rule {
        Transformation::Shift { m, n } => (
            eval_f(p, q_truncation).shift(*m, &Rational::from_integer((*n).into())),
            eval_f(NahmParams::new(a, b, c + n, d + m), q_truncation + n),
        ),
        Transformation::Substitute { n } => {
            let twice = n * Rational::from_integer(2.into());
            if !twice.is_integer() || twice < Rational::zero() {
                return Err(Error::Inconsistency(format!("substitution exponent {n} is not in N/2")));
            }
            let two_n = u32::try_from(twice.to_integer()).expect("small substitution exponent");
            if two_n % 2 == 1 && d % 2 == 1 {
                return Err(Error::OddTOffset(d));
            }
            let right = NahmParams::new(a + 2 * two_n, b + two_n, c + d * two_n / 2, d);
            (eval_f(p, q_truncation).substitute_t(n)?, eval_f(right, q_truncation))
        }
        Transformation::LowerA { n } => (
            &eval_f(p, q_truncation) - &eval_f(NahmParams::new(a + n, b, c, d), q_truncation),
            sum_f((0..*n).map(|k| NahmParams::new(a + 8 + k, b + 3, a + c + 4 + k, d + 4)), q_truncation),
        ),
        Transformation::LowerB { n } => (
            &eval_f(p, q_truncation) - &eval_f(NahmParams::new(a, b + n, c, d), q_truncation),
            sum_f((0..*n).map(|k| NahmParams::new(a + 3, b + 2 + k, b + c + 1 + k, d + 2)), q_truncation),
        ),
    };
    Ok(IdentityCheck::compare(name, &left, &right))
}

/// Instances of the transformation rules that the closed forms rely on.
pub fn catalogued_transformations() -> Vec<(Transformation, NahmParams)> {
    use Transformation::*;
    let half = Rational::new(1.into(), 2.into());
    let one = Rational::one();
    vec![
        (Shift { m: 0, n: 0 }, NahmParams::new(3, 2, 0, 0)),
        (Shift { m: 1, n: 1 }, NahmParams::new(4, 2, 0, 0)),
        (Shift { m: 2, n: 3 }, NahmParams::new(6, 4, 0, 0)),
        (LowerA { n: 1 }, NahmParams::new(3, 2, 0, 0)),
        (LowerB { n: 1 }, NahmParams::new(6, 3, 2, 2)),
        (LowerA { n: 1 }, NahmParams::new(1, 1, 0, 0)),
        (LowerB { n: 1 }, NahmParams::new(2, 1, 0, 0)),
        (LowerA { n: 1 }, NahmParams::new(5, 4, 0, 0)),
        (LowerB { n: 2 }, NahmParams::new(5, 2, 1, 1)),
        (LowerA { n: 3 }, NahmParams::new(6, 4, 0, 0)),
        (Substitute { n: half.clone() }, NahmParams::new(6, 4, 0, 0)),
        (Substitute { n: half.clone() }, NahmParams::new(3, 2, 0, 0)),
        (Substitute { n: half }, NahmParams::new(6, 3, 2, 2)),
        (Substitute { n: one }, NahmParams::new(5, 2, 1, 1)),
    ]
}

/// `count` random instances with `a, b, c, d <= 10` and shifts up to 4,
/// reproducible from `seed`. Half-integral substitutions get an even `d`.
pub fn random_transformations(seed: u64, count: usize) -> Vec<(Transformation, NahmParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p = NahmParams::new(
                rng.gen_range(0..=10),
                rng.gen_range(0..=10),
                rng.gen_range(0..=10),
                rng.gen_range(0..=10),
            );
            let rule = match rng.gen_range(0..4) {
                0 => Transformation::Shift { m: rng.gen_range(0..=4), n: rng.gen_range(0..=4) },
                1 => {
                    let twice: u32 = rng.gen_range(0..=8);
                    if twice % 2 == 1 && p.d % 2 == 1 {
                        p.d -= 1;
                    }
                    Transformation::Substitute { n: Rational::new(twice.into(), 2.into()) }
                }
                2 => Transformation::LowerA { n: rng.gen_range(0..=4) },
                _ => Transformation::LowerB { n: rng.gen_range(0..=4) },
            };
            (rule, p)
        })
        .collect()
}
