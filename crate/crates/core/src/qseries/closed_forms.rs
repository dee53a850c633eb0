use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::bipoly::BiPoly;
use super::nahm::{eval_f, IdentityCheck, NahmParams};
use crate::label::ModuleLabel;
use crate::partitions::{PatternSet, TailPattern};
use crate::rational::Rational;

/// `p(t, q) = sum_{lambda in P} t^{len(lambda)} q^{|lambda|}`, optionally
/// restricted to a tail pattern, by direct enumeration.
pub fn p_series(patterns: &PatternSet, tail: Option<&TailPattern>, q_truncation: u32) -> BiPoly {
    let mut out = BiPoly::zero(q_truncation);
    for n in 0..=q_truncation {
        let members = match tail {
            Some(tp) => patterns.enumerate_tail(tp, n),
            None => patterns.enumerate(n),
        };
        for lambda in members {
            out.add_scaled(lambda.length(), n as i64 * out.q_denominator() as i64, Rational::one());
        }
    }
    out
}

/// Signed sum of `f`-series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FCombination(pub Vec<(i32, NahmParams)>);

impl FCombination {
    pub fn plus(params: &[NahmParams]) -> Self {
        FCombination(params.iter().map(|&p| (1, p)).collect())
    }

    pub fn eval(&self, q_truncation: u32) -> BiPoly {
        self.0.iter().fold(BiPoly::zero(q_truncation), |acc, (sign, p)| {
            let f = eval_f(*p, q_truncation);
            if *sign >= 0 {
                &acc + &f
            } else {
                &acc - &f
            }
        })
    }
}

impl fmt::Display for FCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sign, p)) in self.0.iter().enumerate() {
            match (i, *sign < 0) {
                (0, false) => write!(f, "{p}")?,
                (0, true) => write!(f, "-{p}")?,
                (_, false) => write!(f, " + {p}")?,
                (_, true) => write!(f, " - {p}")?,
            }
        }
        Ok(())
    }
}

/// Refined characters `ch(t, q)` of the three modules as `f`-series.
pub fn character_combination(label: ModuleLabel) -> FCombination {
    let f = NahmParams::new;
    match label {
        ModuleLabel::H0 => FCombination(vec![(1, f(0, 0, 0, 0)), (-1, f(1, 0, 0, 0)), (1, f(1, 1, 0, 0))]),
        ModuleLabel::HHalf => FCombination::plus(&[f(3, 2, 0, 0), f(5, 2, 1, 1), f(6, 3, 2, 2)]),
        ModuleLabel::HSixteenth => FCombination::plus(&[f(1, 1, 0, 0), f(4, 2, 1, 1), f(7, 3, 3, 3)]),
    }
}

/// `q^h * (sum of f-series)`, the refined character of `L(1/2, h)`, with the
/// `f`-series truncated at `q^{q_truncation}`.
pub fn theorem_rhs(label: ModuleLabel, q_truncation: u32) -> BiPoly {
    character_combination(label).eval(q_truncation).shift(0, &label.highest_weight())
}

/// A generating function over a tail-restricted pattern-avoiding set,
/// together with its claimed `f`-series closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub label: ModuleLabel,
    /// `None` means the whole set `P`.
    pub tail: Option<TailPattern>,
    pub rhs: FCombination,
}

impl ClosedForm {
    pub fn check(&self, q_truncation: u32) -> IdentityCheck {
        let left = p_series(&PatternSet::for_module(self.label), self.tail.as_ref(), q_truncation);
        IdentityCheck::compare(self.to_string(), &left, &self.rhs.eval(q_truncation))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Some(tp) => write!(f, "{}: p{} = {}", self.label, &tp.to_string()[1..], self.rhs),
            None => write!(f, "{}: p = {}", self.label, self.rhs),
        }
    }
}

/// The catalogue of closed forms, grouped by the recursion that proves them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormGroup {
    /// `R^{1/2}`, tails not ending in 1.
    HalfNoOnes,
    /// `R^{1/2}`, tails ending in exactly one 1.
    HalfOneOne,
    /// `R^{1/2}`, tails ending in two 1s.
    HalfTwoOnes,
    /// `R^{1/2}`, the whole set.
    HalfWhole,
    /// `R^{1/16}` tails.
    SixteenthTails,
    /// `R^{1/16}`, the whole set.
    SixteenthWhole,
}

impl ClosedFormGroup {
    pub const ALL: [ClosedFormGroup; 6] = [
        ClosedFormGroup::HalfNoOnes,
        ClosedFormGroup::HalfOneOne,
        ClosedFormGroup::HalfTwoOnes,
        ClosedFormGroup::HalfWhole,
        ClosedFormGroup::SixteenthTails,
        ClosedFormGroup::SixteenthWhole,
    ];

    pub fn label(self) -> ModuleLabel {
        match self {
            ClosedFormGroup::SixteenthTails | ClosedFormGroup::SixteenthWhole => ModuleLabel::HSixteenth,
            _ => ModuleLabel::HHalf,
        }
    }

    pub fn members(self) -> Vec<ClosedForm> {
        let label = self.label();
        let table: &[(&str, &[[u32; 4]])] = match self {
            ClosedFormGroup::HalfNoOnes => &[
                (">2", &[[3, 2, 0, 0]]),
                (">4", &[[6, 4, 0, 0]]),
                (">5,4", &[[9, 5, 4, 2]]),
                ("5,4", &[[13, 6, 9, 4]]),
                ("4,4", &[[12, 6, 8, 4]]),
                (">5,3", &[[8, 5, 3, 2]]),
                (">6,5,3", &[[11, 6, 8, 4]]),
                ("6,5,3", &[[15, 7, 14, 6]]),
                ("4,3", &[[11, 5, 7, 4]]),
            ],
            ClosedFormGroup::HalfOneOne => &[
                (">2,1", &[[5, 2, 1, 1]]),
                (">4,1", &[[6, 4, 1, 1]]),
                (">5,4,1", &[[9, 5, 5, 3]]),
                ("5,4,1", &[[13, 6, 10, 5]]),
                (">5,3,1", &[[8, 5, 4, 3]]),
                ("5,3,1", &[[11, 6, 9, 5]]),
            ],
            ClosedFormGroup::HalfTwoOnes => &[
                (">3,1,1", &[[6, 3, 2, 2]]),
                // Same set as P_{>3,1,1}: [3,1,1] is forbidden.
                (">2,1,1", &[[6, 3, 2, 2]]),
                (">4,1,1", &[[6, 4, 2, 2]]),
                ("4,1,1", &[[9, 5, 6, 4]]),
            ],
            ClosedFormGroup::HalfWhole => &[("", &[[3, 2, 0, 0], [5, 2, 1, 1], [6, 3, 2, 2]])],
            ClosedFormGroup::SixteenthTails => &[
                (">2", &[[2, 2, 0, 0]]),
                (">2,1", &[[4, 2, 1, 1]]),
                (">2,1,1", &[[9, 4, 5, 4], [5, 3, 2, 2]]),
                (">3,1,1,1", &[[7, 3, 3, 3]]),
            ],
            ClosedFormGroup::SixteenthWhole => &[("", &[[1, 1, 0, 0], [4, 2, 1, 1], [7, 3, 3, 3]])],
        };
        table
            .iter()
            .map(|(tail, params)| ClosedForm {
                label,
                tail: (!tail.is_empty()).then(|| tail.parse().expect("catalogue tail patterns parse")),
                rhs: FCombination::plus(
                    &params.iter().map(|&[a, b, c, d]| NahmParams::new(a, b, c, d)).collect::<Vec<_>>(),
                ),
            })
            .collect()
    }
}

/// Checks every closed form of a group up to `q^{q_truncation}`.
pub fn check_closed_forms(group: ClosedFormGroup, q_truncation: u32) -> Vec<IdentityCheck> {
    group.members().iter().map(|cf| cf.check(q_truncation)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn p_series_small_coefficients() {
        let p = p_series(&PatternSet::half(), None, 6);
        assert_eq!(p.coefficient(0, &int(0)), Some(int(1)));
        let weight4: Rational = [2u32, 3].iter().map(|&t| p.coefficient(t, &int(4)).unwrap()).sum();
        assert_eq!(weight4, int(2));
    }

    #[test]
    fn half_tail_series_matches_closed_form() {
        let tp: TailPattern = ">2".parse().unwrap();
        let p = p_series(&PatternSet::half(), Some(&tp), 12);
        assert!(p.agrees_with(&eval_f(NahmParams::new(3, 2, 0, 0), 12)));
    }

    #[test]
    fn half_character_leading_term() {
        let rhs = theorem_rhs(ModuleLabel::HHalf, 4);
        assert_eq!(rhs.coefficient(0, &Rational::new(1.into(), 2.into())), Some(int(1)));
        assert_eq!(rhs.q_denominator(), 16);
    }
}
