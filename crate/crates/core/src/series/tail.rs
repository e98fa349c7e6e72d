use num_traits::{Signed, Zero};

use super::Term;
use crate::error::{Error, Result};
use crate::rational::{floor_i64, pow, Rational};

/// Geometric tail `Σ_{n ≥ start} c·ρⁿ·x^{α + nβ}` with `β > 0`.
///
/// The exponents are strictly increasing and cofinal in ℚ, so every
/// truncation is finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailPattern {
    pub start: u64,
    pub exponent_base: Rational,
    pub exponent_step: Rational,
    pub coefficient_base: Rational,
    pub coefficient_ratio: Rational,
}

impl TailPattern {
    pub fn new(
        start: u64,
        exponent_base: Rational,
        exponent_step: Rational,
        coefficient_base: Rational,
        coefficient_ratio: Rational,
    ) -> Result<Self> {
        if !exponent_step.is_positive() {
            return Err(Error::InvalidSeries("tail step must be positive".into()));
        }
        if coefficient_base.is_zero() || coefficient_ratio.is_zero() {
            return Err(Error::InvalidSeries(
                "tail coefficient base and ratio must be nonzero".into(),
            ));
        }
        Ok(TailPattern {
            start,
            exponent_base,
            exponent_step,
            coefficient_base,
            coefficient_ratio,
        })
    }

    pub fn exponent(&self, n: u64) -> Rational {
        &self.exponent_base + &self.exponent_step * Rational::from_integer(n.into())
    }

    pub fn coefficient(&self, n: u64) -> Rational {
        &self.coefficient_base * pow(&self.coefficient_ratio, n as i64)
    }

    pub fn first_exponent(&self) -> Rational {
        self.exponent(self.start)
    }

    pub fn first_term(&self) -> Term {
        Term::new(self.first_exponent(), self.coefficient(self.start))
    }

    /// Same terms, re-indexed so that `start == 0`.
    pub(crate) fn normalized(&self) -> TailPattern {
        if self.start == 0 {
            return self.clone();
        }
        TailPattern {
            start: 0,
            exponent_base: self.first_exponent(),
            exponent_step: self.exponent_step.clone(),
            coefficient_base: self.coefficient(self.start),
            coefficient_ratio: self.coefficient_ratio.clone(),
        }
    }

    /// Terms with exponent `≤ gamma`.
    pub fn terms_up_to(&self, gamma: &Rational) -> Vec<Term> {
        let first = self.first_exponent();
        if &first > gamma {
            return Vec::new();
        }
        let count = floor_i64(&((gamma - &first) / &self.exponent_step)) as u64 + 1;
        let mut out = Vec::with_capacity(count as usize);
        let mut e = first;
        let mut c = self.coefficient(self.start);
        for _ in 0..count {
            out.push(Term::new(e.clone(), c.clone()));
            e += &self.exponent_step;
            c *= &self.coefficient_ratio;
        }
        out
    }

    /// Moves the first `steps` terms out of the tail.
    pub(crate) fn split_front(&self, steps: u64) -> (Vec<Term>, TailPattern) {
        let moved = (self.start..self.start + steps)
            .map(|n| Term::new(self.exponent(n), self.coefficient(n)))
            .collect();
        let mut rest = self.clone();
        rest.start += steps;
        (moved, rest.normalized())
    }

    /// Splits off every term with exponent `≤ bound`.
    pub(crate) fn split_through(&self, bound: &Rational) -> (Vec<Term>, TailPattern) {
        let first = self.first_exponent();
        if &first > bound {
            return (Vec::new(), self.normalized());
        }
        let steps = floor_i64(&((bound - &first) / &self.exponent_step)) as u64 + 1;
        self.split_front(steps)
    }

    pub(crate) fn negated(&self) -> TailPattern {
        TailPattern {
            coefficient_base: -&self.coefficient_base,
            ..self.clone()
        }
    }

    /// Multiplies every term by `coeff·x^{exp}`.
    pub(crate) fn scaled(&self, coeff: &Rational, exp: &Rational) -> TailPattern {
        TailPattern {
            start: self.start,
            exponent_base: &self.exponent_base + exp,
            exponent_step: self.exponent_step.clone(),
            coefficient_base: &self.coefficient_base * coeff,
            coefficient_ratio: self.coefficient_ratio.clone(),
        }
    }

    /// Two tails run on the same exponent grid with the same ratio, so their
    /// sum is again a single tail.
    pub(crate) fn aligned_with(&self, other: &TailPattern) -> bool {
        self.exponent_step == other.exponent_step
            && self.coefficient_ratio == other.coefficient_ratio
            && ((self.first_exponent() - other.first_exponent()) / &self.exponent_step)
                .is_integer()
    }
}
