//! Generalized power series `Σ a_γ x^γ` with exponents in ℚ and exact
//! rational coefficients.
//!
//! The support of every series is well-ordered of order type at most ω and,
//! when infinite, cofinal in ℚ. Consequently a truncation "all terms with
//! exponent ≤ γ" is always a finite list, and every operation here is built on
//! that query.
//!
//! Three representations are used:
//!
//! - `Finite`: a strictly increasing list of terms.
//! - `Patterned`: a finite head followed by a geometric [`TailPattern`].
//! - `Oracle`: a memoized truncation function together with a valuation
//!   lower bound and whatever is known about the zero status.
//!
//! Zero testing is exact for the first two and budgeted for the last.

mod arith;
mod limit;
mod tail;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, signum, Budget, Rational};

pub use limit::{cauchy_limit, stitch_limit, ModulusFn, SequenceFn};
pub use tail::TailPattern;

/// A single nonzero term `coefficient · x^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Rational,
    pub coefficient: Rational,
}

impl Term {
    pub fn new(exponent: Rational, coefficient: Rational) -> Self {
        Term {
            exponent,
            coefficient,
        }
    }
}

/// What is known about whether a lazily defined series vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    Zero,
    /// Nonzero, with some nonzero term at exponent `≤` the payload.
    NonzeroFrom(Rational),
    Unknown,
}

pub(crate) type TruncationFn = dyn Fn(&Rational) -> Vec<Term> + Send + Sync;

/// Lazy series backed by a truncation function.
///
/// Only the deepest truncation computed so far is cached; shallower queries
/// are answered by filtering it, so results never depend on query order.
pub(crate) struct Oracle {
    truncation: Box<TruncationFn>,
    floor: Rational,
    zero: ZeroStatus,
    memo: Mutex<Option<(Rational, Arc<Vec<Term>>)>>,
}

impl Oracle {
    fn truncate(&self, gamma: &Rational) -> Vec<Term> {
        if gamma < &self.floor {
            return Vec::new();
        }
        {
            let memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
            if let Some((depth, terms)) = memo.as_ref() {
                if gamma <= depth {
                    return terms
                        .iter()
                        .take_while(|t| &t.exponent <= gamma)
                        .cloned()
                        .collect();
                }
            }
        }
        let terms = (self.truncation)(gamma);
        debug_assert!(terms.windows(2).all(|w| w[0].exponent < w[1].exponent));
        debug_assert!(terms.iter().all(|t| !t.coefficient.is_zero()));
        debug_assert!(terms.iter().all(|t| &t.exponent <= gamma));
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        let deeper = memo.as_ref().map_or(true, |(depth, _)| gamma > depth);
        if deeper {
            *memo = Some((gamma.clone(), Arc::new(terms.clone())));
        }
        terms
    }
}

#[derive(Clone)]
pub(crate) enum Repr {
    Finite(Arc<Vec<Term>>),
    Patterned {
        head: Arc<Vec<Term>>,
        tail: TailPattern,
    },
    Oracle(Arc<Oracle>),
}

/// An element of the ordered field of generalized power series.
#[derive(Clone)]
pub struct Series(pub(crate) Repr);

impl Series {
    pub fn zero() -> Series {
        Series(Repr::Finite(Arc::new(Vec::new())))
    }

    pub fn one() -> Series {
        Series::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Series {
        Series::monomial(c, Rational::zero())
    }

    pub fn monomial(coefficient: Rational, exponent: Rational) -> Series {
        if coefficient.is_zero() {
            return Series::zero();
        }
        Series(Repr::Finite(Arc::new(vec![Term::new(exponent, coefficient)])))
    }

    /// The series `x` (a positive infinitesimal).
    pub fn x() -> Series {
        Series::monomial(Rational::one(), Rational::one())
    }

    /// Builds a finite series; like exponents are combined and zeros dropped.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Series {
        let mut v: Vec<Term> = terms.into_iter().collect();
        v.sort_by(|a, b| a.exponent.cmp(&b.exponent));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.exponent == t.exponent => last.coefficient += t.coefficient,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coefficient.is_zero());
        Series(Repr::Finite(Arc::new(out)))
    }

    pub fn from_pairs<I: IntoIterator<Item = (Rational, Rational)>>(pairs: I) -> Series {
        Series::from_terms(pairs.into_iter().map(|(e, c)| Term::new(e, c)))
    }

    /// `head + tail`; head terms at or beyond the tail start are merged in.
    pub fn patterned(head: Vec<Term>, tail: TailPattern) -> Series {
        arith::add(&Series::from_terms(head), &Series::tail_only(tail))
    }

    pub(crate) fn tail_only(tail: TailPattern) -> Series {
        Series(Repr::Patterned {
            head: Arc::new(Vec::new()),
            tail: tail.normalized(),
        })
        .canonical()
    }

    /// Lazy series from a truncation oracle.
    ///
    /// `truncation(γ)` must return exactly the nonzero terms with exponent
    /// `≤ γ`, strictly increasing, deterministically; deepening a query must
    /// never change terms already reported. `floor` is a lower bound on the
    /// valuation.
    pub fn from_oracle<F>(floor: Rational, zero: ZeroStatus, truncation: F) -> Series
    where
        F: Fn(&Rational) -> Vec<Term> + Send + Sync + 'static,
    {
        if zero == ZeroStatus::Zero {
            return Series::zero();
        }
        Series(Repr::Oracle(Arc::new(Oracle {
            truncation: Box::new(truncation),
            floor,
            zero,
            memo: Mutex::new(None),
        })))
    }

    /// Folds trailing head terms that continue the tail backwards into it,
    /// giving a unique representation for patterned series.
    fn canonical(self) -> Series {
        match self.0 {
            Repr::Patterned { head, tail } => {
                let mut head = Arc::try_unwrap(head).unwrap_or_else(|h| (*h).clone());
                let mut tail = tail.normalized();
                while let Some(last) = head.last() {
                    let prev_exp = &tail.exponent_base - &tail.exponent_step;
                    let prev_coeff = &tail.coefficient_base / &tail.coefficient_ratio;
                    if last.exponent == prev_exp && last.coefficient == prev_coeff {
                        head.pop();
                        tail.exponent_base = prev_exp;
                        tail.coefficient_base = prev_coeff;
                    } else {
                        break;
                    }
                }
                Series(Repr::Patterned {
                    head: Arc::new(head),
                    tail,
                })
            }
            other => Series(other),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Repr::Finite(_))
    }

    pub fn is_patterned(&self) -> bool {
        matches!(self.0, Repr::Patterned { .. })
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self.0, Repr::Oracle(_))
    }

    /// Terms of a finite series.
    pub fn finite_terms(&self) -> Option<&[Term]> {
        match &self.0 {
            Repr::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn tail(&self) -> Option<(&[Term], &TailPattern)> {
        match &self.0 {
            Repr::Patterned { head, tail } => Some((head, tail)),
            _ => None,
        }
    }

    /// Exactly the terms with exponent `≤ gamma`, strictly increasing.
    pub fn truncate(&self, gamma: &Rational) -> Vec<Term> {
        match &self.0 {
            Repr::Finite(terms) => terms
                .iter()
                .take_while(|t| &t.exponent <= gamma)
                .cloned()
                .collect(),
            Repr::Patterned { head, tail } => {
                let mut out: Vec<Term> = head
                    .iter()
                    .take_while(|t| &t.exponent <= gamma)
                    .cloned()
                    .collect();
                out.extend(tail.terms_up_to(gamma));
                out
            }
            Repr::Oracle(o) => o.truncate(gamma),
        }
    }

    /// Terms with exponent `< gamma`.
    pub fn truncate_below(&self, gamma: &Rational) -> Vec<Term> {
        let mut t = self.truncate(gamma);
        if t.last().is_some_and(|l| &l.exponent == gamma) {
            t.pop();
        }
        t
    }

    /// The finite series of terms with exponent `≤ gamma`.
    pub fn truncated(&self, gamma: &Rational) -> Series {
        Series(Repr::Finite(Arc::new(self.truncate(gamma))))
    }

    pub fn coefficient(&self, exponent: &Rational) -> Rational {
        self.truncate(exponent)
            .last()
            .filter(|t| &t.exponent == exponent)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn zero_status(&self) -> ZeroStatus {
        match &self.0 {
            Repr::Finite(t) => match t.first() {
                None => ZeroStatus::Zero,
                Some(first) => ZeroStatus::NonzeroFrom(first.exponent.clone()),
            },
            Repr::Patterned { head, tail } => ZeroStatus::NonzeroFrom(
                head.first()
                    .map(|t| t.exponent.clone())
                    .unwrap_or_else(|| tail.first_exponent()),
            ),
            Repr::Oracle(o) => o.zero.clone(),
        }
    }

    /// Lower bound on the valuation; `None` when the series is known to be zero.
    pub fn floor(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Oracle(o) => Some(o.floor.clone()),
            _ => match self.zero_status() {
                ZeroStatus::NonzeroFrom(v) => Some(v),
                _ => None,
            },
        }
    }

    /// Valuation when it is known without any search.
    pub(crate) fn exact_valuation(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Oracle(o) => match &o.zero {
                ZeroStatus::NonzeroFrom(v) if v == &o.floor => Some(v.clone()),
                _ => None,
            },
            _ => self.floor(),
        }
    }

    pub fn is_known_zero(&self) -> bool {
        self.zero_status() == ZeroStatus::Zero
    }

    /// Least-exponent term; `None` iff the series is zero.
    pub fn leading_term(&self, budget: &Budget) -> Result<Option<Term>> {
        match &self.0 {
            Repr::Finite(t) => Ok(t.first().cloned()),
            Repr::Patterned { head, tail } => {
                Ok(Some(head.first().cloned().unwrap_or_else(|| tail.first_term())))
            }
            Repr::Oracle(o) => match &o.zero {
                ZeroStatus::Zero => Ok(None),
                ZeroStatus::NonzeroFrom(bound) => match o.truncate(bound).into_iter().next() {
                    Some(t) => Ok(Some(t)),
                    None => Err(Error::Internal(format!(
                        "oracle promised a nonzero term at or below {}",
                        fmt_rational(bound)
                    ))),
                },
                ZeroStatus::Unknown => {
                    if o.floor > budget.depth {
                        return Err(Error::BudgetExhausted {
                            depth: budget.depth.clone(),
                        });
                    }
                    // Deepen geometrically so cheap leading terms are found cheaply.
                    let mut step = Rational::one();
                    let mut gamma = o.floor.clone();
                    loop {
                        if gamma > budget.depth {
                            gamma = budget.depth.clone();
                        }
                        if let Some(t) = o.truncate(&gamma).into_iter().next() {
                            return Ok(Some(t));
                        }
                        if gamma == budget.depth {
                            return Err(Error::BudgetExhausted {
                                depth: budget.depth.clone(),
                            });
                        }
                        gamma += &step;
                        step = &step + &step;
                    }
                }
            },
        }
    }

    /// `v(a) = min supp(a)`; `None` stands for `∞` (the zero series).
    pub fn valuation(&self, budget: &Budget) -> Result<Option<Rational>> {
        Ok(self.leading_term(budget)?.map(|t| t.exponent))
    }

    /// Sign in the lexicographic order: that of the leading coefficient.
    pub fn sign(&self, budget: &Budget) -> Result<i8> {
        Ok(self
            .leading_term(budget)?
            .map_or(0, |t| signum(&t.coefficient)))
    }

    /// Sign of `self − other`.
    pub fn compare(&self, other: &Series, budget: &Budget) -> Result<Ordering> {
        Ok(match (self - other).sign(budget)? {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    pub fn is_zero_within(&self, budget: &Budget) -> Result<bool> {
        Ok(self.leading_term(budget)?.is_none())
    }

    pub fn neg(&self) -> Series {
        arith::neg(self)
    }

    pub fn add(&self, other: &Series) -> Series {
        arith::add(self, other)
    }

    pub fn sub(&self, other: &Series) -> Series {
        arith::add(self, &arith::neg(other))
    }

    pub fn mul(&self, other: &Series) -> Series {
        arith::mul(self, other)
    }

    /// Multiplies by `coefficient · x^exponent`.
    pub fn scale(&self, coefficient: &Rational, exponent: &Rational) -> Series {
        arith::scale(self, coefficient, exponent)
    }

    pub fn invert(&self, budget: &Budget) -> Result<Series> {
        arith::invert(self, budget)
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Structural equality for finite and patterned series; lazy series are
    /// only equal to themselves (the same shared oracle).
    pub fn same_representation(&self, other: &Series) -> bool {
        match (&self.0, &other.0) {
            (Repr::Finite(a), Repr::Finite(b)) => a == b,
            (
                Repr::Patterned { head: h1, tail: t1 },
                Repr::Patterned { head: h2, tail: t2 },
            ) => h1 == h2 && t1 == t2,
            (Repr::Oracle(a), Repr::Oracle(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.same_representation(other)
    }
}

impl Default for Series {
    fn default() -> Self {
        Series::zero()
    }
}

impl From<Rational> for Series {
    fn from(c: Rational) -> Self {
        Series::constant(c)
    }
}

impl std::ops::Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        arith::add(self, rhs)
    }
}

impl std::ops::Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        arith::add(self, &arith::neg(rhs))
    }
}

impl std::ops::Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        arith::mul(self, rhs)
    }
}

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        arith::neg(self)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term], leading: bool) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        let negative = t.coefficient.is_negative();
        let first = leading && i == 0;
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        let c = t.coefficient.abs();
        if t.exponent.is_zero() {
            write!(f, "{}", fmt_rational(&c))?;
        } else if c.is_one() {
            write!(f, "x^({})", fmt_rational(&t.exponent))?;
        } else {
            write!(f, "{}*x^({})", fmt_rational(&c), fmt_rational(&t.exponent))?;
        }
    }
    Ok(())
}

/// Number of exponent units past the valuation floor shown for lazy series.
const ORACLE_DISPLAY_SPAN: i64 = 8;

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(terms) => {
                if terms.is_empty() {
                    return write!(f, "0");
                }
                write_terms(f, terms, true)
            }
            Repr::Patterned { head, tail } => {
                if head.is_empty() {
                    write!(f, "0")?;
                } else {
                    write_terms(f, head, true)?;
                }
                write!(
                    f,
                    " ~ tail({}, {}, {}, {}, {})",
                    tail.start,
                    fmt_rational(&tail.exponent_base),
                    fmt_rational(&tail.exponent_step),
                    fmt_rational(&tail.coefficient_base),
                    fmt_rational(&tail.coefficient_ratio)
                )
            }
            Repr::Oracle(o) => {
                let depth = &o.floor + Rational::from_integer(ORACLE_DISPLAY_SPAN.into());
                let terms = o.truncate(&depth);
                if terms.is_empty() {
                    write!(f, "0")?;
                } else {
                    write_terms(f, &terms, true)?;
                }
                write!(f, " + O(x^({}))", fmt_rational(&depth))
            }
        }
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

#[cfg(test)]
mod tests;
