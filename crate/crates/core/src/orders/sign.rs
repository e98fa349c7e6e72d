//! Signs and valuations of rational functions at an order.
//!
//! Substituting `X = p̃ + δ` turns `f` into a quotient of polynomials in `δ`.
//! Under the order, `δ` has sign `ε` and formal valuation `θ`, so each
//! polynomial is dominated by the single term `c_k δ^k` whose extended
//! valuation `v(c_k) + kθ` is least.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{ExtendedValuation, OrderCode, Sign};
use crate::cut::LowerCutQ;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalFunctionX};
use crate::rational::{signum, Budget, Rational};
use crate::series::{Series, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValuationClass {
    Negative,
    Zero,
    Positive,
}

fn binomial_row(j: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=j {
        let prev = row[k - 1].clone();
        row.push(prev * Rational::from_integer(((j + 1 - k) as i64).into())
            / Rational::from_integer((k as i64).into()));
    }
    row
}

/// Coefficients of `p(center + δ)`: the `k`-th is the `k`-th Hasse derivative
/// `Σ_{j≥k} C(j,k) a_j center^{j−k}`.
pub(crate) fn shift_polynomial(p: &Polynomial, center: &Series) -> Polynomial {
    if center.is_known_zero() {
        return p.clone();
    }
    let a = p.coefficients();
    let mut powers = vec![Series::one()];
    for i in 1..a.len() {
        powers.push(&powers[i - 1] * center);
    }
    let rows: Vec<Vec<Rational>> = (0..a.len()).map(binomial_row).collect();
    let zero_exp = Rational::zero();
    let coeffs = (0..a.len())
        .map(|k| {
            (k..a.len()).fold(Series::zero(), |acc, j| {
                if a[j].is_known_zero() {
                    return acc;
                }
                let term = (&a[j] * &powers[j - k]).scale(&rows[j][k], &zero_exp);
                &acc + &term
            })
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Numerator and denominator of `f(center + δ)` as polynomials in `δ`.
pub fn taylor_shift(f: &RationalFunctionX, center: &Series) -> (Polynomial, Polynomial) {
    (
        shift_polynomial(&f.numerator, center),
        shift_polynomial(&f.denominator, center),
    )
}

/// Index and leading term of the dominant coefficient; `None` for the zero
/// polynomial.
fn dominant(p: &Polynomial, cut: &LowerCutQ, budget: &Budget) -> Result<Option<(usize, Term)>> {
    let coeffs = p.coefficients();
    let order: Box<dyn Iterator<Item = usize>> = match cut {
        // θ above every rational: the lowest nonzero power wins outright.
        LowerCutQ::All => Box::new(0..coeffs.len()),
        // θ below every rational: the highest one does.
        LowerCutQ::Empty => Box::new((0..coeffs.len()).rev()),
        LowerCutQ::Below { .. } => Box::new(0..coeffs.len()),
    };
    let decisive = !matches!(cut, LowerCutQ::Below { .. });
    let mut best: Option<(usize, Term, ExtendedValuation)> = None;
    for k in order {
        let Some(t) = coeffs[k].leading_term(budget)? else {
            continue;
        };
        let ev = ExtendedValuation::new(t.exponent.clone(), k as i64);
        if decisive {
            return Ok(Some((k, t)));
        }
        let better = match &best {
            None => true,
            Some((_, _, cur)) => match ev.cmp_at(cur, cut) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    return Err(Error::Internal("tie between distinct powers of δ".into()))
                }
            },
        };
        if better {
            best = Some((k, t, ev));
        }
    }
    Ok(best.map(|(k, t, _)| (k, t)))
}

/// Dominant terms of numerator and denominator of `f` at an order.
#[derive(Clone, Debug)]
pub(crate) struct Dominant {
    pub num_power: usize,
    pub num_lead: Term,
    pub den_power: usize,
    pub den_lead: Term,
    pub sign: Sign,
    pub cut: LowerCutQ,
}

impl Dominant {
    /// `v_P(f)` as an extended valuation.
    pub fn valuation(&self) -> ExtendedValuation {
        ExtendedValuation::new(
            &self.num_lead.exponent - &self.den_lead.exponent,
            self.num_power as i64 - self.den_power as i64,
        )
    }

    pub fn sign_of_f(&self) -> Sign {
        let lead = signum(&self.num_lead.coefficient) * signum(&self.den_lead.coefficient);
        Sign::from_i8(lead)
            .expect("leading coefficients are nonzero")
            .times(self.sign.pow(self.num_power + self.den_power))
    }

    pub fn class(&self) -> ValuationClass {
        match self.valuation().cmp_at(&ExtendedValuation::zero(), &self.cut) {
            Ordering::Less => ValuationClass::Negative,
            Ordering::Equal => ValuationClass::Zero,
            Ordering::Greater => ValuationClass::Positive,
        }
    }
}

pub(crate) fn dominant_terms(
    f: &RationalFunctionX,
    code: &OrderCode,
    budget: &Budget,
) -> Result<Dominant> {
    let cut = code.lower_cut();
    let (num, den) = taylor_shift(f, &code.center());
    let (num_power, num_lead) = dominant(&num, &cut, budget)?.ok_or(Error::ZeroFunction)?;
    let (den_power, den_lead) = dominant(&den, &cut, budget)?.ok_or(Error::ZeroDivision)?;
    Ok(Dominant {
        num_power,
        num_lead,
        den_power,
        den_lead,
        sign: code.sign(),
        cut,
    })
}

/// Sign of a nonzero `f` in the order encoded by `code`.
pub fn sign_at(f: &RationalFunctionX, code: &OrderCode, budget: &Budget) -> Result<Sign> {
    Ok(dominant_terms(f, code, budget)?.sign_of_f())
}

/// Sign of `v_P(f)` against `0`: `Zero` for units of the valuation ring.
pub fn valuation_class_at(
    f: &RationalFunctionX,
    code: &OrderCode,
    budget: &Budget,
) -> Result<ValuationClass> {
    Ok(dominant_terms(f, code, budget)?.class())
}
