use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Repr, Series, TailPattern, Term, ZeroStatus};
use crate::error::{Error, Result};
use crate::rational::{Budget, Rational};

pub(crate) fn merge_add(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].exponent.cmp(&b[j].exponent) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].coefficient + &b[j].coefficient;
                if !c.is_zero() {
                    out.push(Term::new(a[i].exponent.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Finite convolution, keeping exponents `≤ cap` when a cap is given.
pub(crate) fn convolve(a: &[Term], b: &[Term], cap: Option<&Rational>) -> Vec<Term> {
    let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
    for ta in a {
        for tb in b {
            let e = &ta.exponent + &tb.exponent;
            if cap.is_some_and(|c| &e > c) {
                // b is increasing, so later terms only overshoot further.
                break;
            }
            let c = &ta.coefficient * &tb.coefficient;
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Term::new(e, c))
        .collect()
}

fn finite(terms: Vec<Term>) -> Series {
    Series(Repr::Finite(Arc::new(terms)))
}

fn patterned(head: Vec<Term>, tail: TailPattern) -> Series {
    Series(Repr::Patterned {
        head: Arc::new(head),
        tail,
    })
    .canonical()
}

pub(crate) fn neg(a: &Series) -> Series {
    match &a.0 {
        Repr::Finite(t) => finite(
            t.iter()
                .map(|t| Term::new(t.exponent.clone(), -&t.coefficient))
                .collect(),
        ),
        Repr::Patterned { head, tail } => patterned(
            head.iter()
                .map(|t| Term::new(t.exponent.clone(), -&t.coefficient))
                .collect(),
            tail.negated(),
        ),
        Repr::Oracle(_) => {
            let inner = a.clone();
            Series::from_oracle(a.floor().unwrap_or_default(), a.zero_status(), move |g| {
                inner
                    .truncate(g)
                    .into_iter()
                    .map(|t| Term::new(t.exponent, -t.coefficient))
                    .collect()
            })
        }
    }
}

pub(crate) fn scale(a: &Series, coeff: &Rational, exp: &Rational) -> Series {
    if coeff.is_zero() || a.is_known_zero() {
        return Series::zero();
    }
    let map = |t: &Term| Term::new(&t.exponent + exp, &t.coefficient * coeff);
    match &a.0 {
        Repr::Finite(t) => finite(t.iter().map(map).collect()),
        Repr::Patterned { head, tail } => {
            patterned(head.iter().map(map).collect(), tail.scaled(coeff, exp))
        }
        Repr::Oracle(_) => {
            let inner = a.clone();
            let (coeff, exp) = (coeff.clone(), exp.clone());
            let zero = match a.zero_status() {
                ZeroStatus::NonzeroFrom(v) => ZeroStatus::NonzeroFrom(v + &exp),
                other => other,
            };
            let floor = a.floor().unwrap_or_default() + &exp;
            Series::from_oracle(floor, zero, move |g| {
                inner
                    .truncate(&(g - &exp))
                    .iter()
                    .map(|t| Term::new(&t.exponent + &exp, &t.coefficient * &coeff))
                    .collect()
            })
        }
    }
}

fn finite_plus_patterned(f: &[Term], head: &[Term], tail: &TailPattern) -> Series {
    let Some(last) = f.last() else {
        return patterned(head.to_vec(), tail.clone());
    };
    let (moved, tail) = tail.split_through(&last.exponent);
    let head = merge_add(&merge_add(head, &moved), f);
    patterned(head, tail)
}

fn patterned_plus_patterned(
    h1: &[Term],
    t1: &TailPattern,
    h2: &[Term],
    t2: &TailPattern,
) -> Option<Series> {
    if !t1.aligned_with(t2) {
        return None;
    }
    let (e1, e2) = (t1.first_exponent(), t2.first_exponent());
    let (early_head, early, late_head, late) = if e1 <= e2 {
        (h1, t1, h2, t2)
    } else {
        (h2, t2, h1, t1)
    };
    let steps = ((late.first_exponent() - early.first_exponent()) / &early.exponent_step)
        .to_integer();
    let steps = u64::try_from(steps).ok()?;
    let (moved, early) = early.split_front(steps);
    let head = merge_add(&merge_add(early_head, &moved), late_head);
    let c = &early.coefficient_base + &late.coefficient_base;
    if c.is_zero() {
        return Some(finite(head));
    }
    let tail = TailPattern {
        coefficient_base: c,
        ..early
    };
    Some(patterned(head, tail))
}

pub(crate) fn add(a: &Series, b: &Series) -> Series {
    if a.is_known_zero() {
        return b.clone();
    }
    if b.is_known_zero() {
        return a.clone();
    }
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => finite(merge_add(x, y)),
        (Repr::Finite(f), Repr::Patterned { head, tail })
        | (Repr::Patterned { head, tail }, Repr::Finite(f)) => finite_plus_patterned(f, head, tail),
        (Repr::Patterned { head: h1, tail: t1 }, Repr::Patterned { head: h2, tail: t2 }) => {
            patterned_plus_patterned(h1, t1, h2, t2).unwrap_or_else(|| {
                // Misaligned tails cannot cancel past a few periods.
                let window = std::cmp::max(t1.first_exponent(), t2.first_exponent())
                    + Rational::from_integer(3.into())
                        * std::cmp::max(&t1.exponent_step, &t2.exponent_step);
                let probe = merge_add(&a.truncate(&window), &b.truncate(&window));
                let zero = probe
                    .first()
                    .map_or(ZeroStatus::Unknown, |t| ZeroStatus::NonzeroFrom(t.exponent.clone()));
                oracle_sum(a, b, zero)
            })
        }
        _ => {
            let zero = match (a.exact_valuation(), b.exact_valuation()) {
                (Some(va), Some(vb)) if va != vb => ZeroStatus::NonzeroFrom(va.min(vb)),
                _ => ZeroStatus::Unknown,
            };
            oracle_sum(a, b, zero)
        }
    }
}

fn oracle_sum(a: &Series, b: &Series, zero: ZeroStatus) -> Series {
    let floor = match (a.floor(), b.floor()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => Rational::zero(),
    };
    let (a, b) = (a.clone(), b.clone());
    Series::from_oracle(floor, zero, move |g| merge_add(&a.truncate(g), &b.truncate(g)))
}

pub(crate) fn mul(a: &Series, b: &Series) -> Series {
    if a.is_known_zero() || b.is_known_zero() {
        return Series::zero();
    }
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => finite(convolve(x, y, None)),
        (Repr::Finite(f), Repr::Patterned { .. }) => finite_times(f, b),
        (Repr::Patterned { .. }, Repr::Finite(f)) => finite_times(f, a),
        _ => oracle_product(a, b),
    }
}

fn finite_times(f: &[Term], other: &Series) -> Series {
    f.iter().fold(Series::zero(), |acc, t| {
        add(&acc, &scale(other, &t.coefficient, &t.exponent))
    })
}

fn oracle_product(a: &Series, b: &Series) -> Series {
    // Both are nonzero or unknown here, so floors exist.
    let fa = a.floor().unwrap_or_default();
    let fb = b.floor().unwrap_or_default();
    let zero = match (a.zero_status(), b.zero_status()) {
        (ZeroStatus::NonzeroFrom(x), ZeroStatus::NonzeroFrom(y)) => ZeroStatus::NonzeroFrom(x + y),
        _ => ZeroStatus::Unknown,
    };
    let floor = &fa + &fb;
    let (a, b) = (a.clone(), b.clone());
    Series::from_oracle(floor, zero, move |g| {
        let ta = a.truncate(&(g - &fb));
        let tb = b.truncate(&(g - &fa));
        convolve(&ta, &tb, Some(g))
    })
}

/// Terms of `1/(1 + r)` with exponent `≤ cap`, where `r` is given by its
/// terms up to `cap` (all exponents positive).
///
/// Uses `w = 1 − r·w` coefficientwise, visiting candidate exponents of the
/// monoid generated by `supp(r)` in increasing order.
fn geometric_inverse(r: &[Term], cap: &Rational) -> Vec<Term> {
    let mut w: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut pending: BTreeSet<Rational> = BTreeSet::new();
    if cap < &Rational::zero() {
        return Vec::new();
    }
    pending.insert(Rational::zero());
    while let Some(e) = pending.pop_first() {
        let mut c = if e.is_zero() {
            Rational::one()
        } else {
            Rational::zero()
        };
        for s in r.iter().take_while(|s| s.exponent <= e) {
            if let Some(prev) = w.get(&(&e - &s.exponent)) {
                c -= &s.coefficient * prev;
            }
        }
        if c.is_zero() {
            continue;
        }
        for s in r {
            let next = &e + &s.exponent;
            if &next > cap {
                break;
            }
            pending.insert(next);
        }
        w.insert(e, c);
    }
    w.into_iter().map(|(e, c)| Term::new(e, c)).collect()
}

pub(crate) fn invert(a: &Series, budget: &Budget) -> Result<Series> {
    let lead = a.leading_term(budget)?.ok_or(Error::ZeroDivision)?;
    let inv_c = lead.coefficient.recip();
    let v = lead.exponent.clone();
    match &a.0 {
        Repr::Finite(t) if t.len() == 1 => return Ok(Series::monomial(inv_c, -v)),
        Repr::Finite(t) if t.len() == 2 => {
            // 1/(c x^v + d x^w) = (1/c) x^{-v} Σ (−d/c)^n x^{n(w−v)}
            let tail = TailPattern::new(
                0,
                -&v,
                &t[1].exponent - &v,
                inv_c.clone(),
                -(&t[1].coefficient * &inv_c),
            )?;
            return Ok(Series::tail_only(tail));
        }
        Repr::Patterned { head, tail } if head.is_empty() => {
            // c x^α / (1 − ρ x^β)  inverts to  (1/c) x^{−α} (1 − ρ x^β)
            let c = tail.coefficient_base.recip();
            return Ok(Series::from_pairs([
                (-&tail.exponent_base, c.clone()),
                (
                    &tail.exponent_step - &tail.exponent_base,
                    -(&tail.coefficient_ratio * &c),
                ),
            ]));
        }
        _ => {}
    }
    let inner = a.clone();
    let floor = -&v;
    Ok(Series::from_oracle(
        floor.clone(),
        ZeroStatus::NonzeroFrom(floor),
        move |g| {
            let cap = g + &v;
            // r = a / (c x^v) − 1, truncated at cap
            let r: Vec<Term> = inner
                .truncate(&(&cap + &v))
                .into_iter()
                .skip(1)
                .map(|t| Term::new(t.exponent - &v, t.coefficient * &inv_c))
                .collect();
            geometric_inverse(&r, &cap)
                .into_iter()
                .map(|t| Term::new(t.exponent - &v, t.coefficient * &inv_c))
                .collect()
        },
    ))
}
