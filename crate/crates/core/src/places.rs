//! ℝ-places induced by orders.
//!
//! Two orders induce the same place iff their codes agree once signs are
//! forgotten: the same onset of `∞` and the same real part before it. The
//! valuation-cut criterion reaches the same verdict from `S` and `U`. When
//! the places differ a linear separating function is built and certified.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cut::LowerCutQ;
use crate::error::{Error, Result};
use crate::orders::{
    compare_orders, compute_u, dominant_terms, first_difference, sign_at, valuation_class_at,
    OrderCode, Sign, ValuationClass,
};
use crate::poly::{Polynomial, RationalFunctionX};
use crate::rational::{fmt_rational, int, Budget, Rational};
use crate::series::{Series, Term};

/// Code of an ℝ-place: real entries on `onset`, `∞` everywhere after.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceCode {
    pub real: Series,
    pub onset: LowerCutQ,
}

impl PlaceCode {
    /// Terms of the real part, cut off at the budget depth for lazy parts.
    pub fn visible_terms(&self, budget: &Budget) -> Vec<Term> {
        match self.real.finite_terms() {
            Some(t) => t.to_vec(),
            None => {
                let depth = match &self.onset {
                    LowerCutQ::Below { boundary, .. } if boundary < &budget.depth => boundary,
                    _ => &budget.depth,
                };
                self.real.truncate(depth)
            }
        }
    }

    pub fn to_json(&self, budget: &Budget) -> Value {
        let real: Vec<Value> = self
            .visible_terms(budget)
            .iter()
            .map(|t| json!([fmt_rational(&t.exponent), fmt_rational(&t.coefficient)]))
            .collect();
        let onset = match &self.onset {
            LowerCutQ::All => json!({"kind": "all"}),
            LowerCutQ::Empty => json!({"kind": "empty"}),
            LowerCutQ::Below {
                boundary,
                inclusive,
            } => json!({"kind": "below", "q": fmt_rational(boundary), "incl": inclusive}),
        };
        json!({"real": real, "inf_onset": onset})
    }
}

impl fmt::Display for PlaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "place({}; {})", self.real, self.onset)
    }
}

/// Forgets `ε` and the sign of `∞`.
pub fn order_to_place(code: &OrderCode) -> PlaceCode {
    PlaceCode {
        real: code.center(),
        onset: code.lower_cut(),
    }
}

/// Gluing by codes: a real entry on either side must be matched exactly.
pub fn same_place_code(p: &OrderCode, q: &OrderCode, budget: &Budget) -> Result<bool> {
    let (a, b) = (order_to_place(p), order_to_place(q));
    if a.onset != b.onset {
        return Ok(false);
    }
    Ok(first_difference(&a.real, &b.real, &a.onset, budget)?.is_none())
}

/// Gluing by cuts: equal `S` and no gap valuation inside it.
pub fn same_place_su(p: &OrderCode, q: &OrderCode, budget: &Budget) -> Result<bool> {
    if compare_orders(p, q, budget)? == Ordering::Equal {
        return Ok(true);
    }
    let s = p.lower_cut();
    if s != q.lower_cut() {
        return Ok(false);
    }
    Ok(!s.intersects(&compute_u(p, q, budget)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceValue {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for PlaceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceValue::Finite(q) => write!(f, "{}", fmt_rational(q)),
            PlaceValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Residue of `f` at the place of `code`.
pub fn evaluate_place(f: &RationalFunctionX, code: &OrderCode, budget: &Budget) -> Result<PlaceValue> {
    if f.numerator.is_zero_within(budget)? {
        return Ok(PlaceValue::Finite(Rational::zero()));
    }
    let d = dominant_terms(f, code, budget)?;
    Ok(match d.class() {
        ValuationClass::Negative => PlaceValue::Infinite,
        ValuationClass::Positive => PlaceValue::Finite(Rational::zero()),
        // equal powers of δ cancel together with their signs
        ValuationClass::Zero => PlaceValue::Finite(&d.num_lead.coefficient / &d.den_lead.coefficient),
    })
}

/// Signs and unit test of a candidate witness: certified iff `(+, −, Zero)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationRecord {
    pub sign_at_positive: Sign,
    pub sign_at_negative: Sign,
    pub class_at_positive: ValuationClass,
}

impl SeparationRecord {
    pub fn certified(&self) -> bool {
        self.sign_at_positive == Sign::Plus
            && self.sign_at_negative == Sign::Minus
            && self.class_at_positive == ValuationClass::Zero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sign_at_positive": self.sign_at_positive.symbol(),
            "sign_at_negative": self.sign_at_negative.symbol(),
            "class_at_positive": format!("{:?}", self.class_at_positive),
            "certified": self.certified(),
        })
    }
}

pub fn separation_record(
    f: &RationalFunctionX,
    positive: &OrderCode,
    negative: &OrderCode,
    budget: &Budget,
) -> Result<SeparationRecord> {
    Ok(SeparationRecord {
        sign_at_positive: sign_at(f, positive, budget)?,
        sign_at_negative: sign_at(f, negative, budget)?,
        class_at_positive: valuation_class_at(f, positive, budget)?,
    })
}

/// `f` is a positive unit at `positive` and negative at `negative`.
pub fn verify_separation(
    f: &RationalFunctionX,
    positive: &OrderCode,
    negative: &OrderCode,
    budget: &Budget,
) -> Result<bool> {
    Ok(separation_record(f, positive, negative, budget)?.certified())
}

/// Field elements the witness was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    /// Different cuts: `a` between the orders, `b` beyond the one with the
    /// larger cut, and `v(b − a)` outside the smaller cut.
    Increasing { a: Series, b: Series },
    Decreasing { a: Series, b: Series },
    /// Equal cuts: `a < b ≤ c < d` with `v(b − a) = v(d − c) = γ`.
    SameCut {
        a: Series,
        b: Series,
        c: Series,
        d: Series,
        n: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationWitness {
    pub f: RationalFunctionX,
    pub positive: OrderCode,
    pub negative: OrderCode,
    pub construction: Construction,
    pub record: SeparationRecord,
}

impl SeparationWitness {
    pub fn to_json(&self) -> Value {
        let params = match &self.construction {
            Construction::Increasing { a, b } => {
                json!({"case": "increasing", "a": a.to_string(), "b": b.to_string()})
            }
            Construction::Decreasing { a, b } => {
                json!({"case": "decreasing", "a": a.to_string(), "b": b.to_string()})
            }
            Construction::SameCut { a, b, c, d, n } => json!({
                "case": "same_cut",
                "a": a.to_string(),
                "b": b.to_string(),
                "c": c.to_string(),
                "d": d.to_string(),
                "n": n,
            }),
        };
        json!({
            "f": self.f.to_string(),
            "positive_at": self.positive.to_string(),
            "negative_at": self.negative.to_string(),
            "construction": params,
            "record": self.record.to_json(),
        })
    }
}

/// `num / den` as a rational function, inverting `den` when it is a monomial.
fn over(num: Polynomial, den: &Series, budget: &Budget) -> Result<RationalFunctionX> {
    match den.finite_terms() {
        Some([_]) => Ok(RationalFunctionX::polynomial(num.scale(&den.invert(budget)?))),
        _ => RationalFunctionX::new(num, Polynomial::constant(den.clone())),
    }
}

/// `(X − a)/(b − a) + 1`, increasing when `a < b`.
pub fn increasing_witness(a: &Series, b: &Series, budget: &Budget) -> Result<RationalFunctionX> {
    let width = b - a;
    // X − a + (b − a) = X + b − 2a
    let num = Polynomial::new(vec![&width - a, Series::one()]);
    over(num, &width, budget)
}

/// `(a − X)/(a − b) + 1`, decreasing when `b < a`.
pub fn decreasing_witness(a: &Series, b: &Series, budget: &Budget) -> Result<RationalFunctionX> {
    let width = a - b;
    let num = Polynomial::new(vec![a + &width, Series::one().neg()]);
    over(num, &width, budget)
}

/// Enforces `a < b ≤ c < d` by re-selecting `γ′ = v(c − a)` when `c < b`.
pub fn normalize_same_cut(
    a: Series,
    b: Series,
    c: Series,
    d: Series,
    budget: &Budget,
) -> Result<(Series, Series, Series, Series)> {
    if c.compare(&b, budget)? != Ordering::Less {
        return Ok((a, b, c, d));
    }
    let gamma = (&b - &a).valuation(budget)?;
    let gamma_prime = (&c - &a).valuation(budget)?;
    // with γ′ = γ the pair (a, c) already brackets the first order at γ
    let d = if gamma_prime > gamma {
        &(&c + &c) - &a
    } else {
        d
    };
    Ok((a, c.clone(), c, d))
}

/// Least `n ≥ 1` with `1/n < r < n` for a positive `r` of valuation zero.
fn least_bound(num: &Series, den: &Series, budget: &Budget) -> Result<u64> {
    let r0 = {
        let (p, q) = (num.leading_term(budget)?, den.leading_term(budget)?);
        match (p, q) {
            (Some(p), Some(q)) if p.exponent == q.exponent => p.coefficient / q.coefficient,
            _ => {
                return Err(Error::WitnessExtractionFailure(
                    "widths of different valuation".into(),
                ))
            }
        }
    };
    let cap = crate::rational::ceil_i64(&(&r0 + r0.recip())).max(1) as u64 + 2;
    for n in 1..=cap {
        let nn = int(n as i64);
        let zero = Rational::zero();
        let above = (&den.scale(&nn, &zero) - num).sign(budget)? > 0;
        let below = (&num.scale(&nn, &zero) - den).sign(budget)? > 0;
        if above && below {
            return Ok(n);
        }
    }
    Err(Error::WitnessExtractionFailure("no integer bound found".into()))
}

/// `n(b − X)/(b − a) + 1` from `a < b ≤ c < d`.
pub fn same_cut_witness(
    a: Series,
    b: Series,
    c: Series,
    d: Series,
    budget: &Budget,
) -> Result<(RationalFunctionX, Construction)> {
    let (a, b, c, d) = normalize_same_cut(a, b, c, d, budget)?;
    let width = &b - &a;
    let n = least_bound(&width, &(&d - &c), budget)?;
    let nn = int(n as i64);
    let zero = Rational::zero();
    // n(b − X) + (b − a)
    let num = Polynomial::new(vec![
        &b.scale(&nn, &zero) + &width,
        Series::constant(-nn.clone()),
    ]);
    let f = over(num, &width, budget)?;
    Ok((f, Construction::SameCut { a, b, c, d, n }))
}

/// A certified element that is a positive unit at one order and negative at
/// the other; `None` when the orders induce the same place.
pub fn separating_element(
    p: &OrderCode,
    q: &OrderCode,
    budget: &Budget,
) -> Result<Option<SeparationWitness>> {
    if same_place_su(p, q, budget)? {
        return Ok(None);
    }
    let (p1, p2) = match compare_orders(p, q, budget)? {
        Ordering::Less => (p, q),
        _ => (q, p),
    };
    let (s1, s2) = (p1.lower_cut(), p2.lower_cut());
    let (c1, c2) = (p1.center(), p2.center());
    let (f, construction, positive, negative) = match s1.cmp(&s2) {
        Ordering::Less => {
            let gamma = s1.pick_in_difference(&s2).ok_or_else(|| {
                Error::WitnessExtractionFailure("no valuation between the cuts".into())
            })?;
            let t = c2.truncated(&gamma);
            let step = Series::monomial(Rational::one(), gamma);
            let (a, b) = (&t - &step, &t + &step);
            let f = increasing_witness(&a, &b, budget)?;
            (f, Construction::Increasing { a, b }, p2, p1)
        }
        Ordering::Greater => {
            let gamma = s2.pick_in_difference(&s1).ok_or_else(|| {
                Error::WitnessExtractionFailure("no valuation between the cuts".into())
            })?;
            let t = c1.truncated(&gamma);
            let step = Series::monomial(Rational::one(), gamma);
            let (a, b) = (&t + &step, &t - &step);
            let f = decreasing_witness(&a, &b, budget)?;
            (f, Construction::Decreasing { a, b }, p1, p2)
        }
        Ordering::Equal => {
            let lead = first_difference(&c2, &c1, &s1, budget)?.ok_or_else(|| {
                Error::WitnessExtractionFailure("real parts agree on the cut".into())
            })?;
            let gamma = lead.exponent;
            let quarter = lead.coefficient.abs() / int(4);
            let t = c1.truncated(&gamma);
            let at = |k: i64| t.add(&Series::monomial(&quarter * int(k), gamma.clone()));
            let (f, construction) = same_cut_witness(at(-1), at(1), at(1), at(3), budget)?;
            (f, construction, p1, p2)
        }
    };
    let record = separation_record(&f, positive, negative, budget)?;
    if !record.certified() {
        return Err(Error::Internal(format!(
            "witness {f} failed certification between {positive} and {negative}"
        )));
    }
    Ok(Some(SeparationWitness {
        f,
        positive: positive.clone(),
        negative: negative.clone(),
        construction,
        record,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn b() -> Budget {
        Budget::default()
    }

    fn c(n: i64) -> Series {
        Series::constant(int(n))
    }

    fn principal(a: Series, s: Sign) -> OrderCode {
        OrderCode::principal(a, s)
    }

    fn abnormal(s: Sign) -> OrderCode {
        OrderCode::gap(Series::zero(), LowerCutQ::below(int(0), true), s, &b()).unwrap()
    }

    #[test]
    fn place_codes_forget_signs() {
        assert_eq!(
            order_to_place(&principal(c(2), Sign::Plus)),
            order_to_place(&principal(c(2), Sign::Minus))
        );
        let imp = order_to_place(&OrderCode::improper(Sign::Plus));
        assert_eq!(imp.onset, LowerCutQ::Empty);
        assert_eq!(imp, order_to_place(&OrderCode::improper(Sign::Minus)));
        let g = order_to_place(&abnormal(Sign::Plus));
        assert_eq!(g, order_to_place(&abnormal(Sign::Minus)));
        assert_eq!(g.onset, LowerCutQ::below(int(0), true));
        assert!(g.real.is_known_zero());
    }

    #[test]
    fn gluing_examples() {
        let pairs = [
            (principal(c(5), Sign::Minus), principal(c(5), Sign::Plus), true),
            (OrderCode::improper(Sign::Minus), OrderCode::improper(Sign::Plus), true),
            (abnormal(Sign::Minus), abnormal(Sign::Plus), true),
            (principal(c(1), Sign::Plus), principal(c(2), Sign::Minus), false),
            (
                OrderCode::gap(c(1), LowerCutQ::below(int(0), true), Sign::Plus, &b()).unwrap(),
                OrderCode::gap(c(2), LowerCutQ::below(int(0), true), Sign::Plus, &b()).unwrap(),
                false,
            ),
        ];
        for (p, q, expected) in pairs {
            assert_eq!(same_place_su(&p, &q, &b()).unwrap(), expected, "{p} {q}");
            assert_eq!(same_place_code(&p, &q, &b()).unwrap(), expected, "{p} {q}");
        }
    }

    #[test]
    fn adjacent_principal_codes_have_no_witness() {
        let p = principal(c(3), Sign::Minus);
        assert!(separating_element(&p, &p.flipped(), &b()).unwrap().is_none());
    }

    #[test]
    fn increasing_witness_from_given_points() {
        // a = -3 sits between -∞ and 0⁻, b = 5 lies above 0⁻
        let f = increasing_witness(&c(-3), &c(5), &b()).unwrap();
        assert_eq!(f.numerator.eval(&c(-3)), c(1));
        assert_eq!(f.numerator.eval(&c(5)), c(2));
        assert_eq!(f.numerator.eval(&c(-11)), Series::zero());
        let p1 = OrderCode::improper(Sign::Minus);
        let p2 = principal(Series::zero(), Sign::Minus);
        assert!(verify_separation(&f, &p2, &p1, &b()).unwrap());
    }

    #[test]
    fn same_cut_witness_from_given_points() {
        let (f, cons) = same_cut_witness(
            Series::zero(),
            Series::constant(rat(11, 10)),
            Series::constant(rat(6, 5)),
            Series::constant(rat(9, 5)),
            &b(),
        )
        .unwrap();
        assert!(matches!(cons, Construction::SameCut { n: 2, .. }));
        assert_eq!(f.numerator.eval(&Series::zero()), c(3));
        assert_eq!(f.numerator.eval(&Series::constant(rat(11, 10))), c(1));
        assert_eq!(f.numerator.eval(&Series::constant(rat(33, 20))), Series::zero());
        let p1 = principal(c(1), Sign::Plus);
        let p2 = principal(c(2), Sign::Minus);
        assert!(verify_separation(&f, &p1, &p2, &b()).unwrap());
    }

    #[test]
    fn normalization_reselects_when_c_below_b() {
        // c < b with v(c - a) = 1 > v(b - a) = 0
        let (a, b2, c2, d) = normalize_same_cut(
            Series::zero(),
            c(1),
            Series::x(),
            c(2),
            &b(),
        )
        .unwrap();
        assert!(a.is_known_zero());
        assert_eq!(b2, Series::x());
        assert_eq!(c2, Series::x());
        assert_eq!(d, Series::monomial(int(2), int(1)));
    }

    #[test]
    fn canonical_witnesses_certify() {
        let pairs = [
            (OrderCode::improper(Sign::Minus), principal(Series::zero(), Sign::Minus)),
            (principal(c(1), Sign::Plus), principal(c(2), Sign::Minus)),
            (abnormal(Sign::Plus), principal(c(1), Sign::Minus)),
            (principal(Series::x(), Sign::Plus), abnormal(Sign::Plus)),
            (abnormal(Sign::Minus), principal(Series::zero(), Sign::Minus)),
        ];
        for (p, q) in pairs {
            let w = separating_element(&p, &q, &b()).unwrap().expect("distinct places");
            assert!(w.record.certified());
            assert!(verify_separation(&w.f, &w.positive, &w.negative, &b()).unwrap());
        }
    }

    #[test]
    fn verification_rejects_bad_candidates() {
        let p1 = principal(c(1), Sign::Plus);
        let p2 = principal(c(2), Sign::Minus);
        let one = RationalFunctionX::constant(Series::one());
        assert!(!verify_separation(&one, &p1, &p2, &b()).unwrap());
        let f = RationalFunctionX::polynomial(Polynomial::linear_root(&c(1)));
        let rec = separation_record(&f, &p1, &p2, &b()).unwrap();
        assert_eq!(rec.class_at_positive, ValuationClass::Positive);
        assert!(!rec.certified());
    }

    #[test]
    fn place_values() {
        let x = RationalFunctionX::x();
        assert_eq!(
            evaluate_place(&x, &principal(c(1), Sign::Plus), &b()).unwrap(),
            PlaceValue::Finite(int(1))
        );
        let f = RationalFunctionX::polynomial(Polynomial::new(vec![c(1), c(0), c(1)]));
        assert_eq!(
            evaluate_place(&f, &principal(c(2), Sign::Minus), &b()).unwrap(),
            PlaceValue::Finite(int(5))
        );
        assert_eq!(
            evaluate_place(&x.recip().unwrap(), &abnormal(Sign::Plus), &b()).unwrap(),
            PlaceValue::Infinite
        );
        assert_eq!(
            evaluate_place(&x, &abnormal(Sign::Plus), &b()).unwrap(),
            PlaceValue::Finite(int(0))
        );
    }

    #[test]
    fn place_json_shape() {
        let g = order_to_place(&abnormal(Sign::Plus));
        assert_eq!(
            g.to_json(&b()),
            json!({"real": [], "inf_onset": {"kind": "below", "q": "0", "incl": true}})
        );
    }
}
