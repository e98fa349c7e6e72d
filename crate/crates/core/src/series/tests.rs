use std::cmp::Ordering;
use std::sync::Arc;

use super::*;
use crate::rational::{int, rat, Budget};

fn s(pairs: &[((i64, i64), i64)]) -> Series {
    Series::from_pairs(pairs.iter().map(|&((n, d), c)| (rat(n, d), int(c))))
}

fn geometric() -> Series {
    Series::tail_only(TailPattern::new(0, int(0), int(1), int(1), int(1)).unwrap())
}

fn exps(terms: &[Term]) -> Vec<Rational> {
    terms.iter().map(|t| t.exponent.clone()).collect()
}

#[test]
fn add_disjoint_supports() {
    let a = s(&[((-1, 1), 1), ((0, 1), 2)]);
    let b = s(&[((1, 2), 3)]);
    let sum = &a + &b;
    assert_eq!(sum, s(&[((-1, 1), 1), ((0, 1), 2), ((1, 2), 3)]));
    assert_eq!(sum.to_string(), "x^(-1) + 2 + 3*x^(1/2)");
}

#[test]
fn add_inverse_is_zero() {
    let a = s(&[((0, 1), 1), ((1, 1), 1)]);
    let b = s(&[((0, 1), -1), ((1, 1), -1)]);
    let sum = &a + &b;
    assert_eq!(sum.zero_status(), ZeroStatus::Zero);
}

#[test]
fn add_cancels_tail_head() {
    let sum = &geometric() - &Series::one();
    assert!(sum.is_patterned());
    let expected = Series::tail_only(TailPattern::new(1, int(0), int(1), int(1), int(1)).unwrap());
    assert_eq!(sum, expected);
    assert_eq!(exps(&sum.truncate(&int(3))), vec![int(1), int(2), int(3)]);
}

#[test]
fn mul_examples() {
    let p = s(&[((0, 1), 1), ((1, 1), 1)]);
    let m = s(&[((0, 1), 1), ((1, 1), -1)]);
    assert_eq!(&p * &m, s(&[((0, 1), 1), ((2, 1), -1)]));
    let half = Series::monomial(int(1), rat(1, 2));
    assert_eq!(&half * &half, Series::x());
    let g = &geometric() * &m;
    assert_eq!(g, Series::one());
}

#[test]
fn valuation_examples() {
    let b = Budget::default();
    assert_eq!(Series::zero().valuation(&b).unwrap(), None);
    assert_eq!(
        s(&[((-1, 1), 1), ((0, 1), 2), ((1, 2), 3)]).valuation(&b).unwrap(),
        Some(int(-1))
    );
    let p = s(&[((0, 1), 1), ((1, 1), 1)]);
    let m = s(&[((0, 1), 1), ((1, 1), -1)]);
    let d = &(&p * &m) - &Series::one();
    assert_eq!(d.valuation(&b).unwrap(), Some(int(2)));
}

#[test]
fn compare_examples() {
    let b = Budget::default();
    assert_eq!(Series::x().compare(&Series::zero(), &b).unwrap(), Ordering::Greater);
    let inv_x = Series::monomial(int(1), int(-1));
    assert_eq!(
        inv_x.compare(&Series::constant(int(1_000_000)), &b).unwrap(),
        Ordering::Greater
    );
    let one_plus_x = s(&[((0, 1), 1), ((1, 1), 1)]);
    assert_eq!(one_plus_x.compare(&Series::one(), &b).unwrap(), Ordering::Greater);
}

#[test]
fn invert_examples() {
    let b = Budget::default();
    assert_eq!(Series::constant(int(2)).invert(&b).unwrap(), Series::constant(rat(1, 2)));
    assert_eq!(Series::x().invert(&b).unwrap(), Series::monomial(int(1), int(-1)));
    let inv = s(&[((0, 1), 1), ((1, 1), -1)]).invert(&b).unwrap();
    assert_eq!(inv.truncate(&int(3)), geometric().truncate(&int(3)));
    assert!(matches!(Series::zero().invert(&b), Err(Error::ZeroDivision)));
}

#[test]
fn invert_patterned_and_oracle() {
    let b = Budget::default();
    assert_eq!(geometric().invert(&b).unwrap(), s(&[((0, 1), 1), ((1, 1), -1)]));
    let a = s(&[((-1, 1), 2), ((0, 1), 1), ((1, 2), -3), ((3, 2), 5)]);
    let inv = a.invert(&b).unwrap();
    assert!(inv.is_oracle());
    let prod = &a * &inv;
    assert_eq!(prod.truncate(&int(20)), Series::one().truncate(&int(20)));
}

#[test]
fn truncate_examples() {
    assert_eq!(exps(&geometric().truncate(&rat(5, 2))), vec![int(0), int(1), int(2)]);
    assert!(Series::zero().truncate(&int(100)).is_empty());
    assert!(s(&[((-1, 1), 1), ((0, 1), 2)]).truncate(&int(-2)).is_empty());
}

#[test]
fn oracle_budget_exhaustion() {
    let z = Series::from_oracle(int(0), ZeroStatus::Unknown, |_| Vec::new());
    let err = z.valuation(&Budget::from_depth(10)).unwrap_err();
    assert!(err.is_budget());
    let far = Series::from_oracle(int(0), ZeroStatus::Unknown, |g: &Rational| {
        if g >= &int(100) {
            vec![Term::new(int(100), int(1))]
        } else {
            Vec::new()
        }
    });
    assert!(far.valuation(&Budget::default()).is_err());
    assert_eq!(far.valuation(&Budget::from_depth(200)).unwrap(), Some(int(100)));
}

#[test]
fn misaligned_tails_are_known_nonzero() {
    let a = geometric();
    let b = Series::tail_only(TailPattern::new(0, int(0), int(2), int(-1), int(1)).unwrap());
    let d = &a + &b;
    assert!(d.is_oracle());
    assert_eq!(d.zero_status(), ZeroStatus::NonzeroFrom(int(1)));
}

#[test]
fn display_patterned_round_trip_shape() {
    let p = Series::patterned(
        vec![Term::new(int(-1), int(-1)), Term::new(int(0), int(2))],
        TailPattern::new(0, int(2), int(1), int(1), rat(1, 2)).unwrap(),
    );
    assert_eq!(p.to_string(), "-x^(-1) + 2 ~ tail(0, 2, 1, 1, 1/2)");
}

#[test]
fn cauchy_limit_of_partial_sums() {
    let seq: SequenceFn = Arc::new(|n| {
        Series::from_pairs((0..=n as i64).map(|k| (int(k), int(1))))
    });
    let modulus: ModulusFn = Arc::new(|g: &Rational| crate::rational::ceil_i64(g).max(0) as usize);
    let lim = cauchy_limit(seq, modulus, &Budget::default()).unwrap();
    assert_eq!(lim.truncate(&int(64)), geometric().truncate(&int(64)));
}

#[test]
fn cauchy_limit_of_constant_sequence() {
    let a = s(&[((-1, 1), 3), ((1, 3), -2)]);
    let a2 = a.clone();
    let seq: SequenceFn = Arc::new(move |_| a2.clone());
    let modulus: ModulusFn = Arc::new(|_| 0);
    let lim = cauchy_limit(seq, modulus, &Budget::default()).unwrap();
    assert_eq!(lim.truncate(&int(64)), a.truncate(&int(64)));
}

#[test]
fn cauchy_violation_is_reported() {
    // alternating sign at exponent 0 never settles
    let seq: SequenceFn = Arc::new(|n| Series::constant(int(if n % 2 == 0 { 1 } else { -1 })));
    let modulus: ModulusFn = Arc::new(|_| 0);
    let err = cauchy_limit(seq, modulus, &Budget::default()).unwrap_err();
    assert!(matches!(err, Error::CauchyViolation { .. }));
}
