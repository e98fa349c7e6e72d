use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;

use rplace::parse::parse_series;
use rplace::rational::{int, rat};
use rplace::{Budget, Rational, Series, Term};

fn finite() -> impl Strategy<Value = Series> {
    prop::collection::vec((-8i64..=8, -5i64..=5, 1i64..=3), 0..5)
        .prop_map(|v| Series::from_pairs(v.into_iter().map(|(e, n, d)| (rat(e, 2), rat(n, d)))))
}

fn nonzero() -> impl Strategy<Value = Series> {
    finite().prop_filter("nonzero", |s| !s.is_known_zero())
}

fn depth() -> Rational {
    int(24)
}

proptest! {
    #[test]
    fn ring_axioms(a in finite(), b in finite(), c in finite()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_known_zero());
    }

    #[test]
    fn inverse_and_valuation(a in nonzero(), b in nonzero()) {
        let budget = Budget::default();
        let inv = a.invert(&budget).unwrap();
        prop_assert_eq!((&a * &inv).truncate(&depth()), vec![Term::new(Rational::zero(), Rational::one())]);
        let (va, vb) = (a.valuation(&budget).unwrap().unwrap(), b.valuation(&budget).unwrap().unwrap());
        prop_assert_eq!((&a * &b).valuation(&budget).unwrap(), Some(&va + &vb));
        prop_assert_eq!(inv.valuation(&budget).unwrap(), Some(-va));
    }

    #[test]
    fn order_matches_sign_of_difference(a in finite(), b in finite()) {
        let budget = Budget::default();
        let expected = match (&a - &b).sign(&budget).unwrap() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        };
        prop_assert_eq!(a.compare(&b, &budget).unwrap(), expected);
    }

    #[test]
    fn display_parses_back(a in finite()) {
        let parsed = parse_series(&a.to_string(), &Budget::default()).unwrap();
        prop_assert_eq!(parsed, a);
    }
}

#[test]
fn geometric_series_inverts_one_minus_x() {
    let budget = Budget::default();
    let g = parse_series("0 ~ tail(0, 0, 1, 1, 1)", &budget).unwrap();
    let one_minus_x = &Series::one() - &Series::x();
    assert_eq!((&g * &one_minus_x).truncate(&int(40)), vec![Term::new(int(0), int(1))]);
    assert_eq!(one_minus_x.invert(&budget).unwrap().truncate(&int(10)), g.truncate(&int(10)));
}
