//! Exact computation with orders and ℝ-places of rational function fields
//! `F(X)` over the ordered field `F` of generalized power series with
//! rational exponents.
//!
//! Orders of `F(X)` correspond to Dedekind cuts of `F` and are encoded as
//! [`OrderCode`]s: a real part, a lower cut `S ⊆ ℚ` of valuations and a sign.
//! Two procedures decide whether two orders induce the same ℝ-place: the
//! valuation-cut criterion ([`same_place_su`]) and sign-erased code comparison
//! ([`same_place_code`]). When the places differ, [`separating_element`]
//! produces a certified rational function that is a positive unit at one order
//! and negative at the other.

pub mod cut;
pub mod error;
pub mod orders;
pub mod parse;
pub mod places;
pub mod poly;
pub mod rational;
pub mod series;
pub mod topology;

pub use cut::{LowerCutQ, UpperCutQ};
pub use error::{Error, Result};
pub use orders::{
    compare_orders, compute_u, lower_cut, make_order_code, sign_at, taylor_shift,
    valuation_class_at, Entry, ExtendedValuation, OrderCode, Sign, ValuationClass,
};
pub use places::{
    evaluate_place, order_to_place, same_place_code, same_place_su, separating_element,
    separation_record, verify_separation, Construction, PlaceCode, PlaceValue, SeparationRecord,
    SeparationWitness,
};
pub use poly::{Polynomial, RationalFunctionX};
pub use rational::{Budget, Rational};
pub use series::{cauchy_limit, stitch_limit, Series, TailPattern, Term, ZeroStatus};
pub use topology::{
    cellularity_family, cellularity_member, harrison_decompose, harrison_membership, interval_to_harrison,
    FactoredPolynomial, OrderInterval,
};
