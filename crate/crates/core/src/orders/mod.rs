//! Orders of `F(X)` as cut codes.
//!
//! An order is determined by where `X` sits relative to `F`. The code records
//! a real part `p̃`, the lower cut `S` of valuations at which `X` is still
//! approximated by `p̃`, and the side `ε`. Concretely `X = p̃ + ε·t` with
//! `t > 0` of formal valuation `θ` placed at the cut `S`. The induced
//! ((X)) series has entry `p̃_γ` for `γ ∈ S` and `ε∞` elsewhere.

mod extended;
mod sign;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;

pub use extended::ExtendedValuation;
pub(crate) use sign::dominant_terms;
pub use sign::{sign_at, taylor_shift, valuation_class_at, ValuationClass};

use crate::cut::{LowerCutQ, UpperCutQ};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Budget, Rational};
use crate::series::{Series, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i8(s: i8) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, k: usize) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One entry of the induced ((X)) series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Real(Rational),
    PlusInfinity,
    MinusInfinity,
}

impl Entry {
    fn infinite(sign: Sign) -> Entry {
        match sign {
            Sign::Plus => Entry::PlusInfinity,
            Sign::Minus => Entry::MinusInfinity,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrderCode {
    /// `X` above (`+`) or below (`−`) every element of `F`.
    Improper { sign: Sign },
    /// `X` infinitely close to `center`, on the side `sign`.
    Principal { center: Series, sign: Sign },
    /// A gap cut: approximated by `center` exactly on `cut`.
    Gap {
        center: Series,
        cut: LowerCutQ,
        sign: Sign,
    },
}

impl OrderCode {
    pub fn improper(sign: Sign) -> Self {
        OrderCode::Improper { sign }
    }

    pub fn principal(center: Series, sign: Sign) -> Self {
        OrderCode::Principal { center, sign }
    }

    /// Validated gap code. `All` and `Empty` cuts are normalized to the
    /// principal and improper codes; the real part must vanish off the cut.
    pub fn gap(center: Series, cut: LowerCutQ, sign: Sign, budget: &Budget) -> Result<Self> {
        match cut {
            LowerCutQ::All => return Ok(OrderCode::principal(center, sign)),
            LowerCutQ::Empty => {
                if !center.is_zero_within(budget)? {
                    return Err(Error::InvalidCode(
                        "an empty cut admits only the zero real part".into(),
                    ));
                }
                return Ok(OrderCode::improper(sign));
            }
            LowerCutQ::Below { .. } => {}
        }
        if center.is_patterned() {
            return Err(Error::InvalidCode(
                "a patterned real part has cofinal support and cannot end at a cut".into(),
            ));
        }
        let probe = match &cut {
            LowerCutQ::Below { boundary, .. } if boundary >= &budget.depth => {
                boundary + Rational::from_integer(1.into())
            }
            _ => budget.depth.clone(),
        };
        if let Some(t) = center.truncate(&probe).iter().find(|t| !cut.contains(&t.exponent)) {
            return Err(Error::InvalidCode(format!(
                "real part has support at {} outside the cut {}",
                fmt_rational(&t.exponent),
                cut
            )));
        }
        Ok(OrderCode::Gap { center, cut, sign })
    }

    pub fn sign(&self) -> Sign {
        match self {
            OrderCode::Improper { sign }
            | OrderCode::Principal { sign, .. }
            | OrderCode::Gap { sign, .. } => *sign,
        }
    }

    /// `p̃`; zero for improper codes.
    pub fn center(&self) -> Series {
        match self {
            OrderCode::Improper { .. } => Series::zero(),
            OrderCode::Principal { center, .. } | OrderCode::Gap { center, .. } => center.clone(),
        }
    }

    pub fn lower_cut(&self) -> LowerCutQ {
        match self {
            OrderCode::Improper { .. } => LowerCutQ::Empty,
            OrderCode::Principal { .. } => LowerCutQ::All,
            OrderCode::Gap { cut, .. } => cut.clone(),
        }
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        match self {
            OrderCode::Improper { .. } => OrderCode::Improper { sign },
            OrderCode::Principal { center, .. } => OrderCode::Principal {
                center: center.clone(),
                sign,
            },
            OrderCode::Gap { center, cut, .. } => OrderCode::Gap {
                center: center.clone(),
                cut: cut.clone(),
                sign,
            },
        }
    }

    pub fn flipped(&self) -> Self {
        self.with_sign(self.sign().flip())
    }

    /// Entry of the induced ((X)) series at exponent `gamma`.
    pub fn entry(&self, gamma: &Rational) -> Entry {
        match self {
            OrderCode::Improper { sign } => Entry::infinite(*sign),
            OrderCode::Principal { center, .. } => Entry::Real(center.coefficient(gamma)),
            OrderCode::Gap { center, cut, sign } => {
                if cut.contains(gamma) {
                    Entry::Real(center.coefficient(gamma))
                } else {
                    Entry::infinite(*sign)
                }
            }
        }
    }

    /// Entry at the end position `∞`, past every rational exponent.
    pub fn entry_at_end(&self) -> Entry {
        Entry::infinite(self.sign())
    }
}

impl fmt::Display for OrderCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderCode::Improper { sign } => write!(f, "improper({sign})"),
            OrderCode::Principal { center, sign } => write!(f, "principal({sign})({center})"),
            OrderCode::Gap { center, cut, sign } => write!(f, "gap({center}; {cut}; {sign})"),
        }
    }
}

/// Parses and validates an order descriptor such as `gap(0; below 0 incl; +)`.
pub fn make_order_code(descriptor: &str, budget: &Budget) -> Result<OrderCode> {
    crate::parse::parse_order(descriptor, budget)
}

pub fn lower_cut(code: &OrderCode) -> LowerCutQ {
    code.lower_cut()
}

/// Leading term of `a − b` among exponents in `cut`, if any.
pub(crate) fn first_difference(
    a: &Series,
    b: &Series,
    cut: &LowerCutQ,
    budget: &Budget,
) -> Result<Option<Term>> {
    if a.same_representation(b) {
        return Ok(None);
    }
    let d = a - b;
    match cut {
        LowerCutQ::Empty => Ok(None),
        LowerCutQ::Below { boundary, .. } => Ok(d
            .truncate(boundary)
            .into_iter()
            .find(|t| cut.contains(&t.exponent))),
        LowerCutQ::All => d.leading_term(budget),
    }
}

/// Lexicographic comparison of the induced ((X)) series, `−∞ < r < +∞`.
pub fn compare_orders(p: &OrderCode, q: &OrderCode, budget: &Budget) -> Result<Ordering> {
    let (sp, sq) = (p.lower_cut(), q.lower_cut());
    let common = sp.clone().min(sq.clone());
    if let Some(t) = first_difference(&p.center(), &q.center(), &common, budget)? {
        return Ok(if t.coefficient.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        });
    }
    // Real parts agree on the common cut; the shorter one turns infinite first.
    Ok(match sp.cmp(&sq) {
        Ordering::Equal => p.sign().cmp(&q.sign()),
        Ordering::Less => match p.sign() {
            Sign::Plus => Ordering::Greater,
            Sign::Minus => Ordering::Less,
        },
        Ordering::Greater => match q.sign() {
            Sign::Plus => Ordering::Less,
            Sign::Minus => Ordering::Greater,
        },
    })
}

/// Valuations `v(a′ − a)` of pairs of field elements strictly between the two
/// orders. Empty exactly for adjacent codes.
pub fn compute_u(p: &OrderCode, q: &OrderCode, budget: &Budget) -> Result<UpperCutQ> {
    if compare_orders(p, q, budget)? == Ordering::Equal {
        return Err(Error::IdenticalOrders);
    }
    let common = p.lower_cut().min(q.lower_cut());
    Ok(
        match first_difference(&q.center(), &p.center(), &common, budget)? {
            Some(t) => UpperCutQ::above(t.exponent, true),
            None => common.complement(),
        },
    )
}
