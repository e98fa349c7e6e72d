//! Harrison sets, order intervals and the cellularity family.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cut::LowerCutQ;
use crate::error::{Error, Result};
use crate::orders::{compare_orders, sign_at, OrderCode, Sign};
use crate::poly::{Polynomial, RationalFunctionX};
use crate::rational::{fmt_rational, int, rat, Budget, Rational};
use crate::series::Series;

/// Interval of orders, open in `≺`. Improper endpoints are the ends of the
/// order space and count as included.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderInterval {
    pub lower: OrderCode,
    pub upper: OrderCode,
}

impl OrderInterval {
    pub fn new(lower: OrderCode, upper: OrderCode, budget: &Budget) -> Result<Self> {
        if compare_orders(&lower, &upper, budget)? != Ordering::Less {
            return Err(Error::InvalidCode(format!(
                "interval endpoints out of order: {lower} and {upper}"
            )));
        }
        Ok(OrderInterval { lower, upper })
    }

    /// The whole order space.
    pub fn everything() -> Self {
        OrderInterval {
            lower: OrderCode::improper(Sign::Minus),
            upper: OrderCode::improper(Sign::Plus),
        }
    }

    pub fn contains(&self, code: &OrderCode, budget: &Budget) -> Result<bool> {
        let lo = compare_orders(&self.lower, code, budget)?;
        let hi = compare_orders(code, &self.upper, budget)?;
        let closed_lo = matches!(self.lower, OrderCode::Improper { sign: Sign::Minus });
        let closed_hi = matches!(self.upper, OrderCode::Improper { sign: Sign::Plus });
        Ok((lo == Ordering::Less || (closed_lo && lo == Ordering::Equal))
            && (hi == Ordering::Less || (closed_hi && hi == Ordering::Equal)))
    }

    pub fn to_json(&self) -> Value {
        json!({"lower": self.lower.to_string(), "upper": self.upper.to_string()})
    }
}

impl fmt::Display for OrderInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `constant · Π(X − rᵢ) · Π((X − cⱼ)² + dⱼ²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredPolynomial {
    pub constant: Rational,
    pub roots: Vec<Series>,
    pub quadratics: Vec<(Series, Series)>,
}

impl FactoredPolynomial {
    pub fn new(
        constant: Rational,
        roots: Vec<Series>,
        quadratics: Vec<(Series, Series)>,
        budget: &Budget,
    ) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::ZeroFunction);
        }
        for (_, d) in &quadratics {
            if d.is_zero_within(budget)? {
                return Err(Error::InvalidSeries(
                    "definite quadratic factor needs d ≠ 0".into(),
                ));
            }
        }
        Ok(FactoredPolynomial {
            constant,
            roots,
            quadratics,
        })
    }

    pub fn expand(&self) -> Polynomial {
        let mut p = Polynomial::constant(Series::constant(self.constant.clone()));
        for r in &self.roots {
            p = p.mul(&Polynomial::linear_root(r));
        }
        for (c, d) in &self.quadratics {
            let shifted = Polynomial::linear_root(c);
            let q = shifted.mul(&shifted).add(&Polynomial::constant(d * d));
            p = p.mul(&q);
        }
        p
    }

    pub fn to_function(&self) -> RationalFunctionX {
        RationalFunctionX::polynomial(self.expand())
    }
}

impl fmt::Display for FactoredPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        let quads: Vec<String> = self
            .quadratics
            .iter()
            .map(|(c, d)| format!("({c}, {d})"))
            .collect();
        write!(
            f,
            "factored({}; {}; {})",
            fmt_rational(&self.constant),
            roots.join(", "),
            quads.join(", ")
        )
    }
}

/// `f ∈ P`, i.e. `f` is positive at the order.
pub fn harrison_membership(f: &RationalFunctionX, code: &OrderCode, budget: &Budget) -> Result<bool> {
    Ok(sign_at(f, code, budget)? == Sign::Plus)
}

/// Maximal intervals on which `f` is positive, sorted and disjoint.
pub fn harrison_decompose(f: &FactoredPolynomial, budget: &Budget) -> Result<Vec<OrderInterval>> {
    let mut roots = f.roots.clone();
    let mut failure = None;
    roots.sort_by(|a, b| match a.compare(b, budget) {
        Ok(o) => o,
        Err(e) => {
            failure.get_or_insert(e);
            Ordering::Equal
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    for w in roots.windows(2) {
        if w[0].compare(&w[1], budget)? == Ordering::Equal {
            return Err(Error::DuplicateRoot(w[0].to_string()));
        }
    }
    let k = roots.len();
    let mut out = Vec::new();
    // segment i lies between roots[i-1] and roots[i]; k - i roots above it
    for i in 0..=k {
        let positive = f.constant.is_positive() == ((k - i) % 2 == 0);
        if !positive {
            continue;
        }
        let lower = match i {
            0 => OrderCode::improper(Sign::Minus),
            _ => OrderCode::principal(roots[i - 1].clone(), Sign::Minus),
        };
        let upper = if i == k {
            OrderCode::improper(Sign::Plus)
        } else {
            OrderCode::principal(roots[i].clone(), Sign::Plus)
        };
        out.push(OrderInterval { lower, upper });
    }
    Ok(out)
}

/// `−(X − a)(X − b)`, positive exactly strictly between the principal
/// endpoints.
pub fn interval_to_harrison(iv: &OrderInterval, budget: &Budget) -> Result<FactoredPolynomial> {
    let (a, b) = match (&iv.lower, &iv.upper) {
        (OrderCode::Principal { center: a, .. }, OrderCode::Principal { center: b, .. }) => (a, b),
        _ => {
            return Err(Error::UnsupportedEndpoint(format!(
                "only principal endpoints are supported, got {iv}"
            )))
        }
    };
    if a.compare(b, budget)? != Ordering::Less {
        return Err(Error::UnsupportedEndpoint(format!(
            "endpoints {a} and {b} do not bound a nondegenerate interval"
        )));
    }
    FactoredPolynomial::new(-Rational::one(), vec![a.clone(), b.clone()], Vec::new(), budget)
}

fn cell_cut() -> LowerCutQ {
    LowerCutQ::below(int(1), true)
}

/// `(t − x)⁺` to `(t + x)⁻` with `∞` past exponent 1: every order inside has
/// exponent-0 entry `t` and exponent-1 entry in `(−1, 1)`.
pub fn cellularity_family(t: &Rational) -> OrderInterval {
    let gap = |offset: i64, sign| OrderCode::Gap {
        center: Series::from_pairs([(int(0), t.clone()), (int(1), int(offset))]),
        cut: cell_cut(),
        sign,
    };
    OrderInterval {
        lower: gap(-1, Sign::Plus),
        upper: gap(1, Sign::Minus),
    }
}

/// An order inside `cellularity_family(t)`.
pub fn cellularity_member(t: &Rational) -> OrderCode {
    OrderCode::Gap {
        center: Series::from_pairs([(int(0), t.clone()), (int(1), rat(1, 2))]),
        cut: cell_cut(),
        sign: Sign::Plus,
    }
}
