//! Valuations extended by the formal displacement `θ = v(X − p̃)`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::cut::LowerCutQ;
use crate::rational::{fmt_rational, Rational};

/// `γ + n·θ`, where `θ` sits strictly above every rational of the cut `S`
/// and strictly below every rational outside it. `γ = None` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedValuation {
    pub gamma: Option<Rational>,
    pub n: i64,
}

impl ExtendedValuation {
    pub fn new(gamma: Rational, n: i64) -> Self {
        ExtendedValuation {
            gamma: Some(gamma),
            n,
        }
    }

    pub fn infinite() -> Self {
        ExtendedValuation { gamma: None, n: 0 }
    }

    pub fn zero() -> Self {
        ExtendedValuation::new(Rational::zero(), 0)
    }

    pub fn is_infinite(&self) -> bool {
        self.gamma.is_none()
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (&self.gamma, &other.gamma) {
            (Some(a), Some(b)) => ExtendedValuation::new(a - b, self.n - other.n),
            _ => ExtendedValuation::infinite(),
        }
    }

    /// Order of the extended group relative to the cut `S`.
    ///
    /// For distinct `n` no tie is possible: `θ` is not rational, so
    /// `(γ₁ − γ₂)/(n₂ − n₁)` lies strictly on one side of it.
    pub fn cmp_at(&self, other: &Self, cut: &LowerCutQ) -> Ordering {
        let (g1, g2) = match (&self.gamma, &other.gamma) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(a), Some(b)) => (a, b),
        };
        if self.n == other.n {
            return g1.cmp(g2);
        }
        let dn = other.n - self.n;
        let r = (g1 - g2) / Rational::from_integer(dn.into());
        // γ₁ + n₁θ < γ₂ + n₂θ  ⇔  γ₁ − γ₂ < (n₂ − n₁)θ
        let less = if dn > 0 {
            cut.contains(&r)
        } else {
            !cut.contains(&r)
        };
        if less {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for ExtendedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.gamma {
            None => write!(f, "inf"),
            Some(g) if self.n == 0 => write!(f, "{}", fmt_rational(g)),
            Some(g) => write!(f, "{} + {}θ", fmt_rational(g), self.n),
        }
    }
}
