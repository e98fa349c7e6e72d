//! Decidable cuts of the value group ℚ.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use crate::rational::{fmt_rational, int, Rational};

/// A downward-closed subset of ℚ with rational (or no) boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LowerCutQ {
    Empty,
    Below { boundary: Rational, inclusive: bool },
    All,
}

/// An upward-closed subset of ℚ with rational (or no) boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UpperCutQ {
    Empty,
    Above { boundary: Rational, inclusive: bool },
    All,
}

impl LowerCutQ {
    pub fn below(boundary: Rational, inclusive: bool) -> Self {
        LowerCutQ::Below {
            boundary,
            inclusive,
        }
    }

    pub fn contains(&self, gamma: &Rational) -> bool {
        match self {
            LowerCutQ::Empty => false,
            LowerCutQ::All => true,
            LowerCutQ::Below {
                boundary,
                inclusive,
            } => gamma < boundary || (*inclusive && gamma == boundary),
        }
    }

    pub fn complement(&self) -> UpperCutQ {
        match self {
            LowerCutQ::Empty => UpperCutQ::All,
            LowerCutQ::All => UpperCutQ::Empty,
            LowerCutQ::Below {
                boundary,
                inclusive,
            } => UpperCutQ::Above {
                boundary: boundary.clone(),
                inclusive: !inclusive,
            },
        }
    }

    pub fn intersects(&self, upper: &UpperCutQ) -> bool {
        match (self, upper) {
            (LowerCutQ::Empty, _) | (_, UpperCutQ::Empty) => false,
            (LowerCutQ::All, _) | (_, UpperCutQ::All) => true,
            (
                LowerCutQ::Below {
                    boundary: b,
                    inclusive: bi,
                },
                UpperCutQ::Above {
                    boundary: a,
                    inclusive: ai,
                },
            ) => a < b || (a == b && *ai && *bi),
        }
    }

    /// Largest rational guaranteed inside the cut near its boundary, if any.
    pub(crate) fn sample_inside(&self) -> Option<Rational> {
        match self {
            LowerCutQ::Empty => None,
            LowerCutQ::All => Some(int(0)),
            LowerCutQ::Below {
                boundary,
                inclusive: true,
            } => Some(boundary.clone()),
            LowerCutQ::Below {
                boundary,
                inclusive: false,
            } => Some(boundary - Rational::one()),
        }
    }

    /// A rational in `larger ∖ self`, preferring the least one when it exists.
    pub(crate) fn pick_in_difference(&self, larger: &LowerCutQ) -> Option<Rational> {
        if self >= larger {
            return None;
        }
        match (self, larger) {
            (LowerCutQ::Empty, l) => l.sample_inside(),
            (
                LowerCutQ::Below {
                    boundary,
                    inclusive: false,
                },
                _,
            ) => Some(boundary.clone()),
            (
                LowerCutQ::Below {
                    boundary: b1,
                    inclusive: true,
                },
                LowerCutQ::All,
            ) => Some(b1 + Rational::one()),
            (
                LowerCutQ::Below {
                    boundary: b1,
                    inclusive: true,
                },
                LowerCutQ::Below {
                    boundary: b2,
                    inclusive: i2,
                },
            ) => Some(if *i2 {
                b2.clone()
            } else {
                (b1 + b2) / int(2)
            }),
            _ => None,
        }
    }
}

impl UpperCutQ {
    pub fn above(boundary: Rational, inclusive: bool) -> Self {
        UpperCutQ::Above {
            boundary,
            inclusive,
        }
    }

    pub fn contains(&self, gamma: &Rational) -> bool {
        match self {
            UpperCutQ::Empty => false,
            UpperCutQ::All => true,
            UpperCutQ::Above {
                boundary,
                inclusive,
            } => gamma > boundary || (*inclusive && gamma == boundary),
        }
    }
}

fn rank(c: &LowerCutQ) -> u8 {
    match c {
        LowerCutQ::Empty => 0,
        LowerCutQ::Below { .. } => 1,
        LowerCutQ::All => 2,
    }
}

/// Inclusion order; lower cuts of ℚ form a chain.
impl Ord for LowerCutQ {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (
                LowerCutQ::Below {
                    boundary: b1,
                    inclusive: i1,
                },
                LowerCutQ::Below {
                    boundary: b2,
                    inclusive: i2,
                },
            ) => b1.cmp(b2).then(i1.cmp(i2)),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl PartialOrd for LowerCutQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LowerCutQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerCutQ::Empty => write!(f, "empty"),
            LowerCutQ::All => write!(f, "all"),
            LowerCutQ::Below {
                boundary,
                inclusive,
            } => write!(
                f,
                "below {} {}",
                fmt_rational(boundary),
                if *inclusive { "incl" } else { "excl" }
            ),
        }
    }
}

impl fmt::Display for UpperCutQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperCutQ::Empty => write!(f, "empty"),
            UpperCutQ::All => write!(f, "all"),
            UpperCutQ::Above {
                boundary,
                inclusive,
            } => write!(
                f,
                "above {} {}",
                fmt_rational(boundary),
                if *inclusive { "incl" } else { "excl" }
            ),
        }
    }
}
