//! Polynomials and rational functions in `X` with series coefficients.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{Budget, Rational};
use crate::series::Series;

/// `Σ coeffs[k] · X^k`. Trailing coefficients known to be zero are trimmed;
/// lazy coefficients of unknown status are kept, so `len() - 1` is a degree
/// bound rather than the exact degree.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Series>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Series>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Series) -> Self {
        Polynomial::new(vec![c])
    }

    /// `X`.
    pub fn x() -> Self {
        Polynomial::new(vec![Series::zero(), Series::one()])
    }

    /// `X − root`.
    pub fn linear_root(root: &Series) -> Self {
        Polynomial::new(vec![root.neg(), Series::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Series::is_known_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Series {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Upper bound on the degree; `None` for the zero polynomial.
    pub fn degree_bound(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero_within(&self, budget: &Budget) -> Result<bool> {
        for c in &self.coeffs {
            if !c.is_zero_within(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| &self.coefficient(k) + &other.coefficient(k))
                .collect(),
        )
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(Series::neg).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_known_zero() || other.is_known_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Series::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_known_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &Series) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::constant(Series::one()), |acc, _| acc.mul(self))
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, at: &Series) -> Series {
        self.coeffs
            .iter()
            .rev()
            .fold(Series::zero(), |acc, c| &(&acc * at) + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_known_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{k}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `numerator / denominator` with a denominator that is not the zero
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionX {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFunctionX {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_known_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(RationalFunctionX {
            numerator,
            denominator,
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunctionX {
            numerator: p,
            denominator: Polynomial::constant(Series::one()),
        }
    }

    pub fn constant(c: Series) -> Self {
        RationalFunctionX::polynomial(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        RationalFunctionX::polynomial(Polynomial::x())
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalFunctionX {
            numerator: self
                .numerator
                .mul(&other.denominator)
                .add(&other.numerator.mul(&self.denominator)),
            denominator: self.denominator.mul(&other.denominator),
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunctionX {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunctionX {
            numerator: self.numerator.mul(&other.numerator),
            denominator: self.denominator.mul(&other.denominator),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.numerator.is_known_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(RationalFunctionX {
            numerator: self.numerator.mul(&other.denominator),
            denominator: self.denominator.mul(&other.numerator),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunctionX {
            numerator: self.numerator.pow(n),
            denominator: self.denominator.pow(n),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunctionX::polynomial(Polynomial::constant(Series::one())).div(self)
    }

    /// Value at a field element; `None` when the denominator vanishes there.
    pub fn eval(&self, at: &Series, budget: &Budget) -> Result<Option<Series>> {
        let den = self.denominator.eval(at);
        if den.is_zero_within(budget)? {
            return Ok(None);
        }
        Ok(Some(&self.numerator.eval(at) * &den.invert(budget)?))
    }

    /// `(X − a) / (b − a) + 1`-style affine functions `slope·X + intercept`.
    pub fn affine(slope: &Series, intercept: &Series) -> Self {
        RationalFunctionX::polynomial(Polynomial::new(vec![intercept.clone(), slope.clone()]))
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree_bound() == Some(0)
            && self
                .denominator
                .coefficient(0)
                .finite_terms()
                .is_some_and(|t| t.len() == 1 && t[0].exponent.is_zero() && t[0].coefficient == Rational::from_integer(1.into()))
    }
}

impl fmt::Display for RationalFunctionX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn c(n: i64) -> Series {
        Series::constant(int(n))
    }

    #[test]
    fn product_of_linear_factors() {
        let p = Polynomial::linear_root(&c(1)).mul(&Polynomial::linear_root(&c(2)));
        assert_eq!(p.coefficients(), &[c(2), c(-3), c(1)]);
        assert_eq!(p.eval(&c(3)), c(2));
    }

    #[test]
    fn cancellation_trims_degree() {
        let p = Polynomial::x().sub(&Polynomial::x());
        assert!(p.is_known_zero());
        assert_eq!(p.degree_bound(), None);
    }

    #[test]
    fn rational_function_eval() {
        let f = RationalFunctionX::x().recip().unwrap();
        let b = Budget::default();
        assert_eq!(f.eval(&c(4), &b).unwrap().unwrap(), Series::constant(crate::rational::rat(1, 4)));
        assert!(f.eval(&Series::zero(), &b).unwrap().is_none());
        assert!(RationalFunctionX::x().div(&RationalFunctionX::constant(Series::zero())).is_err());
    }
}
