//! Text grammars for series, rational functions, order descriptors and
//! factored polynomials.
//!
//! ```text
//! series    := expr [ "~" "tail" "(" n0 "," α "," β "," c "," ρ ")" ]
//! function  := expr                       (x: series variable, X: function variable)
//! expr      := term { ("+" | "-") term }
//! term      := unary { ("*" | "/") unary }
//! unary     := ("+" | "-") unary | power
//! power     := atom [ "^" exponent ]
//! order     := "improper(" sign ")" | "principal(" sign ")(" series ")"
//!            | "gap(" series ";" cut ";" sign ")"
//! cut       := "all" | "empty" | "below" q ("incl" | "excl")
//! factored  := "factored(" q ";" [series {"," series}] ";" ["(" series "," series ")" {"," ...}] ")"
//! ```

use num_traits::{One, Signed, ToPrimitive};

use crate::cut::LowerCutQ;
use crate::error::{Error, Result};
use crate::orders::{OrderCode, Sign};
use crate::poly::{Polynomial, RationalFunctionX};
use crate::rational::{Budget, Rational};
use crate::series::{Series, TailPattern};
use crate::topology::FactoredPolynomial;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

impl Lexer {
    fn new(src: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let mut it = src.char_indices().peekable();
        while let Some(&(i, ch)) = it.peek() {
            if ch.is_whitespace() {
                it.next();
            } else if ch.is_ascii_digit() {
                let mut n: u64 = 0;
                while let Some(&(_, d)) = it.peek() {
                    let Some(v) = d.to_digit(10) else { break };
                    n = match n.checked_mul(10).and_then(|n| n.checked_add(v as u64)) {
                        Some(n) => n,
                        None => return err(i, "integer literal too large"),
                    };
                    it.next();
                }
                toks.push((i, Tok::Num(n)));
            } else if ch.is_alphabetic() || ch == '_' {
                let mut s = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push((i, Tok::Ident(s)));
            } else if "+-*/^()~,;".contains(ch) {
                toks.push((i, Tok::Sym(ch)));
                it.next();
            } else if ch == '−' {
                toks.push((i, Tok::Sym('-')));
                it.next();
            } else {
                return err(i, format!("unexpected character {ch:?}"));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            err(self.offset(), format!("expected '{c}'"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == name => {
                self.pos += 1;
                Ok(())
            }
            _ => err(self.offset(), format!("expected '{name}'")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => err(self.toks.get(self.pos - 1).map_or(self.end, |t| t.0), "expected a keyword"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            err(self.offset(), "trailing input")
        } else {
            Ok(())
        }
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let at = self.offset();
        let Some(Tok::Num(n)) = self.next() else {
            return err(at, "expected a number");
        };
        let mut q = Rational::from_integer(n.into());
        // `p/q` binds as a literal only directly between two integers
        if self.peek() == Some(&Tok::Sym('/')) {
            if let Some((_, Tok::Num(d))) = self.toks.get(self.pos + 1) {
                let d = *d;
                if d == 0 {
                    return err(self.offset(), "zero denominator");
                }
                self.pos += 2;
                q /= Rational::from_integer(d.into());
            }
        }
        Ok(q)
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let q = self.unsigned_rational()?;
        Ok(if neg { -q } else { q })
    }

    fn sign(&mut self) -> Result<Sign> {
        if self.eat_sym('+') {
            Ok(Sign::Plus)
        } else if self.eat_sym('-') {
            Ok(Sign::Minus)
        } else {
            err(self.offset(), "expected '+' or '-'")
        }
    }
}

/// Parsed value: a rational function, plus whether `X` occurred.
struct Val {
    f: RationalFunctionX,
    uses_x: bool,
}

impl Val {
    fn series(s: Series) -> Val {
        Val {
            f: RationalFunctionX::constant(s),
            uses_x: false,
        }
    }
}

fn constant_of(p: &Polynomial) -> Option<Series> {
    match p.degree_bound() {
        None => Some(Series::zero()),
        Some(0) => Some(p.coefficient(0)),
        _ => None,
    }
}

struct Parser<'b> {
    lx: Lexer,
    budget: &'b Budget,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat_sym('+') {
                let r = self.term()?;
                acc = Val {
                    f: acc.f.add(&r.f),
                    uses_x: acc.uses_x || r.uses_x,
                };
            } else if self.lx.eat_sym('-') {
                let r = self.term()?;
                acc = Val {
                    f: acc.f.sub(&r.f),
                    uses_x: acc.uses_x || r.uses_x,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            if self.lx.eat_sym('*') {
                let r = self.unary()?;
                acc = Val {
                    f: acc.f.mul(&r.f),
                    uses_x: acc.uses_x || r.uses_x,
                };
            } else if self.lx.peek() == Some(&Tok::Sym('/')) {
                let at = self.lx.offset();
                self.lx.next();
                let r = self.unary()?;
                acc = Val {
                    f: self.divide(&acc.f, &r.f, at)?,
                    uses_x: acc.uses_x || r.uses_x,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, a: &RationalFunctionX, b: &RationalFunctionX, at: usize) -> Result<RationalFunctionX> {
        if b.numerator.is_known_zero() {
            return err(at, "division by zero");
        }
        // exact scaling when dividing by a nonzero monomial constant
        if let (Some(n), Some(d)) = (constant_of(&b.numerator), constant_of(&b.denominator)) {
            if n.finite_terms().is_some_and(|t| t.len() == 1) {
                let inv = &n.invert(self.budget)? * &d;
                return Ok(RationalFunctionX {
                    numerator: a.numerator.scale(&inv),
                    denominator: a.denominator.clone(),
                });
            }
        }
        a.div(b)
    }

    fn unary(&mut self) -> Result<Val> {
        if self.lx.eat_sym('-') {
            let v = self.unary()?;
            return Ok(Val {
                f: v.f.neg(),
                uses_x: v.uses_x,
            });
        }
        if self.lx.eat_sym('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val> {
        let at = self.lx.offset();
        match self.lx.peek().cloned() {
            Some(Tok::Ident(s)) if s == "x" => {
                self.lx.next();
                let e = if self.lx.eat_sym('^') {
                    if self.lx.eat_sym('(') {
                        let q = self.lx.signed_rational()?;
                        self.lx.expect_sym(')')?;
                        q
                    } else {
                        self.lx.signed_rational()?
                    }
                } else {
                    Rational::one()
                };
                Ok(Val::series(Series::monomial(Rational::one(), e)))
            }
            _ => {
                let base = self.atom()?;
                if !self.lx.eat_sym('^') {
                    return Ok(base);
                }
                let paren = self.lx.eat_sym('(');
                let e_at = self.lx.offset();
                let e = self.lx.signed_rational()?;
                if paren {
                    self.lx.expect_sym(')')?;
                }
                if !e.is_integer() {
                    return err(e_at, "only integer powers are allowed here");
                }
                let k = e.to_integer().abs().to_u32().ok_or(Error::Parse {
                    offset: e_at,
                    message: "power too large".into(),
                })?;
                let p = base.f.pow(k);
                let f = if e.is_negative() {
                    p.recip().map_err(|_| Error::Parse {
                        offset: at,
                        message: "negative power of zero".into(),
                    })?
                } else {
                    p
                };
                Ok(Val {
                    f,
                    uses_x: base.uses_x,
                })
            }
        }
    }

    fn atom(&mut self) -> Result<Val> {
        let at = self.lx.offset();
        match self.lx.peek().cloned() {
            Some(Tok::Num(_)) => {
                let q = self.lx.unsigned_rational()?;
                Ok(Val::series(Series::constant(q)))
            }
            Some(Tok::Ident(s)) if s == "X" => {
                self.lx.next();
                Ok(Val {
                    f: RationalFunctionX::x(),
                    uses_x: true,
                })
            }
            Some(Tok::Sym('(')) => {
                self.lx.next();
                let v = self.expr()?;
                self.lx.expect_sym(')')?;
                Ok(v)
            }
            Some(Tok::Ident(s)) => err(at, format!("unknown identifier {s:?}")),
            _ => err(at, "expected a term"),
        }
    }

    /// A series expression with optional tail, stopping at `)`, `;` or `,`.
    fn series(&mut self) -> Result<Series> {
        let at = self.lx.offset();
        let v = self.expr()?;
        if v.uses_x {
            return err(at, "the function variable X cannot occur in a series");
        }
        let num = constant_of(&v.f.numerator).unwrap_or_default();
        let den = constant_of(&v.f.denominator).unwrap_or_else(Series::one);
        let head = if den == Series::one() {
            num
        } else {
            &num * &den.invert(self.budget)?
        };
        if !self.lx.eat_sym('~') {
            return Ok(head);
        }
        let tail_at = self.lx.offset();
        self.lx.expect_ident("tail")?;
        self.lx.expect_sym('(')?;
        let n0_at = self.lx.offset();
        let n0 = match self.lx.next() {
            Some(Tok::Num(n)) => n,
            _ => return err(n0_at, "expected the tail start index"),
        };
        let mut vals = Vec::new();
        for _ in 0..4 {
            self.lx.expect_sym(',')?;
            vals.push(self.lx.signed_rational()?);
        }
        self.lx.expect_sym(')')?;
        let [alpha, beta, c, rho]: [Rational; 4] = vals.try_into().expect("four values");
        let tail = TailPattern::new(n0, alpha, beta, c, rho).map_err(|e| Error::Parse {
            offset: tail_at,
            message: e.to_string(),
        })?;
        let Some(terms) = head.finite_terms() else {
            return err(at, "the head of a patterned series must be finite");
        };
        Ok(Series::patterned(terms.to_vec(), tail))
    }

    fn cut(&mut self) -> Result<LowerCutQ> {
        let at = self.lx.offset();
        match self.lx.ident()?.as_str() {
            "all" => Ok(LowerCutQ::All),
            "empty" => Ok(LowerCutQ::Empty),
            "below" => {
                let q = self.lx.signed_rational()?;
                let kind_at = self.lx.offset();
                match self.lx.ident()?.as_str() {
                    "incl" => Ok(LowerCutQ::below(q, true)),
                    "excl" => Ok(LowerCutQ::below(q, false)),
                    _ => err(kind_at, "expected 'incl' or 'excl'"),
                }
            }
            _ => err(at, "expected 'all', 'empty' or 'below'"),
        }
    }

    fn order(&mut self) -> Result<OrderCode> {
        let at = self.lx.offset();
        let code = match self.lx.ident()?.as_str() {
            "improper" => {
                self.lx.expect_sym('(')?;
                let s = self.lx.sign()?;
                self.lx.expect_sym(')')?;
                OrderCode::improper(s)
            }
            "principal" => {
                self.lx.expect_sym('(')?;
                let s = self.lx.sign()?;
                self.lx.expect_sym(')')?;
                self.lx.expect_sym('(')?;
                let a = self.series()?;
                self.lx.expect_sym(')')?;
                OrderCode::principal(a, s)
            }
            "gap" => {
                self.lx.expect_sym('(')?;
                let p = self.series()?;
                self.lx.expect_sym(';')?;
                let cut = self.cut()?;
                if !self.lx.eat_sym(';') {
                    return err(
                        self.lx.offset(),
                        "a gap code needs a sign; unsigned symbols are not orders",
                    );
                }
                let s = self.lx.sign()?;
                self.lx.expect_sym(')')?;
                OrderCode::gap(p, cut, s, self.budget)?
            }
            other => return err(at, format!("unknown order kind {other:?}")),
        };
        Ok(code)
    }

    fn factored(&mut self) -> Result<FactoredPolynomial> {
        self.lx.expect_ident("factored")?;
        self.lx.expect_sym('(')?;
        let k = self.lx.signed_rational()?;
        self.lx.expect_sym(';')?;
        let mut roots = Vec::new();
        if !self.lx.eat_sym(';') {
            loop {
                roots.push(self.series()?);
                if self.lx.eat_sym(';') {
                    break;
                }
                self.lx.expect_sym(',')?;
            }
        }
        let mut quads = Vec::new();
        if !self.lx.eat_sym(')') {
            loop {
                self.lx.expect_sym('(')?;
                let c = self.series()?;
                self.lx.expect_sym(',')?;
                let d = self.series()?;
                self.lx.expect_sym(')')?;
                quads.push((c, d));
                if self.lx.eat_sym(')') {
                    break;
                }
                self.lx.expect_sym(',')?;
            }
        }
        FactoredPolynomial::new(k, roots, quads, self.budget)
    }
}

fn parser<'b>(src: &str, budget: &'b Budget) -> Result<Parser<'b>> {
    Ok(Parser {
        lx: Lexer::new(src)?,
        budget,
    })
}

pub fn parse_series(src: &str, budget: &Budget) -> Result<Series> {
    let mut p = parser(src, budget)?;
    let s = p.series()?;
    p.lx.finish()?;
    Ok(s)
}

pub fn parse_function(src: &str, budget: &Budget) -> Result<RationalFunctionX> {
    let mut p = parser(src, budget)?;
    let v = p.expr()?;
    p.lx.finish()?;
    Ok(v.f)
}

pub fn parse_order(src: &str, budget: &Budget) -> Result<OrderCode> {
    let mut p = parser(src, budget)?;
    let c = p.order()?;
    p.lx.finish()?;
    Ok(c)
}

pub fn parse_cut(src: &str, budget: &Budget) -> Result<LowerCutQ> {
    let mut p = parser(src, budget)?;
    let c = p.cut()?;
    p.lx.finish()?;
    Ok(c)
}

pub fn parse_factored(src: &str, budget: &Budget) -> Result<FactoredPolynomial> {
    let mut p = parser(src, budget)?;
    let f = p.factored()?;
    p.lx.finish()?;
    Ok(f)
}

pub fn parse_rational(src: &str) -> Result<Rational> {
    let mut lx = Lexer::new(src)?;
    let q = lx.signed_rational()?;
    lx.finish()?;
    Ok(q)
}
