//! Test support: the small exhaustive code corpus and an independent model
//! of it on a half-integer exponent grid.
#![allow(dead_code)]

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rplace::rational::{int, rat};
use rplace::{Budget, LowerCutQ, OrderCode, Rational, Series, Sign, TailPattern};

pub type Q = Ratio<i64>;

/// Finite element with exponents stored doubled (`2e`), sorted and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem(pub Vec<(i64, Q)>);

impl Elem {
    pub fn zero() -> Elem {
        Elem(Vec::new())
    }

    pub fn from_terms(mut terms: Vec<(i64, Q)>) -> Elem {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, Q)> = Vec::new();
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Elem(out)
    }

    pub fn add(&self, other: &Elem) -> Elem {
        Elem::from_terms(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn add_monomial(&self, e2: i64, c: Q) -> Elem {
        let mut t = self.0.clone();
        t.push((e2, c));
        Elem::from_terms(t)
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&Elem(other.0.iter().map(|(e, c)| (*e, -*c)).collect()))
    }

    pub fn coefficient(&self, e2: i64) -> Q {
        self.0
            .iter()
            .find(|t| t.0 == e2)
            .map_or(Q::zero(), |t| t.1)
    }

    /// Doubled valuation; `None` for zero.
    pub fn valuation2(&self) -> Option<i64> {
        self.0.first().map(|t| t.0)
    }

    pub fn truncations(&self) -> Vec<Elem> {
        (0..=self.0.len()).map(|k| Elem(self.0[..k].to_vec())).collect()
    }

    pub fn to_series(&self) -> Series {
        Series::from_pairs(
            self.0
                .iter()
                .map(|(e, c)| (rat(*e, 2), rat(*c.numer(), *c.denom()))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MCut {
    Empty,
    Below(i64, bool),
    All,
}

impl MCut {
    pub fn contains2(&self, e2: i64) -> bool {
        match self {
            MCut::Empty => false,
            MCut::All => true,
            MCut::Below(b, incl) => e2 < 2 * b || (*incl && e2 == 2 * b),
        }
    }

    pub fn to_cut(&self) -> LowerCutQ {
        match self {
            MCut::Empty => LowerCutQ::Empty,
            MCut::All => LowerCutQ::All,
            MCut::Below(b, incl) => LowerCutQ::below(int(*b), *incl),
        }
    }
}

/// Model of an order code: `X` sits right after `center` on the cut, on side `plus`.
#[derive(Clone, Debug)]
pub struct Model {
    pub center: Elem,
    pub cut: MCut,
    pub plus: bool,
}

impl Model {
    pub fn to_code(&self) -> OrderCode {
        let sign = if self.plus { Sign::Plus } else { Sign::Minus };
        match self.cut {
            MCut::Empty => OrderCode::improper(sign),
            MCut::All => OrderCode::principal(self.center.to_series(), sign),
            _ => OrderCode::gap(self.center.to_series(), self.cut.to_cut(), sign, &Budget::default())
                .expect("corpus codes are valid"),
        }
    }

    /// `a` lies below the order: first disagreement inside the cut decides,
    /// otherwise the side does.
    pub fn above_elem(&self, a: &Elem) -> bool {
        let mut pos: Vec<i64> = a.0.iter().chain(self.center.0.iter()).map(|t| t.0).collect();
        pos.sort_unstable();
        pos.dedup();
        for e in pos {
            if !self.cut.contains2(e) {
                break;
            }
            let (x, y) = (a.coefficient(e), self.center.coefficient(e));
            if x != y {
                return x < y;
            }
        }
        self.plus
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn real_parts(exps: &[i64]) -> Vec<Elem> {
    let coeffs = [-2, -1, 1, 2];
    let mut out = vec![Elem::zero()];
    for (i, &e) in exps.iter().enumerate() {
        for &c in &coeffs {
            out.push(Elem(vec![(2 * e, q(c))]));
        }
        for &f in &exps[i + 1..] {
            for &c in &coeffs {
                for &d in &coeffs {
                    out.push(Elem(vec![(2 * e, q(c)), (2 * f, q(d))]));
                }
            }
        }
    }
    out
}

/// All codes with real parts of at most two terms, exponents in `−2..=2`,
/// coefficients `±1, ±2`, and onsets `All`, `Empty`, `Below(q, ·)` for
/// `q ∈ {−1, 0, 1}`.
pub fn corpus() -> Vec<Model> {
    let all_exps: Vec<i64> = (-2..=2).collect();
    let mut cuts = vec![MCut::Empty, MCut::All];
    for b in -1..=1 {
        cuts.push(MCut::Below(b, true));
        cuts.push(MCut::Below(b, false));
    }
    let mut out = Vec::new();
    for cut in cuts {
        let exps: Vec<i64> = all_exps.iter().copied().filter(|&e| cut.contains2(2 * e)).collect();
        for center in real_parts(&exps) {
            for plus in [false, true] {
                out.push(Model {
                    center: center.clone(),
                    cut: cut.clone(),
                    plus,
                });
            }
        }
    }
    out
}

/// Candidate elements near two codes: truncations of both real parts, each
/// displaced by one monomial on the half-integer grid `−4..=4`.
pub fn candidates(p: &Model, r: &Model) -> Vec<Elem> {
    let coeffs = [q(-2), q(-1), Q::new(-1, 2), Q::new(1, 2), q(1), q(2)];
    let mut bases = p.center.truncations();
    bases.extend(r.center.truncations());
    bases.sort_by(|a, b| a.0.cmp(&b.0));
    bases.dedup();
    let mut out = Vec::new();
    for b in &bases {
        out.push(b.clone());
        for e2 in -8..=8 {
            for c in &coeffs {
                out.push(b.add_monomial(e2, *c));
            }
        }
    }
    out
}

/// Gluing decided from witnesses in the finite-support grid alone: equal
/// cuts and no pair of elements strictly between the orders whose difference
/// has valuation inside the cut.
pub fn glued_over_grid(p: &Model, r: &Model) -> bool {
    if p.cut != r.cut {
        return false;
    }
    let coeffs = [q(-2), q(-1), Q::new(-1, 2), Q::new(1, 2), q(1), q(2)];
    let cands = candidates(p, r);
    // only one orientation has anything strictly between
    for (lo, hi) in [(p, r), (r, p)] {
        let inside = |a: &Elem| !lo.above_elem(a) && hi.above_elem(a);
        for a in cands.iter().filter(|a| inside(a)) {
            for g2 in -8..=8 {
                if !lo.cut.contains2(g2) {
                    continue;
                }
                if coeffs.iter().any(|c| inside(&a.add_monomial(g2, *c))) {
                    return false;
                }
            }
        }
    }
    true
}

/// An explicit field element on the `X` side of the order, `1/n`-close to the
/// cut: the sign of a polynomial at the order equals its sign at this point
/// for all large `n`.
pub fn witness_point(code: &OrderCode, n: i64) -> Series {
    let nn = int(n);
    let inv = rat(1, n);
    let side = code.sign().as_i8() as i64;
    let disp = match code.lower_cut() {
        LowerCutQ::All => Series::monomial(int(side), nn),
        LowerCutQ::Empty => Series::monomial(int(side), -nn),
        LowerCutQ::Below { boundary, inclusive } => {
            // valuation of X − p̃ sits just above (incl) or just below (excl) the boundary
            let e = if inclusive { &boundary + &inv } else { &boundary - &inv };
            Series::monomial(int(side), e)
        }
    };
    &code.center() + &disp
}

/// Random finite-support element: up to `max_terms` terms with exponents of
/// denominator at most 2 in `[lo, hi]` and small coefficients.
pub fn random_finite(rng: &mut ChaCha8Rng, max_terms: usize, lo: i64, hi: i64) -> Series {
    let k = rng.gen_range(1..=max_terms);
    Series::from_pairs((0..k).map(|_| {
        let e = rat(rng.gen_range(2 * lo..=2 * hi), 2);
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        (e, rat(c, rng.gen_range(1..=2)))
    }))
}

/// Random series: finite, or a finite head plus a geometric tail.
pub fn random_series(rng: &mut ChaCha8Rng) -> Series {
    let head = random_finite(rng, 3, -2, 2);
    if rng.gen_bool(0.5) {
        return head;
    }
    let alpha = rat(rng.gen_range(-4..=6), 2);
    let beta = rat(rng.gen_range(1..=4), 2);
    let c = rat(if rng.gen_bool(0.5) { 1 } else { -2 }, rng.gen_range(1..=2));
    let rho = rat(if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
    let tail = TailPattern::new(0, alpha, beta, c, rho).expect("valid tail");
    Series::patterned(head.finite_terms().unwrap().to_vec(), tail)
}

pub fn is_one(c: &Rational) -> bool {
    c.is_one()
}

pub fn positive(c: &Rational) -> bool {
    c.is_positive()
}
