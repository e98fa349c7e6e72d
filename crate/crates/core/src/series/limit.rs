//! Limits of Cauchy sequences in the valuation uniformity.
//!
//! A sequence `n ↦ a^n` is Cauchy with modulus `N` when, for every γ, any two
//! indices `m, n ≥ N(γ)` satisfy `v(a^m − a^n) > γ`, i.e. the two series agree
//! at every exponent `≤ γ`. The limit is assembled block by block along a
//! cofinal sequence `γ_0 < γ_1 < …`: on `[γ_δ, γ_{δ+1})` it copies the
//! coefficients of `a^{σ_δ}`, and below `γ_1` those of `a^{σ_0}`.

use std::sync::Arc;

use num_traits::One;

use super::{Series, Term, ZeroStatus};
use crate::error::{Error, Result};
use crate::rational::{int, Budget, Rational};

pub type SequenceFn = Arc<dyn Fn(usize) -> Series + Send + Sync>;
pub type ModulusFn = Arc<dyn Fn(&Rational) -> usize + Send + Sync>;
pub type CofinalFn = Arc<dyn Fn(usize) -> Rational + Send + Sync>;
pub type IndexFn = Arc<dyn Fn(usize) -> usize + Send + Sync>;

/// The stitched series: coefficient at `q` is `a^{σ_δ}_q` for
/// `q ∈ [γ_δ, γ_{δ+1})` and `a^{σ_0}_q` for `q < γ_1`.
///
/// `cofinal` must be strictly increasing and unbounded.
pub fn stitch_limit(seq: SequenceFn, cofinal: CofinalFn, sigma: IndexFn) -> Series {
    let gamma1 = cofinal(1);
    let base = seq(sigma(0));
    let head = base.truncate_below(&gamma1);
    let (floor, zero) = match head.first() {
        Some(t) => (
            t.exponent.clone(),
            ZeroStatus::NonzeroFrom(t.exponent.clone()),
        ),
        None => (gamma1.clone(), ZeroStatus::Unknown),
    };
    Series::from_oracle(floor, zero, move |g| {
        let mut out: Vec<Term> = seq(sigma(0))
            .truncate(g)
            .into_iter()
            .take_while(|t| t.exponent < gamma1)
            .collect();
        let mut delta = 1usize;
        loop {
            let lo = cofinal(delta);
            if &lo > g {
                break;
            }
            let hi = cofinal(delta + 1);
            let block = seq(sigma(delta));
            out.extend(
                block
                    .truncate(g)
                    .into_iter()
                    .filter(|t| t.exponent >= lo && t.exponent < hi),
            );
            delta += 1;
        }
        out
    })
}

fn agree_through(a: &Series, b: &Series, gamma: &Rational) -> bool {
    a.truncate(gamma) == b.truncate(gamma)
}

/// Limit of a Cauchy sequence given its modulus of convergence.
///
/// Stitches along the cofinal sequence `γ_δ = δ` with `σ_δ = N(γ_{δ+1})`.
/// The modulus must be nondecreasing. Before returning, the Cauchy contract
/// is probed at every stitching level up to the budget depth: `a^{σ_δ}` is
/// compared with `a^{σ_δ + 1}` and with `a^{σ_{δ+1}}` through `γ_{δ+1}`.
pub fn cauchy_limit(seq: SequenceFn, modulus: ModulusFn, budget: &Budget) -> Result<Series> {
    let levels = crate::rational::ceil_i64(&budget.depth).max(1) as usize;
    let sigma_of = |delta: usize| modulus(&int(delta as i64 + 1));
    let mut current = seq(sigma_of(0));
    for delta in 0..levels {
        let gamma = int(delta as i64 + 1);
        let s = sigma_of(delta);
        let next_index = sigma_of(delta + 1);
        let successor = seq(s + 1);
        if !agree_through(&current, &successor, &gamma) {
            return Err(Error::CauchyViolation {
                gamma,
                first: s,
                second: s + 1,
            });
        }
        let next = seq(next_index);
        if next_index >= s && !agree_through(&current, &next, &gamma) {
            return Err(Error::CauchyViolation {
                gamma,
                first: s,
                second: next_index,
            });
        }
        current = next;
    }
    let m = modulus.clone();
    Ok(stitch_limit(
        seq,
        Arc::new(|delta| int(delta as i64)),
        Arc::new(move |delta| m(&(int(delta as i64) + Rational::one()))),
    ))
}
