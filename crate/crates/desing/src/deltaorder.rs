//! Derivative ideals, maximal order and order loci.
//!
//! `Δ(I)` is `I` plus all first partials of its generators. The points where
//! `I` has order at least `b` are exactly `V(Δ^{b-1}(I))`.

use crate::error::{Error, Result};
use crate::exactpoly::{yun, Ideal, Polynomial, Rational};

/// `[Δ⁰(I), Δ¹(I), …]`, ending at the first unit ideal or at the cap.
#[derive(Debug, Clone)]
pub struct DeltaChain {
    pub powers: Vec<Ideal>,
}

pub fn delta_extend(ideal: &Ideal) -> Ideal {
    let n = ideal.nvars();
    let mut gens: Vec<Polynomial> = ideal.gens().to_vec();
    for g in ideal.gens() {
        for i in 0..n {
            let d = g.derivative(i);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ideal::new(n, gens)
}

/// `Δ^k(I)` as a reduced ideal.
pub fn delta_power(ideal: &Ideal, k: u64) -> Ideal {
    let n = ideal.nvars();
    let base = ideal.reduced();
    if k == 0 || base.is_trivial() || base.is_zero() {
        return base;
    }
    if k >= order_bound(&base) {
        return Ideal::unit(n);
    }
    let used = base.vars_used();
    if used.len() == 1 && base.gens().len() == 1 {
        // Principal in one variable: lower every multiplicity by k.
        let v = used[0];
        let mut out = Polynomial::one(n);
        for (i, q) in yun(&base.gens()[0], v).iter().enumerate() {
            let mult = i as u64 + 1;
            if mult > k {
                out = out.mul(&q.pow(mult - k));
            }
        }
        return Ideal::new(n, [out]).reduced();
    }
    let mut cur = base;
    for _ in 0..k {
        if cur.is_trivial() {
            return Ideal::unit(n);
        }
        cur = delta_extend(&cur).reduced();
    }
    cur
}

pub fn delta_chain(ideal: &Ideal, cap: usize) -> DeltaChain {
    let mut powers = vec![ideal.clone()];
    while powers.len() < cap.max(1) {
        let last = powers.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = delta_extend(&last.reduced());
        powers.push(next);
    }
    DeltaChain { powers }
}

/// Upper bound on the order of a nonzero ideal at any point.
fn order_bound(ideal: &Ideal) -> u64 {
    ideal.reduced().gens().iter().map(|g| g.total_degree()).min().unwrap_or(0)
}

/// Maximum over all points (over the closure) of the order of `I`.
pub fn max_order(ideal: &Ideal) -> Result<u64> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_trivial() {
        return Ok(0);
    }
    max_order_on(ideal, &Ideal::zero(ideal.nvars()))
}

/// Largest `c` with `Δ^{c-1}(I) + S` non-trivial, i.e. the maximal order of
/// `I` over the points of `V(S)`. Returns 0 when `V(I) ∩ V(S)` is empty.
pub fn max_order_on(ideal: &Ideal, locus: &Ideal) -> Result<u64> {
    max_order_with_locus(ideal, locus).map(|(c, _)| c)
}

/// `max_order_on` together with `Δ^{c-1}(I)`, whose zero set inside `V(S)`
/// is where the maximum is attained.
pub fn max_order_with_locus(ideal: &Ideal, locus: &Ideal) -> Result<(u64, Ideal)> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let bound = order_bound(ideal);
    let mut c = 0u64;
    let mut prev = Ideal::unit(ideal.nvars());
    let mut cur = ideal.reduced();
    loop {
        if cur.sum(locus).is_trivial() {
            return Ok((c, prev));
        }
        c += 1;
        if c > bound {
            return Err(Error::OrderCap(bound as usize));
        }
        let next = next_delta(&cur);
        prev = cur;
        cur = next;
    }
}

/// One Δ step, taking the cheap route for monomial and univariate ideals.
fn next_delta(cur: &Ideal) -> Ideal {
    if cur.is_monomial() {
        return delta_extend(cur).reduced();
    }
    delta_power(cur, 1)
}

/// `Δ^{b-1}(I)`, whose zero set is the locus of order ≥ b.
pub fn order_locus(ideal: &Ideal, b: u64) -> Ideal {
    debug_assert!(b >= 1);
    delta_power(ideal, b.saturating_sub(1))
}

pub fn equal_loci(a: &Ideal, b: &Ideal) -> bool {
    a.same_locus(b)
}

/// Order of `I` at a rational point: least Taylor degree over generators.
pub fn order_at_point(ideal: &Ideal, point: &[Rational]) -> Result<u64> {
    if ideal.gens().is_empty() {
        return Err(Error::EmptyIdeal);
    }
    if point.len() != ideal.nvars() {
        return Err(Error::Arity { expected: ideal.nvars(), got: point.len() });
    }
    Ok(ideal
        .gens()
        .iter()
        .filter_map(|g| g.shift(point).low_degree())
        .min()
        .unwrap_or(0))
}
