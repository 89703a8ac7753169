//! Buchberger's algorithm with the product and chain criteria.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::monomial::{Monomial, TermOrder};
use super::poly::Polynomial;
use super::Rational;

/// Terms sorted descending under a fixed order.
#[derive(Clone, Debug)]
struct Work {
    terms: Vec<(Monomial, Rational)>,
}

impl Work {
    fn from_poly(p: &Polynomial, order: TermOrder) -> Self {
        let mut terms = p.terms().to_vec();
        if order != TermOrder::DegRevLex {
            terms.sort_by(|a, b| b.0.cmp_by(&a.0, order));
        }
        Work { terms }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merging in order.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &Work, order: TermOrder) -> Work {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<(Monomial, Rational)> =
            g.terms.iter().map(|(t, d)| (t.mul(m), -(d * c))).collect();
        while i < self.terms.len() && j < shifted.len() {
            match self.terms[i].0.cmp_by(&shifted[j].0, order) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted.into_iter().skip(j));
        Work { terms: out }
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }
}

/// Full reduction of `p` modulo `basis`.
fn reduce(p: &Work, basis: &[Work], order: TermOrder) -> Work {
    let mut p = p.clone();
    let mut rest: Vec<(Monomial, Rational)> = Vec::new();
    // `p` holds the unprocessed tail; `rest` the irreducible terms found so far.
    while !p.terms.is_empty() {
        let (lm, lc) = (p.terms[0].0.clone(), p.terms[0].1.clone());
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let c = &lc / g.lc();
                let m = lm.div(g.lm());
                p = p.sub_mul(&c, &m, g, order);
            }
            None => {
                rest.push(p.terms.remove(0));
            }
        }
    }
    Work { terms: rest }
}

fn spoly(f: &Work, g: &Work, order: TermOrder) -> Work {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm());
    let mg = l.div(g.lm());
    let a = Work {
        terms: f.terms.iter().map(|(t, c)| (t.mul(&mf), c / f.lc())).collect(),
    };
    a.sub_mul(&g.lc().recip(), &mg, g, order)
}

fn all_monomial(gens: &[Polynomial]) -> bool {
    gens.iter().all(|g| g.is_monomial())
}

fn minimal_monomials(gens: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let mut monos: Vec<Monomial> = gens.iter().map(|g| g.terms()[0].0.clone()).collect();
    monos.sort_by(|a, b| a.cmp_by(b, TermOrder::DegRevLex));
    monos.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in monos {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    let _ = nvars;
    kept.into_iter().map(|m| Polynomial::term(m, Rational::one())).collect()
}

/// Reduced, monic Gröbner basis, sorted by ascending leading monomial.
pub fn groebner_basis(gens: &[Polynomial], nvars: usize, order: TermOrder) -> Vec<Polynomial> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Vec::new();
    }
    if gens.iter().any(|g| g.is_constant()) {
        return vec![Polynomial::one(nvars)];
    }
    if all_monomial(&gens) {
        return minimal_monomials(&gens, nvars);
    }

    let mut basis: Vec<Work> = Vec::new();
    for g in &gens {
        let mut w = Work::from_poly(g, order);
        w.make_monic();
        basis.push(w);
    }
    // Pre-reduce the input to shrink the pair set.
    basis = interreduce(basis, order);
    if basis.iter().any(|w| w.lm().is_one()) {
        return vec![Polynomial::one(nvars)];
    }

    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pair_set: HashSet<(usize, usize)> = HashSet::new();
    let deg = |a: &Monomial, b: &Monomial| a.lcm(b).degree();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((deg(basis[i].lm(), basis[j].lm()), i, j));
            pair_set.insert((i, j));
        }
    }

    while let Some(&first) = pending.iter().next() {
        pending.remove(&first);
        let (_, i, j) = first;
        pair_set.remove(&(i, j));
        let (li, lj) = (basis[i].lm().clone(), basis[j].lm().clone());
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pair_set.contains(&key(i, k))
                && !pair_set.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], order);
        let mut r = reduce(&s, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return vec![Polynomial::one(nvars)];
        }
        let n = basis.len();
        for k in 0..n {
            pending.insert((deg(basis[k].lm(), r.lm()), k, n));
            pair_set.insert((k, n));
        }
        basis.push(r);
    }

    let reduced = interreduce(basis, order);
    let mut out: Vec<(Monomial, Polynomial)> =
        reduced.iter().map(|w| (w.lm().clone(), w.to_poly(nvars))).collect();
    out.sort_by(|a, b| a.0.cmp_by(&b.0, order));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Removes redundant leading monomials and fully reduces each element.
fn interreduce(basis: Vec<Work>, order: TermOrder) -> Vec<Work> {
    let mut items: Vec<Work> = basis.into_iter().filter(|w| !w.terms.is_empty()).collect();
    loop {
        let mut changed = false;
        // Drop elements whose leading monomial is divisible by another's.
        items.sort_by(|a, b| a.lm().cmp_by(b.lm(), order));
        let mut kept: Vec<Work> = Vec::new();
        for w in items {
            if kept.iter().any(|k| k.lm().divides(w.lm())) {
                // Reduce rather than discard so no information is lost.
                let r = reduce(&w, &kept, order);
                if !r.terms.is_empty() {
                    let mut r = r;
                    r.make_monic();
                    kept.push(r);
                    changed = true;
                }
            } else {
                kept.push(w);
            }
        }
        items = kept;
        if !changed {
            break;
        }
    }
    // Tail reduction.
    let n = items.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<Work> =
            items.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, w)| w.clone()).collect();
        let head = Work { terms: vec![items[i].terms[0].clone()] };
        let tail = Work { terms: items[i].terms[1..].to_vec() };
        let tail = reduce(&tail, &others, order);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        let mut w = Work { terms };
        w.make_monic();
        out.push(w);
    }
    out
}

/// Normal form of `p` with respect to a Gröbner basis.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: TermOrder) -> Polynomial {
    let b: Vec<Work> = basis.iter().map(|g| Work::from_poly(g, order)).collect();
    reduce(&Work::from_poly(p, order), &b, order).to_poly(p.nvars())
}
