use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, TermOrder};
use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending degrevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.cmp_by(a, TermOrder::DegRevLex)
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under degrevlex.
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_by(&self, order: TermOrder) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_by(&b.0, order))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (order at the origin).
    pub fn low_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.uses_var(i)).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match desc(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // Multiplying by a monomial preserves any monomial order.
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *acc.entry(a.mul(b)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * Rational::from_integer(BigInt::from(k)))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Composes with per-variable images living in a common target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: images.len() });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::RingMismatch(target, bad.nvars));
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); self.nvars];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&images[i]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Substitutes a single variable, leaving the others fixed.
    pub fn substitute_var(&self, i: usize, image: &Polynomial) -> Self {
        let images: Vec<_> = (0..self.nvars)
            .map(|j| if j == i { image.clone() } else { Polynomial::var(self.nvars, j) })
            .collect();
        self.substitute(&images).expect("arity is fixed")
    }

    /// Sets the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .cloned()
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Translates so that `point` becomes the origin: `f(x + point)`.
    pub fn shift(&self, point: &[Rational]) -> Self {
        let images: Vec<_> = (0..self.nvars)
            .map(|i| Polynomial::var(self.nvars, i).add(&Polynomial::constant(self.nvars, point[i].clone())))
            .collect();
        self.substitute(&images).expect("arity is fixed")
    }

    /// Largest `m` with `x_i^m` dividing the polynomial.
    pub fn coordinate_valuation(&self, i: usize) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.iter().map(|(m, _)| m.0[i]).min().unwrap_or(0))
    }

    /// Divides by `x_i^k`, or returns `None` when not divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Self> {
        if k == 0 {
            return Some(self.clone());
        }
        let mut terms: Vec<(Monomial, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[i] < k {
                return None;
            }
            let mut e = m.0.clone();
            e[i] -= k;
            terms.push((Monomial(e), c.clone()));
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Scales so the leading degrevlex coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Coefficients of the powers of `x_i`, each free of `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(self.nvars, t)).collect()
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let (glm, glc) = g.leading().cloned()?;
        let mut r = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        while let Some((lm, lc)) = r.leading().cloned() {
            if !glm.divides(&lm) {
                return None;
            }
            let m = lm.div(&glm);
            let c = &lc / &glc;
            r = r.sub(&g.mul_term(&m, &c));
            q = q.add(&Polynomial::term(m, c));
        }
        Some(q)
    }

    /// Embeds into a ring with `extra` more variables appended.
    pub fn extend(&self, extra: usize) -> Self {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat(0).take(extra));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; self.nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[perm[i]] = k;
            }
            (Monomial(e), c.clone())
        });
        Self::from_terms(self.nvars, terms)
    }

    pub fn format(&self, ring: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, ring);
            if mono.is_empty() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{}*{}", format_rational(&a), mono);
            }
        }
        s
    }
}

fn format_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
