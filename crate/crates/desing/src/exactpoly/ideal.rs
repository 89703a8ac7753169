use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, normal_form};
use super::monomial::{Monomial, TermOrder};
use super::poly::Polynomial;
use super::Ring;
use crate::error::{Error, Result};

/// Finitely generated ideal with a lazily computed degrevlex basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Vec<Polynomial>>>,
}

impl PartialEq for Ideal {
    /// Ideal equality, not generator equality.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.groebner() == other.groebner()
    }
}

impl Ideal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut list: Vec<Polynomial> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.nvars(), nvars);
            if !g.is_zero() && !list.contains(&g) {
                list.push(g);
            }
        }
        Ideal { nvars, gens: list, gb: Arc::new(OnceLock::new()) }
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, [Polynomial::one(nvars)])
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, [])
    }

    /// Ideal generated by the listed coordinates.
    pub fn coordinates(nvars: usize, vars: &[usize]) -> Self {
        Self::new(nvars, vars.iter().map(|&v| Polynomial::var(nvars, v)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced degrevlex Gröbner basis, computed once.
    pub fn groebner(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.gens, self.nvars, TermOrder::DegRevLex))
    }

    pub fn groebner_basis(&self, order: TermOrder) -> Ideal {
        let basis = match order {
            TermOrder::DegRevLex => self.groebner().to_vec(),
            TermOrder::Lex => groebner_basis(&self.gens, self.nvars, TermOrder::Lex),
        };
        let cell = OnceLock::new();
        if order == TermOrder::DegRevLex {
            let _ = cell.set(basis.clone());
        }
        Ideal { nvars: self.nvars, gens: basis, gb: Arc::new(cell) }
    }

    /// The same ideal with its reduced basis as generators.
    pub fn reduced(&self) -> Ideal {
        self.groebner_basis(TermOrder::DegRevLex)
    }

    pub fn is_trivial(&self) -> bool {
        if self.gens.iter().any(|g| g.is_constant()) {
            return true;
        }
        if self.gens.iter().all(|g| g.is_monomial()) {
            return false;
        }
        let gb = self.groebner();
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        normal_form(f, self.groebner(), TermOrder::DegRevLex).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Whether `f` vanishes on V(self) over the algebraic closure.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() || self.is_trivial() {
            return true;
        }
        if self.contains(f) {
            return true;
        }
        let n = self.nvars + 1;
        let t = Polynomial::var(n, self.nvars);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.extend(1)).collect();
        gens.push(Polynomial::one(n).sub(&t.mul(&f.extend(1))));
        Ideal::new(n, gens).is_trivial()
    }

    /// V(self) ⊆ V(other).
    pub fn locus_within(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
    }

    pub fn same_locus(&self, other: &Ideal) -> bool {
        self.locus_within(other) && other.locus_within(self)
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        Ok(self.sum(other))
    }

    pub fn checked_product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        Ok(self.product(other))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with(&self, f: Polynomial) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().cloned().chain([f]))
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(b));
            }
        }
        Ideal::new(self.nvars, out)
    }

    /// Generator-level power: all products of `k` generators.
    pub fn power(&self, k: u64) -> Ideal {
        if k == 0 {
            return Ideal::unit(self.nvars);
        }
        if self.gens.len() == 1 {
            return Ideal::new(self.nvars, [self.gens[0].pow(k)]);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Power with the base and intermediate results kept reduced.
    pub fn power_reduced(&self, k: u64) -> Ideal {
        let base = self.reduced();
        if k == 0 || base.is_trivial() {
            return Ideal::unit(self.nvars);
        }
        if base.gens.len() == 1 {
            return Ideal::new(self.nvars, [base.gens[0].pow(k)]);
        }
        let mut result: Option<Ideal> = None;
        let mut sq = base;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.product(&sq).reduced(),
                });
            }
            k >>= 1;
            if k > 0 {
                sq = sq.product(&sq).reduced();
            }
        }
        result.expect("k > 0")
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().map(f))
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Result<Ideal> {
        let target = images.first().map(|p| p.nvars()).unwrap_or(self.nvars);
        let gens = self.gens.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }

    pub fn set_zero(&self, vars: &[usize]) -> Ideal {
        self.map(|g| g.set_zero(vars))
    }

    pub fn permute(&self, perm: &[usize]) -> Ideal {
        self.map(|g| g.permute(perm))
    }

    /// Minimum over generators of the `x_i`-adic valuation; a unit gives 0.
    pub fn coordinate_valuation(&self, i: usize) -> Result<u32> {
        if self.gens.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_trivial() {
            return Ok(0);
        }
        let mut best = u32::MAX;
        for g in &self.gens {
            best = best.min(g.coordinate_valuation(i)?);
        }
        Ok(best)
    }

    /// Divides every generator by `x_i^k`.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Ideal> {
        let gens = self.gens.iter().map(|g| g.div_var_power(i, k)).collect::<Option<Vec<_>>>()?;
        Some(Ideal::new(self.nvars, gens))
    }

    /// Variables appearing in some generator.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.gens.iter().any(|g| g.uses_var(i))).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().iter().filter_map(|g| g.leading().map(|t| t.0.clone())).collect()
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.format(ring)).collect();
        format!("<{}>", parts.join(", "))
    }

    /// Generators normalised for display: reduced basis, monic.
    pub fn canonical(&self) -> Vec<Polynomial> {
        self.groebner().to_vec()
    }
}
