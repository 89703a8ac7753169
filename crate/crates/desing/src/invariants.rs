//! Resolution invariants: weighted order, the t pair, the monomial Γ triple
//! and the lexicographic trace that selects centers.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::charts::weak_transform_extract;
use crate::deltaorder::{max_order_with_locus, order_locus};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, Ideal, Rational};

/// Largest admissible number of old divisors for subset enumeration.
pub const BOUNDARY_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TValue {
    pub w: Rational,
    pub n: usize,
}

impl fmt::Display for TValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.w), self.n)
    }
}

/// `(-codim, weighted sum / b, descending labels padded with zeros)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaValue {
    pub g1: i64,
    pub g2: Rational,
    pub g3: Vec<usize>,
}

impl GammaValue {
    /// Labels of the center, without padding.
    pub fn labels(&self) -> Vec<usize> {
        self.g3.iter().copied().filter(|&l| l != 0).collect()
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g3: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "({}, {}, [{}])", self.g1, format_rational(&self.g2), g3.join(", "))
    }
}

/// Divisors as `(label, var, multiplicity)` plus the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialObjectData {
    pub divisors: Vec<(usize, usize, u64)>,
    pub b: u64,
}

impl MonomialObjectData {
    /// Whether some set of divisors reaches `b`; with coordinate
    /// hyperplanes in one chart every such set meets.
    pub fn has_sing(&self) -> bool {
        self.divisors.iter().map(|d| d.2).sum::<u64>() >= self.b
    }
}

/// Maximal Γ and the variables of its center, over all divisor subsets.
pub fn gamma_max(data: &MonomialObjectData, d: usize) -> Result<(GammaValue, Vec<usize>)> {
    let divs: Vec<&(usize, usize, u64)> = data.divisors.iter().filter(|x| x.2 > 0).collect();
    if divs.len() > 16 {
        return Err(Error::BoundaryCap(divs.len(), 16));
    }
    let mut best: Option<(GammaValue, Vec<usize>)> = None;
    for mask in 1u32..(1u32 << divs.len()) {
        let chosen: Vec<&(usize, usize, u64)> =
            (0..divs.len()).filter(|i| mask & (1 << i) != 0).map(|i| divs[i]).collect();
        let sum: u64 = chosen.iter().map(|x| x.2).sum();
        if sum < data.b {
            continue;
        }
        let mut labels: Vec<usize> = chosen.iter().map(|x| x.0).collect();
        labels.sort_unstable_by(|a, b| b.cmp(a));
        labels.resize(d.max(labels.len()), 0);
        let g = GammaValue {
            g1: -(chosen.len() as i64),
            g2: Rational::new(sum.into(), data.b.into()),
            g3: labels,
        };
        if best.as_ref().map_or(true, |(b, _)| g > *b) {
            let mut vars: Vec<usize> = chosen.iter().map(|x| x.1).collect();
            vars.sort_unstable();
            best = Some((g, vars));
        }
    }
    best.ok_or(Error::EmptySing)
}

/// Weighted order of a level and the ideals describing where it is attained.
#[derive(Debug, Clone)]
pub struct WOrd {
    pub value: Rational,
    /// Maximal order of the weak transform on `Sing`.
    pub order: u64,
    pub weak: Ideal,
    pub mults: Vec<(usize, u32)>,
    pub sing: Ideal,
    /// Where the maximum is attained, without the flag equations.
    pub locus: Ideal,
}

/// `max w-ord` of `(J, b)` with `extract` the divisors whose factors are
/// removed from `J`. Fails with `EmptySing` when `Sing(J, b)` is empty.
pub fn max_w_ord(ideal: &Ideal, b: u64, extract: &[(usize, usize)]) -> Result<WOrd> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = ideal.nvars();
    let sing = order_locus(ideal, b);
    if sing.is_trivial() {
        return Err(Error::EmptySing);
    }
    let (weak, mults) = weak_transform_extract(ideal, extract)?;
    let (order, top) = max_order_with_locus(&weak, &sing)?;
    let locus = if order == 0 { Ideal::unit(n) } else { top.sum(&sing) };
    Ok(WOrd { value: Rational::new(order.into(), b.into()), order, weak, mults, sing, locus })
}

/// `max t` from the max w-ord locus and the old divisors `(label, var)`.
/// Components are `locus + ⟨x_s : s ∈ S⟩` for the subsets `S` achieving `n`.
pub fn t_state(w: &Rational, locus: &Ideal, eminus: &[(usize, usize)]) -> Result<(TValue, Vec<Ideal>, Vec<Vec<usize>>)> {
    if w.is_zero() {
        return Err(Error::ZeroWOrd);
    }
    if eminus.len() > BOUNDARY_CAP {
        return Err(Error::BoundaryCap(eminus.len(), BOUNDARY_CAP));
    }
    let n = locus.nvars();
    for m in (1..=eminus.len()).rev() {
        let mut comps = Vec::new();
        let mut subsets = Vec::new();
        for mask in 0u32..(1u32 << eminus.len()) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let chosen: Vec<&(usize, usize)> =
                (0..eminus.len()).filter(|i| mask & (1 << i) != 0).map(|i| &eminus[i]).collect();
            let vars: Vec<usize> = chosen.iter().map(|x| x.1).collect();
            let comp = locus.sum(&Ideal::coordinates(n, &vars));
            if !comp.is_trivial() {
                let mut labels: Vec<usize> = chosen.iter().map(|x| x.0).collect();
                labels.sort_unstable();
                subsets.push(labels);
                comps.push(comp);
            }
        }
        if !comps.is_empty() {
            return Ok((TValue { w: w.clone(), n: m }, comps, subsets));
        }
    }
    Ok((TValue { w: w.clone(), n: 0 }, vec![locus.clone()], vec![Vec::new()]))
}

/// Per-level `(w-ord, n)` pairs and how the last level ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdTrace {
    pub levels: Vec<TValue>,
    pub terminal: FdTerminal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FdTerminal {
    Gamma(GammaValue),
    Divisor,
    Resolved,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Item<'a> {
    W(&'a Rational),
    N(usize),
    G(&'a GammaValue),
    Infinity,
}

impl FdTrace {
    pub fn resolved() -> FdTrace {
        FdTrace { levels: Vec::new(), terminal: FdTerminal::Resolved }
    }

    /// The comparison sequence: a monomial terminal reads as a level with
    /// w-ord 0 followed by Γ, a divisorial one as ∞.
    fn items(&self) -> Vec<Item<'_>> {
        let mut out = Vec::with_capacity(2 * self.levels.len() + 2);
        for t in &self.levels {
            out.push(Item::W(&t.w));
            out.push(Item::N(t.n));
        }
        match &self.terminal {
            FdTerminal::Gamma(g) => {
                out.push(Item::W(&ZERO));
                out.push(Item::G(g));
            }
            FdTerminal::Divisor => out.push(Item::Infinity),
            FdTerminal::Resolved => {}
        }
        out
    }

    pub fn is_resolved(&self) -> bool {
        self.terminal == FdTerminal::Resolved
    }

    /// Top-level w-ord, 0 for a monomial top level, none when resolved.
    pub fn top_w(&self) -> Option<Rational> {
        match (self.levels.first(), &self.terminal) {
            (Some(t), _) => Some(t.w.clone()),
            (None, FdTerminal::Gamma(_)) => Some(Rational::zero()),
            _ => None,
        }
    }

    pub fn top_t(&self) -> Option<&TValue> {
        self.levels.first()
    }

    /// Γ when the top level is monomial.
    pub fn top_gamma(&self) -> Option<&GammaValue> {
        match &self.terminal {
            FdTerminal::Gamma(g) if self.levels.is_empty() => Some(g),
            _ => None,
        }
    }
}

static ZERO: std::sync::LazyLock<Rational> = std::sync::LazyLock::new(Rational::zero);

impl PartialOrd for FdTrace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FdTrace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.items().cmp(&other.items())
    }
}

impl fmt::Display for FdTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.levels.iter().map(|t| format!("({}; {})", format_rational(&t.w), t.n)).collect();
        parts.push(match &self.terminal {
            FdTerminal::Gamma(g) => {
                let g3: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
                format!("Γ({},{},[{}])", g.g1, format_rational(&g.g2), g3.join(","))
            }
            FdTerminal::Divisor => "∞".into(),
            FdTerminal::Resolved => "resolved".into(),
        });
        write!(f, "{}", parts.join(" "))
    }
}

/// Builds a trace from per-level records.
pub fn fd_assemble(levels: Vec<TValue>, terminal: FdTerminal) -> FdTrace {
    FdTrace { levels, terminal }
}
