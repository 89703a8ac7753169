//! Per-chart towers of basic objects and their evaluation.

use crate::charts::{Chart, CoordinateChange, Divisor, TrailEntry};
use crate::deltaorder::{delta_extend, equal_loci, max_order, order_locus};
use crate::error::{Error, Result};
use crate::exactpoly::{gcd, squarefree_part, Ideal, Polynomial, Rational, Ring};
use crate::invariants::{gamma_max, max_w_ord, t_state, FdTerminal, FdTrace, MonomialObjectData, TValue};

/// One basic object of the tower, living on the vanishing of `flags`.
#[derive(Debug, Clone)]
pub struct Level {
    /// Free of the flag variables.
    pub ideal: Ideal,
    pub b: u64,
    pub flags: Vec<usize>,
    /// Stage at which the level was built.
    pub created: usize,
    /// Boundary labels handed down at creation.
    pub initial_labels: Vec<usize>,
    /// Stage of the last strict drop of this level's max w-ord.
    pub last_drop: usize,
    pub prev_w: Option<Rational>,
    pub prev_t: Option<TValue>,
}

impl Level {
    pub fn top(ideal: Ideal, b: u64, boundary_labels: Vec<usize>) -> Level {
        Level {
            ideal,
            b,
            flags: Vec::new(),
            created: 0,
            initial_labels: boundary_labels,
            last_drop: 0,
            prev_w: None,
            prev_t: None,
        }
    }

    /// Divisors forming this level's boundary.
    pub fn visible<'a>(&self, chart: &'a Chart) -> Vec<&'a Divisor> {
        chart
            .divisors
            .iter()
            .filter(|d| !self.flags.contains(&d.var))
            .filter(|d| self.initial_labels.contains(&d.label) || d.birth > self.created)
            .collect()
    }
}

/// Chart state carried between stages.
#[derive(Debug, Clone)]
pub struct Node {
    pub chart: Chart,
    pub tower: Vec<Level>,
    /// Pullback of the input ideal.
    pub total: Ideal,
}

impl Node {
    /// Rewrites every stored ideal through the change and records it.
    pub fn apply_change(&mut self, change: &CoordinateChange) -> Result<()> {
        change.validate(self.chart.nvars)?;
        let images = change.images(self.chart.nvars);
        for level in &mut self.tower {
            level.ideal = level.ideal.substitute(&images)?;
        }
        self.total = self.total.substitute(&images)?;
        self.chart.trail.push(TrailEntry::Change(change.clone()));
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    Resolved,
    /// Blow up the coordinates after applying `change`.
    Center { coords: Vec<usize>, ideal: Ideal, change: Option<CoordinateChange>, labels: Vec<usize> },
    /// A smooth center that no permitted change makes a coordinate subspace.
    NonCoordinate { ideal: Ideal },
}

impl Plan {
    pub fn ideal(&self) -> Option<&Ideal> {
        match self {
            Plan::Resolved => None,
            Plan::Center { ideal, .. } | Plan::NonCoordinate { ideal } => Some(ideal),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub trace: FdTrace,
    pub plan: Plan,
    /// Max w-ord locus of the deciding level, flags included.
    pub locus: Option<Ideal>,
}

/// Outcome of the consistency checks run on a descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentCheck {
    pub stage: usize,
    pub chart: usize,
    pub level: usize,
    /// `Sing(J″, b″)` and `Sing(C, b″!)` agree on the hyperplane.
    pub loci_equal: bool,
    /// `J′` and `J″` have maximal order exactly their thresholds.
    pub simple: bool,
}

pub struct Context<'a> {
    pub ring: &'a Ring,
    pub stage: usize,
    pub verify: bool,
    pub checks: &'a mut Vec<DescentCheck>,
}

/// Walks the tower top-down, rebuilding levels below any change of `t`.
pub fn evaluate(node: &mut Node, ctx: &mut Context<'_>) -> Result<Evaluation> {
    let n = node.chart.nvars;
    let mut levels: Vec<TValue> = Vec::new();
    let mut e = 0;
    loop {
        let (visible, extract) = {
            let level = &node.tower[e];
            let visible: Vec<Divisor> = level.visible(&node.chart).into_iter().cloned().collect();
            let extract: Vec<(usize, usize)> =
                visible.iter().filter(|d| d.birth > level.created).map(|d| (d.label, d.var)).collect();
            (visible, extract)
        };
        let deeper = node.tower.len() > e + 1;
        let level = &mut node.tower[e];
        let wo = match max_w_ord(&level.ideal, level.b, &extract) {
            Err(Error::EmptySing) if e == 0 => {
                node.tower.truncate(1);
                node.chart.flag.clear();
                return Ok(Evaluation { trace: FdTrace::resolved(), plan: Plan::Resolved, locus: None });
            }
            Err(Error::EmptySing) => return Err(Error::Internal(format!("empty Sing at tower level {e}"))),
            other => other?,
        };
        if let Some(prev) = &level.prev_w {
            if wo.value < *prev {
                level.last_drop = ctx.stage;
            }
        }
        level.prev_w = Some(wo.value.clone());
        let flags = level.flags.clone();
        let flag_ideal = Ideal::coordinates(n, &flags);

        if wo.order == 0 {
            let by_label: Vec<(usize, usize, u64)> = wo
                .mults
                .iter()
                .filter(|m| m.1 > 0)
                .map(|&(label, a)| {
                    let var = extract.iter().find(|x| x.0 == label).map(|x| x.1).expect("extracted divisor");
                    (label, var, a as u64)
                })
                .collect();
            let data = MonomialObjectData { divisors: by_label, b: level.b };
            let (gamma, vars) = gamma_max(&data, n)
                .map_err(|_| Error::Internal(format!("monomial level {e} has no singular stratum")))?;
            level.prev_t = None;
            node.tower.truncate(e + 1);
            node.chart.flag = flags.clone();
            let mut coords = vars;
            coords.extend(&flags);
            coords.sort_unstable();
            let labels = gamma.labels();
            let ideal = Ideal::coordinates(n, &coords);
            return Ok(Evaluation {
                trace: FdTrace { levels, terminal: FdTerminal::Gamma(gamma) },
                plan: Plan::Center { coords, ideal: ideal.clone(), change: None, labels },
                locus: Some(ideal),
            });
        }

        let eminus: Vec<(usize, usize)> =
            visible.iter().filter(|d| d.birth <= level.last_drop).map(|d| (d.label, d.var)).collect();
        let eplus: Vec<(usize, usize)> =
            visible.iter().filter(|d| d.birth > level.last_drop).map(|d| (d.label, d.var)).collect();
        let (t, comps, _) = t_state(&wo.value, &wo.locus, &eminus)?;
        levels.push(t.clone());
        let locus = wo.locus.sum(&flag_ideal);

        if let Some(r1) = r1_extract(&comps, &flags, &node.chart, ctx.ring)? {
            level.prev_t = Some(t);
            node.tower.truncate(e + 1);
            node.chart.flag = flags.clone();
            let center = flag_ideal.with(r1.divisor.clone());
            let plan = match r1.coordinate {
                Some((j, change)) => {
                    let mut coords = flags.clone();
                    coords.push(j);
                    coords.sort_unstable();
                    Plan::Center { coords, ideal: center, change, labels: Vec::new() }
                }
                None => Plan::NonCoordinate { ideal: center },
            };
            return Ok(Evaluation {
                trace: FdTrace { levels, terminal: FdTerminal::Divisor },
                plan,
                locus: Some(locus),
            });
        }

        let carry = deeper && level.prev_t.as_ref() == Some(&t);
        level.prev_t = Some(t.clone());
        if !carry {
            node.tower.truncate(e + 1);
            descend(node, e, &wo.weak, &wo.mults, &extract, wo.order, &t, &eminus, &eplus, ctx)?;
        }
        node.chart.flag = node.tower[e + 1].flags.clone();
        e += 1;
    }
}

/// Builds level `e + 1` from level `e` in Case B.
#[allow(clippy::too_many_arguments)]
fn descend(
    node: &mut Node,
    e: usize,
    weak: &Ideal,
    mults: &[(usize, u32)],
    extract: &[(usize, usize)],
    order: u64,
    t: &TValue,
    eminus: &[(usize, usize)],
    eplus: &[(usize, usize)],
    ctx: &mut Context<'_>,
) -> Result<()> {
    let n = node.chart.nvars;
    let level = &node.tower[e];
    let flags = level.flags.clone();
    let mut monomial = Polynomial::one(n);
    for &(label, a) in mults {
        let var = extract.iter().find(|x| x.0 == label).map(|x| x.1).expect("extracted divisor");
        monomial = monomial.mul(&Polynomial::var(n, var).pow(a as u64));
    }
    let (jp, bp) = make_j_prime(weak, level.b, order, &monomial)?;
    let subsets = n_subsets(eminus, t.n);
    let jpp = make_j_double_prime(&jp, bp, &subsets);
    let sing = order_locus(&jpp, bp);
    let eplus_vars: Vec<usize> = eplus.iter().map(|x| x.1).collect();
    let (j, change) = find_maximal_contact(&sing, &flags, &eplus_vars, &node.chart, ctx.ring)?;
    let (jp, jpp, sing) = match &change {
        Some(ch) => {
            node.apply_change(ch)?;
            let images = ch.images(n);
            (jp.substitute(&images)?, jpp.substitute(&images)?, sing.substitute(&images)?.reduced())
        }
        None => (jp, jpp, sing),
    };
    let (coefficient, threshold) = coefficient_ideal_descend(&jpp, bp, j)?;
    if coefficient.is_zero() {
        return Err(Error::Internal("coefficient ideal vanished on the hypersurface".into()));
    }
    if ctx.verify {
        let mut hyper = flags.clone();
        hyper.push(j);
        let on_hyper = Ideal::coordinates(n, &hyper);
        let loci_equal = equal_loci(&sing.sum(&on_hyper), &order_locus(&coefficient, threshold).sum(&on_hyper));
        let simple = max_order(&jp).map(|c| c == bp).unwrap_or(false)
            && max_order(&jpp).map(|c| c == bp).unwrap_or(false);
        ctx.checks.push(DescentCheck { stage: ctx.stage, chart: node.chart.id, level: e, loci_equal, simple });
    }
    let mut next_flags = flags;
    next_flags.push(j);
    node.tower.push(Level {
        ideal: coefficient,
        b: threshold,
        flags: next_flags,
        created: ctx.stage,
        initial_labels: eplus.iter().map(|x| x.0).collect(),
        last_drop: ctx.stage,
        prev_w: None,
        prev_t: None,
    });
    Ok(())
}

fn n_subsets(eminus: &[(usize, usize)], n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    (0u32..(1u32 << eminus.len()))
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| (0..eminus.len()).filter(|i| m & (1 << i) != 0).map(|i| eminus[i].1).collect())
        .collect()
}

/// Simple object with the same max w-ord locus: `(J′, b′)`.
pub fn make_j_prime(weak: &Ideal, b: u64, order: u64, monomial: &Polynomial) -> Result<(Ideal, u64)> {
    if order == 0 {
        return Err(Error::ZeroWOrd);
    }
    if order >= b {
        return Ok((weak.clone(), order));
    }
    let n = weak.nvars();
    let exc = Ideal::new(n, [monomial.pow(order)]);
    let bp = order.checked_mul(b - order).ok_or(Error::ThresholdOverflow)?;
    Ok((weak.power_reduced(b - order).sum(&exc), bp))
}

/// `J″ = J′ + Π_S ⟨x_s : s ∈ S⟩^{b′}` over the given coordinate subsets.
pub fn make_j_double_prime(jp: &Ideal, bp: u64, subsets: &[Vec<usize>]) -> Ideal {
    if subsets.is_empty() {
        return jp.clone();
    }
    let n = jp.nvars();
    let mut product = Ideal::unit(n);
    for s in subsets {
        product = product.product(&Ideal::coordinates(n, s).power_reduced(bp)).reduced();
    }
    jp.sum(&product)
}

/// A hypersurface `{x_j = 0}` whose equation lies in `sing = Δ^{b″-1}(J″)`,
/// possibly after a triangular change. Pure coordinates come first, those
/// off the divisors before divisor coordinates.
pub fn find_maximal_contact(
    sing: &Ideal,
    flags: &[usize],
    eplus_vars: &[usize],
    chart: &Chart,
    ring: &Ring,
) -> Result<(usize, Option<CoordinateChange>)> {
    let n = sing.nvars();
    let allowed = |j: usize| !flags.contains(&j) && !eplus_vars.contains(&j);
    // coordinates away from the divisors first, as in the hand computations
    let mut pure: Vec<usize> = (0..n).filter(|&j| allowed(j)).collect();
    pure.sort_by_key(|&j| chart.is_exceptional_var(j));
    for j in pure {
        if sing.contains(&Polynomial::var(n, j)) {
            return Ok((j, None));
        }
    }
    let candidates: Vec<&Polynomial> = sing.gens().iter().chain(sing.groebner()).collect();
    for j in (0..n).filter(|&j| allowed(j) && !chart.is_exceptional_var(j)) {
        for g in &candidates {
            if let Some(change) = coordinate_change_for(g, j) {
                return Ok((j, Some(change)));
            }
        }
    }
    Err(Error::NonConvertible(sing.format(ring)))
}

/// For `g = c·x_j + h` with `h` free of `x_j`, the change making `g` equal `x_j`.
fn coordinate_change_for(g: &Polynomial, j: usize) -> Option<CoordinateChange> {
    if g.degree_in(j) != 1 {
        return None;
    }
    let coeffs = g.coefficients_in(j);
    let lead = coeffs.get(1)?;
    if !lead.is_constant() || lead.is_zero() {
        return None;
    }
    let c = lead.constant_term();
    let h = coeffs[0].clone();
    let inv = c.recip();
    Some(CoordinateChange::Triangular { target: j, scale: inv.clone(), shift: h.scale(&(-inv)) })
}

fn factorial(b: u64) -> Result<u64> {
    (1..=b).try_fold(1u64, |acc, k| acc.checked_mul(k)).ok_or(Error::ThresholdOverflow)
}

/// `Σ_{i<b″} Δ^i(J″)^{b″!/(b″-i)}` restricted to `x_j = 0`, with threshold `b″!`.
pub fn coefficient_ideal_descend(jpp: &Ideal, bpp: u64, j: usize) -> Result<(Ideal, u64)> {
    let n = jpp.nvars();
    let threshold = factorial(bpp)?;
    let mut acc = Ideal::zero(n);
    let mut cur = jpp.reduced();
    for i in 0..bpp {
        let restricted = cur.set_zero(&[j]).reduced();
        if restricted.is_trivial() {
            return Err(Error::Internal("coefficient ideal is the unit ideal".into()));
        }
        if !restricted.is_zero() {
            acc = acc.sum(&restricted.power_reduced(threshold / (bpp - i)));
        }
        if i + 1 < bpp {
            cur = delta_extend(&cur).reduced();
        }
    }
    Ok((acc.reduced(), threshold))
}

/// Codimension-one part of a max-t locus.
#[derive(Debug, Clone, PartialEq)]
pub struct R1 {
    /// Squarefree equation of the divisorial part.
    pub divisor: Polynomial,
    /// The coordinate it becomes, with the change needed, if any.
    pub coordinate: Option<(usize, Option<CoordinateChange>)>,
}

/// The divisorial part of the components, if any: lcm over components of
/// the gcd of their generators.
pub fn r1_extract(comps: &[Ideal], flags: &[usize], chart: &Chart, ring: &Ring) -> Result<Option<R1>> {
    let Some(first) = comps.first() else {
        return Ok(None);
    };
    let n = first.nvars();
    let mut lcm = Polynomial::one(n);
    for comp in comps {
        let gens = comp.groebner();
        let mut g = gens.first().cloned().unwrap_or_else(|| Polynomial::zero(n));
        for h in &gens[1..] {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, h);
        }
        if g.is_zero() || g.is_constant() {
            continue;
        }
        let common = gcd(&lcm, &g);
        lcm = lcm.mul(&g).exact_div(&common).expect("gcd divides");
    }
    if lcm.is_constant() {
        return Ok(None);
    }
    let divisor = squarefree_part(&lcm).monic();
    let mut jac: Vec<Polynomial> = vec![divisor.clone()];
    jac.extend((0..n).map(|i| divisor.derivative(i)));
    if !Ideal::new(n, jac).is_trivial() {
        return Err(Error::DivisorialPartNotSmooth(divisor.format(ring)));
    }
    let mut coordinate = None;
    for j in (0..n).filter(|j| !flags.contains(j)) {
        if divisor == Polynomial::var(n, j) {
            coordinate = Some((j, None));
            break;
        }
        if chart.is_exceptional_var(j) {
            continue;
        }
        if let Some(change) = coordinate_change_for(&divisor, j) {
            coordinate = Some((j, Some(change)));
            break;
        }
    }
    Ok(Some(R1 { divisor, coordinate }))
}
