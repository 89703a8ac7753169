//! The staged resolution loop: evaluate every chart's tower, blow up the
//! charts where the trace is maximal, transform, repeat.

mod monomial;
mod tower;

use std::collections::BTreeMap;

pub use monomial::{monomial_endgame, MonomialChart};
pub use tower::{
    coefficient_ideal_descend, evaluate, find_maximal_contact, make_j_double_prime, make_j_prime, r1_extract,
    Context, DescentCheck, Evaluation, Level, Node, Plan, R1,
};

use crate::charts::{blowup_coordinate_center, blowup_images, controlled_transform, Chart};
use crate::error::{Error, Result};
use crate::exactpoly::{krull_dimension, Ideal, Polynomial, Rational, Ring};
use crate::invariants::{FdTrace, GammaValue, TValue};

pub const DEFAULT_MAX_STAGES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Resolve,
    /// Stop once the strict transform becomes a component of a center.
    Embedded,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub max_stages: usize,
    /// Run the descent checks (locus equality and simplicity).
    pub verify: bool,
    pub mode: Mode,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_stages: DEFAULT_MAX_STAGES, verify: false, mode: Mode::Resolve }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    NonConvertible,
    NonCoordinateCenter,
    DivisorialPartNotSmooth,
    BoundaryCap,
    ThresholdOverflow,
    StageCap,
}

impl HaltReason {
    pub fn name(self) -> &'static str {
        match self {
            HaltReason::NonConvertible => "NonConvertible",
            HaltReason::NonCoordinateCenter => "NonCoordinateCenter",
            HaltReason::DivisorialPartNotSmooth => "DivisorialPartNotSmooth",
            HaltReason::BoundaryCap => "BoundaryCap",
            HaltReason::ThresholdOverflow => "ThresholdOverflow",
            HaltReason::StageCap => "StageCap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Active,
    /// Blown up at a later stage.
    Interior,
    Resolved,
    Principalized,
    StrictTransformSmooth,
    Halted(HaltReason, String),
}

impl Status {
    pub fn name(&self) -> String {
        match self {
            Status::Active => "active".into(),
            Status::Interior => "interior".into(),
            Status::Resolved => "resolved".into(),
            Status::Principalized => "principalized".into(),
            Status::StrictTransformSmooth => "strictTransformSmooth".into(),
            Status::Halted(r, _) => format!("halted({})", r.name()),
        }
    }

    pub fn is_leaf(&self) -> bool {
        !matches!(self, Status::Interior)
    }
}

/// Every chart ever created, with its final state.
#[derive(Debug, Clone)]
pub struct NodeRecord {
    pub chart: Chart,
    pub status: Status,
    /// Top-level controlled transform when the chart stopped changing.
    pub ideal: Ideal,
    pub total: Ideal,
    /// Divisor label and its multiplicity in the total transform.
    pub mults: Vec<(usize, u64)>,
}

#[derive(Debug, Clone)]
pub struct CenterRecord {
    pub chart: usize,
    pub ideal: Ideal,
    pub coords: Vec<usize>,
    /// Labels of the divisors cut out, for monomial centers.
    pub labels: Vec<usize>,
    pub halted: bool,
}

#[derive(Debug, Clone)]
pub struct StageRecord {
    pub index: usize,
    pub fd: FdTrace,
    pub max_w: Option<Rational>,
    pub max_t: Option<TValue>,
    pub gamma: Option<GammaValue>,
    pub centers: Vec<CenterRecord>,
    /// Trace of every chart evaluated at this stage.
    pub traces: Vec<(usize, FdTrace)>,
    /// New divisor label, when something was blown up.
    pub label: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub ring: Ring,
    pub b: u64,
    pub nodes: Vec<NodeRecord>,
    pub stages: Vec<StageRecord>,
    pub checks: Vec<DescentCheck>,
    /// Embedded mode: stage at which the strict transform was swallowed.
    pub stop_stage: Option<usize>,
}

impl Run {
    pub fn node(&self, id: usize) -> &NodeRecord {
        &self.nodes[id]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &NodeRecord> {
        self.nodes.iter().filter(|n| n.status.is_leaf())
    }

    /// Centers of a stage as ideals.
    pub fn centers(&self, stage: usize) -> Vec<&Ideal> {
        self.stages.get(stage).map(|s| s.centers.iter().map(|c| &c.ideal).collect()).unwrap_or_default()
    }
}

fn halt_reason(err: &Error) -> Option<HaltReason> {
    Some(match err {
        Error::NonConvertible(_) => HaltReason::NonConvertible,
        Error::DivisorialPartNotSmooth(_) => HaltReason::DivisorialPartNotSmooth,
        Error::BoundaryCap(..) => HaltReason::BoundaryCap,
        Error::ThresholdOverflow => HaltReason::ThresholdOverflow,
        _ => return None,
    })
}

struct Active {
    node: Node,
    eval: Option<Evaluation>,
}

/// Resolves `(𝔸^d, (J, b), E)` with `E` the listed coordinate hyperplanes.
pub fn resolve_basic_object(ring: &Ring, ideal: &Ideal, b: u64, boundary: &[usize], opts: &Options) -> Result<Run> {
    let n = ring.dim();
    if ideal.nvars() != n {
        return Err(Error::RingMismatch(ideal.nvars(), n));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if b == 0 {
        return Err(Error::Invalid("threshold must be at least 1".into()));
    }
    if let Some(&v) = boundary.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidIndex(v, n));
    }
    let chart = Chart::root(n, boundary);
    let labels = chart.divisors.iter().map(|d| d.label).collect();
    let root = Node { chart: chart.clone(), tower: vec![Level::top(ideal.clone(), b, labels)], total: ideal.clone() };
    let mut run = Run {
        ring: ring.clone(),
        b,
        nodes: vec![record(&root, Status::Active)],
        stages: Vec::new(),
        checks: Vec::new(),
        stop_stage: None,
    };
    let mut next_label = boundary.len() + 1;
    let mut active: BTreeMap<usize, Active> = BTreeMap::new();
    active.insert(0, Active { node: root, eval: None });
    let mut previous: Option<FdTrace> = None;

    for stage in 0.. {
        let mut traces = Vec::new();
        let ids: Vec<usize> = active.keys().copied().collect();
        for id in ids {
            let entry = active.get_mut(&id).expect("active id");
            if entry.eval.is_none() {
                let mut ctx = Context { ring, stage, verify: opts.verify, checks: &mut run.checks };
                match evaluate(&mut entry.node, &mut ctx) {
                    Ok(ev) => entry.eval = Some(ev),
                    Err(err) => match halt_reason(&err) {
                        Some(reason) => {
                            let done = active.remove(&id).expect("active id");
                            run.nodes[id] = record(&done.node, Status::Halted(reason, err.to_string()));
                            continue;
                        }
                        None => return Err(err),
                    },
                }
            }
            let ev = entry.eval.as_ref().expect("evaluated");
            if ev.trace.is_resolved() {
                let done = active.remove(&id).expect("active id");
                run.nodes[id] = record(&done.node, Status::Resolved);
                continue;
            }
            traces.push((id, ev.trace.clone()));
        }
        let Some(max) = traces.iter().map(|t| &t.1).max().cloned() else {
            break;
        };
        if let Some(prev) = &previous {
            if max >= *prev {
                return Err(Error::Internal(format!("no progress at stage {stage}: {max} after {prev}")));
            }
        }
        previous = Some(max.clone());
        let max_w = traces.iter().filter_map(|t| t.1.top_w()).max();
        let max_t = traces.iter().filter_map(|t| t.1.top_t().cloned()).max();
        let gamma = traces.iter().filter_map(|t| t.1.top_gamma().cloned()).max();
        let selected: Vec<usize> = traces.iter().filter(|t| t.1 == max).map(|t| t.0).collect();
        let mut stage_rec = StageRecord {
            index: stage,
            fd: max,
            max_w,
            max_t,
            gamma,
            centers: Vec::new(),
            traces,
            label: None,
        };

        if stage >= opts.max_stages {
            for (id, entry) in std::mem::take(&mut active) {
                run.nodes[id] =
                    record(&entry.node, Status::Halted(HaltReason::StageCap, format!("stage cap {} reached", opts.max_stages)));
            }
            run.stages.push(stage_rec);
            break;
        }

        for &id in &selected {
            let entry = &active[&id];
            let plan = &entry.eval.as_ref().expect("evaluated").plan;
            let (ideal, coords, labels, halted) = match plan {
                Plan::Center { coords, ideal, labels, .. } => (ideal.clone(), coords.clone(), labels.clone(), false),
                Plan::NonCoordinate { ideal } => (ideal.clone(), Vec::new(), Vec::new(), true),
                Plan::Resolved => unreachable!("resolved charts are not selected"),
            };
            stage_rec.centers.push(CenterRecord { chart: id, ideal, coords, labels, halted });
        }

        if opts.mode == Mode::Embedded && strict_transform_swallowed(&active, &stage_rec.centers) {
            for (id, entry) in std::mem::take(&mut active) {
                certify_smooth(&entry.node, ring)?;
                run.nodes[id] = record(&entry.node, Status::StrictTransformSmooth);
            }
            // nothing is blown up at the stop, so no center halts its chart
            for c in &mut stage_rec.centers {
                c.halted = false;
            }
            run.stop_stage = Some(stage);
            run.stages.push(stage_rec);
            break;
        }

        let label = next_label;
        let mut used_label = false;
        for id in selected {
            let entry = active.remove(&id).expect("selected chart is active");
            let mut node = entry.node;
            match entry.eval.expect("evaluated").plan {
                Plan::NonCoordinate { ideal } => {
                    let detail = format!("center {} is not a coordinate subspace", ideal.format(ring));
                    run.nodes[id] = record(&node, Status::Halted(HaltReason::NonCoordinateCenter, detail));
                }
                Plan::Center { coords, change, .. } => {
                    if let Some(ch) = &change {
                        node.apply_change(ch)?;
                    }
                    run.nodes[id] = record(&node, Status::Interior);
                    let first = run.nodes.len();
                    for child in blow_up(&node, &coords, stage, label, first)? {
                        run.nodes.push(record(&child, Status::Active));
                        active.insert(child.chart.id, Active { node: child, eval: None });
                    }
                    used_label = true;
                }
                Plan::Resolved => unreachable!("resolved charts are not selected"),
            }
        }
        if used_label {
            stage_rec.label = Some(label);
            next_label += 1;
        }
        run.stages.push(stage_rec);
    }
    for (id, entry) in active {
        run.nodes[id] = record(&entry.node, Status::Active);
    }
    Ok(run)
}

/// Children of a node blown up along `coords`, with every valid tower level
/// replaced by its controlled transform.
fn blow_up(node: &Node, coords: &[usize], stage: usize, label: usize, first_id: usize) -> Result<Vec<Node>> {
    let n = node.chart.nvars;
    let charts = blowup_coordinate_center(&node.chart, coords, stage, label, first_id)?;
    let mut out = Vec::with_capacity(charts.len());
    for chart in charts {
        let m = chart.branch.expect("child chart has a branch");
        let images = blowup_images(n, coords, m);
        let mut tower = Vec::with_capacity(node.tower.len());
        for level in &node.tower {
            if level.flags.contains(&m) {
                break;
            }
            let pulled = level.ideal.substitute(&images)?;
            let ideal = controlled_transform(&pulled, level.b, m)?;
            tower.push(Level { ideal, ..level.clone() });
        }
        let total = node.total.substitute(&images)?;
        let mut chart = chart;
        chart.flag = tower.last().map(|l| l.flags.clone()).unwrap_or_default();
        out.push(Node { chart, tower, total });
    }
    Ok(out)
}

fn record(node: &Node, status: Status) -> NodeRecord {
    let mults = node
        .chart
        .divisors
        .iter()
        .map(|d| (d.label, node.total.coordinate_valuation(d.var).unwrap_or(0) as u64))
        .collect();
    NodeRecord { chart: node.chart.clone(), status, ideal: node.tower[0].ideal.clone(), total: node.total.clone(), mults }
}

/// Weak transform of the top ideal with respect to every exceptional divisor.
pub fn strict_transform(node: &Node) -> Ideal {
    let mut cur = node.tower[0].ideal.clone();
    for d in node.chart.divisors.iter().filter(|d| d.birth > 0) {
        if let Ok(a) = cur.coordinate_valuation(d.var) {
            if a > 0 {
                cur = cur.div_var_power(d.var, a).expect("valuation divides");
            }
        }
    }
    cur
}

/// Whether in some selected chart the strict transform is a component of the
/// center: contained in it with the same dimension.
fn strict_transform_swallowed(active: &BTreeMap<usize, Active>, centers: &[CenterRecord]) -> bool {
    centers.iter().any(|c| {
        let strict = strict_transform(&active[&c.chart].node);
        !strict.is_trivial()
            && c.ideal.gens().iter().all(|g| strict.radical_contains(g))
            && krull_dimension(&strict) == krull_dimension(&c.ideal)
    })
}

/// Jacobian criterion: `V(I)` smooth of codimension `c` when `I` plus the
/// `c`-minors of its Jacobian matrix is the unit ideal.
pub fn jacobian_smooth(ideal: &Ideal) -> bool {
    if ideal.is_trivial() {
        return true;
    }
    let n = ideal.nvars();
    let dim = krull_dimension(ideal);
    let codim = (n as i64 - dim) as usize;
    let gens = ideal.groebner().to_vec();
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let mut minors = Vec::new();
    for rows in subsets(gens.len(), codim) {
        for cols in subsets(n, codim) {
            let m: Vec<Vec<Polynomial>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let det = determinant(&m, n);
            if !det.is_zero() {
                minors.push(det);
            }
        }
    }
    ideal.sum(&Ideal::new(n, minors)).is_trivial()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Laplace expansion; the matrices are tiny.
fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        k => {
            let mut acc = Polynomial::zero(nvars);
            for c in 0..k {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&determinant(&minor, nvars));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

fn certify_smooth(node: &Node, ring: &Ring) -> Result<()> {
    let strict = strict_transform(node);
    if jacobian_smooth(&strict) {
        Ok(())
    } else {
        Err(Error::JacobianCheckFailed(strict.format(ring)))
    }
}
