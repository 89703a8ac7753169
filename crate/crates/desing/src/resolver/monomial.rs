//! Combinatorial resolution of monomial basic objects by the Γ invariant.

use std::collections::BTreeMap;

use super::{CenterRecord, NodeRecord, Run, StageRecord, Status};
use crate::charts::{blowup_coordinate_center, Chart};
use crate::error::{Error, Result};
use crate::exactpoly::{Ideal, Polynomial, Ring};
use crate::invariants::{gamma_max, FdTerminal, FdTrace, MonomialObjectData};

/// A chart of a monomial run: divisors with their multiplicities.
#[derive(Debug, Clone)]
pub struct MonomialChart {
    pub chart: Chart,
    pub mults: BTreeMap<usize, u64>,
}

impl MonomialChart {
    fn data(&self, b: u64) -> MonomialObjectData {
        let divisors = self.chart.divisors.iter().map(|d| (d.label, d.var, self.mults[&d.label])).collect();
        MonomialObjectData { divisors, b }
    }

    fn monomial(&self) -> Polynomial {
        let n = self.chart.nvars;
        self.chart
            .divisors
            .iter()
            .fold(Polynomial::one(n), |acc, d| acc.mul(&Polynomial::var(n, d.var).pow(self.mults[&d.label])))
    }

    fn record(&self, status: Status) -> NodeRecord {
        let ideal = Ideal::new(self.chart.nvars, [self.monomial()]);
        let mults = self.chart.divisors.iter().map(|d| (d.label, self.mults[&d.label])).collect();
        NodeRecord { chart: self.chart.clone(), status, ideal: ideal.clone(), total: ideal, mults }
    }
}

/// Blows up the Γ-maximal center until no set of divisors reaches `b`.
/// `divisors` lists `(var, multiplicity)`; labels are assigned in order.
pub fn monomial_endgame(ring: &Ring, divisors: &[(usize, u64)], b: u64, max_stages: usize) -> Result<Run> {
    let n = ring.dim();
    if b == 0 {
        return Err(Error::Invalid("threshold must be at least 1".into()));
    }
    let vars: Vec<usize> = divisors.iter().map(|d| d.0).collect();
    if let Some(&v) = vars.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidIndex(v, n));
    }
    let chart = Chart::root(n, &vars);
    let mults = chart.divisors.iter().zip(divisors).map(|(d, x)| (d.label, x.1)).collect();
    let root = MonomialChart { chart, mults };
    let mut run = Run {
        ring: ring.clone(),
        b,
        nodes: vec![root.record(Status::Active)],
        stages: Vec::new(),
        checks: Vec::new(),
        stop_stage: None,
    };
    let mut active: BTreeMap<usize, MonomialChart> = BTreeMap::new();
    active.insert(0, root);
    let mut next_label = divisors.len() + 1;
    let mut previous = None;

    for stage in 0.. {
        let mut traces = Vec::new();
        let mut plans = BTreeMap::new();
        for (&id, mc) in &active {
            let data = mc.data(b);
            if !data.has_sing() {
                continue;
            }
            let (gamma, coords) = gamma_max(&data, n)?;
            traces.push((id, FdTrace { levels: Vec::new(), terminal: FdTerminal::Gamma(gamma.clone()) }));
            plans.insert(id, (gamma, coords));
        }
        let resolved: Vec<usize> = active.keys().filter(|id| !plans.contains_key(id)).copied().collect();
        for id in resolved {
            let mc = active.remove(&id).expect("active id");
            run.nodes[id] = mc.record(Status::Resolved);
        }
        let Some(max) = plans.values().map(|p| p.0.clone()).max() else {
            break;
        };
        if let Some(prev) = &previous {
            if max >= *prev {
                return Err(Error::Internal(format!("Γ did not decrease at stage {stage}")));
            }
        }
        previous = Some(max.clone());
        let fd = FdTrace { levels: Vec::new(), terminal: FdTerminal::Gamma(max.clone()) };
        let mut stage_rec = StageRecord {
            index: stage,
            fd,
            max_w: Some(Default::default()),
            max_t: None,
            gamma: Some(max.clone()),
            centers: Vec::new(),
            traces,
            label: None,
        };
        if stage >= max_stages {
            for (id, mc) in std::mem::take(&mut active) {
                let detail = format!("stage cap {max_stages} reached");
                run.nodes[id] = mc.record(Status::Halted(super::HaltReason::StageCap, detail));
            }
            run.stages.push(stage_rec);
            break;
        }
        let label = next_label;
        next_label += 1;
        stage_rec.label = Some(label);
        let selected: Vec<usize> = plans.iter().filter(|p| p.1 .0 == max).map(|p| *p.0).collect();
        for id in selected {
            let (gamma, coords) = &plans[&id];
            let mc = active.remove(&id).expect("selected chart is active");
            stage_rec.centers.push(CenterRecord {
                chart: id,
                ideal: Ideal::coordinates(n, coords),
                coords: coords.clone(),
                labels: gamma.labels(),
                halted: false,
            });
            let sum: u64 = gamma.labels().iter().map(|l| mc.mults[l]).sum();
            run.nodes[id] = mc.record(Status::Interior);
            let first = run.nodes.len();
            for child in blowup_coordinate_center(&mc.chart, coords, stage, label, first)? {
                let mut mults: BTreeMap<usize, u64> =
                    child.divisors.iter().filter(|d| d.label != label).map(|d| (d.label, mc.mults[&d.label])).collect();
                mults.insert(label, sum - b);
                let next = MonomialChart { chart: child, mults };
                run.nodes.push(next.record(Status::Active));
                active.insert(next.chart.id, next);
            }
        }
        run.stages.push(stage_rec);
    }
    Ok(run)
}
