//! User-facing tasks on top of the resolution engine.

pub mod corpus;
mod problem;
mod tree;

pub use problem::{parse_ideal, parse_polynomial, parse_problem, Problem, Task};
pub use tree::{emit_json, emit_text, ResolutionTree, TreeCenter, TreeDivisor, TreeNode, TreeStage, TreeTrace};

use crate::charts::weak_transform_extract;
use crate::error::Result;
use crate::exactpoly::{Ideal, Polynomial};
use crate::resolver::{monomial_endgame, resolve_basic_object, Mode, NodeRecord, Options, Run, Status};

/// Exponents `a` with `total = x^a` as ideals, when the weak part of the
/// total transform is the unit ideal.
pub fn principalization_certificate(node: &NodeRecord) -> Option<Vec<(usize, u64)>> {
    let excs: Vec<(usize, usize)> = node.chart.divisors.iter().map(|d| (d.label, d.var)).collect();
    let (weak, mults) = weak_transform_extract(&node.total, &excs).ok()?;
    if !weak.is_trivial() {
        return None;
    }
    let n = node.total.nvars();
    let mut mono = Polynomial::one(n);
    for (&(_, var), &(_, a)) in excs.iter().zip(&mults) {
        mono = mono.mul(&Polynomial::var(n, var).pow(a as u64));
    }
    if Ideal::new(n, [mono]) != node.total {
        return None;
    }
    Some(mults.into_iter().map(|(l, a)| (l, a as u64)).collect())
}

/// Runs the engine on `(I, 1)` with empty boundary and certifies every
/// resolved leaf.
pub fn principalize(problem: &Problem, verify: bool) -> Result<Run> {
    let opts = Options { max_stages: problem.max_stages, verify, mode: Mode::Resolve };
    let mut run = resolve_basic_object(&problem.ring, &problem.ideal, 1, &[], &opts)?;
    for node in &mut run.nodes {
        if node.status == Status::Resolved {
            if let Some(exps) = principalization_certificate(node) {
                node.mults = exps;
                node.status = Status::Principalized;
            }
        }
    }
    Ok(run)
}

/// Principalization of `I_X` stopped at the first stage where the strict
/// transform of `X` is a component of the center.
pub fn embedded_resolve(problem: &Problem, verify: bool) -> Result<Run> {
    let opts = Options { max_stages: problem.max_stages, verify, mode: Mode::Embedded };
    resolve_basic_object(&problem.ring, &problem.ideal, 1, &[], &opts)
}

/// The tree for a problem; embedded runs also carry the continued
/// principalization, whose stages agree with the stopped run up to the stop.
pub fn solve(problem: &Problem, verify: bool, with_traces: bool) -> Result<ResolutionTree> {
    let run = run_problem(problem, verify)?;
    let mut tree = ResolutionTree::from_run(&run, problem.task.name(), with_traces);
    if problem.task == Task::Embedded {
        let mut cont = ResolutionTree::from_run(&principalize(problem, verify)?, Task::Principalize.name(), with_traces);
        cont.stop_stage = run.stop_stage;
        tree.continuation = Some(Box::new(cont));
    }
    Ok(tree)
}

pub fn run_problem(problem: &Problem, verify: bool) -> Result<Run> {
    match problem.task {
        Task::Resolve => {
            let opts = Options { max_stages: problem.max_stages, verify, mode: Mode::Resolve };
            resolve_basic_object(&problem.ring, &problem.ideal, problem.b, &problem.boundary, &opts)
        }
        Task::Principalize => principalize(problem, verify),
        Task::Embedded => embedded_resolve(problem, verify),
        Task::Monomial => monomial_endgame(&problem.ring, &problem.mults, problem.b, problem.max_stages),
    }
}
