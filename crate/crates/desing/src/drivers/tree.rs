//! Serializable resolution trees and their text and JSON renderings.

use serde::{Deserialize, Serialize};

use crate::exactpoly::format_rational;
use crate::resolver::{Run, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeDivisor {
    pub label: usize,
    pub var: String,
    pub birth: usize,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub stage: usize,
    pub vars: Vec<String>,
    pub substitution: Vec<String>,
    pub exceptionals: Vec<TreeDivisor>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub ideal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeCenter {
    pub chart: usize,
    pub ideal: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisors: Vec<usize>,
    #[serde(default)]
    pub halted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeTrace {
    pub chart: usize,
    pub fd: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeStage {
    pub index: usize,
    pub max_w_ord: Option<String>,
    pub max_t: Option<String>,
    pub gamma: Option<String>,
    pub fd: String,
    pub centers: Vec<TreeCenter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_label: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<TreeTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResolutionTree {
    pub task: String,
    pub vars: Vec<String>,
    pub b: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop_stage: Option<usize>,
    pub nodes: Vec<TreeNode>,
    pub stages: Vec<TreeStage>,
    /// Embedded task: the principalization carried on past the stop.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub continuation: Option<Box<ResolutionTree>>,
}

impl ResolutionTree {
    /// `with_traces` keeps every chart's trace per stage, not only the maximum.
    pub fn from_run(run: &Run, task: &str, with_traces: bool) -> ResolutionTree {
        let ring = &run.ring;
        let mut nodes: Vec<TreeNode> = run
            .nodes
            .iter()
            .map(|rec| {
                let chart = &rec.chart;
                let detail = match &rec.status {
                    Status::Halted(_, d) => Some(d.clone()),
                    _ => None,
                };
                TreeNode {
                    id: chart.id,
                    parent: chart.parent,
                    stage: chart.stage,
                    vars: ring.names().to_vec(),
                    substitution: chart.trail.iter().map(|t| t.describe(ring)).collect(),
                    exceptionals: chart
                        .divisors
                        .iter()
                        .map(|d| TreeDivisor {
                            label: d.label,
                            var: ring.name(d.var).to_string(),
                            birth: d.birth,
                            mult: rec.mults.iter().find(|m| m.0 == d.label).map(|m| m.1).unwrap_or(0),
                        })
                        .collect(),
                    status: rec.status.name(),
                    detail,
                    ideal: rec.ideal.format(ring),
                }
            })
            .collect();
        nodes.sort_by_key(|n| (n.stage, n.id));
        let stages = run
            .stages
            .iter()
            .map(|s| TreeStage {
                index: s.index,
                max_w_ord: s.max_w.as_ref().map(format_rational),
                max_t: s.max_t.as_ref().map(|t| t.to_string()),
                gamma: s.gamma.as_ref().map(|g| g.to_string()),
                fd: s.fd.to_string(),
                centers: s
                    .centers
                    .iter()
                    .map(|c| TreeCenter {
                        chart: c.chart,
                        ideal: c.ideal.format(ring),
                        divisors: c.labels.clone(),
                        halted: c.halted,
                    })
                    .collect(),
                new_label: s.label,
                traces: if with_traces {
                    s.traces.iter().map(|(chart, fd)| TreeTrace { chart: *chart, fd: fd.to_string() }).collect()
                } else {
                    Vec::new()
                },
            })
            .collect();
        ResolutionTree {
            task: task.to_string(),
            vars: ring.names().to_vec(),
            b: run.b,
            stop_stage: run.stop_stage,
            nodes,
            stages,
            continuation: None,
        }
    }
}

pub fn emit_json(tree: &ResolutionTree) -> String {
    serde_json::to_string_pretty(tree).expect("tree serializes")
}

pub fn emit_text(tree: &ResolutionTree) -> String {
    let mut out = emit_text_body(tree);
    if let Some(cont) = &tree.continuation {
        out.push_str("continued principalization:\n");
        out.push_str(&emit_text_body(cont));
    }
    out
}

fn emit_text_body(tree: &ResolutionTree) -> String {
    let mut out = String::new();
    out.push_str(&format!("task {} on {} (b = {})\n", tree.task, tree.vars.join(", "), tree.b));
    for s in &tree.stages {
        let centers: Vec<String> = s
            .centers
            .iter()
            .map(|c| {
                let what = if c.divisors.is_empty() {
                    c.ideal.clone()
                } else {
                    let mut labels = c.divisors.clone();
                    labels.sort_unstable();
                    labels.iter().map(|l| format!("H{l}")).collect::<Vec<_>>().join(" ∩ ")
                };
                if c.halted {
                    format!("{what} (halted)")
                } else {
                    what
                }
            })
            .collect();
        let mut unique = centers.clone();
        unique.dedup();
        match &s.gamma {
            Some(g) if s.max_t.is_none() => {
                out.push_str(&format!("stage {}: Γmax = {} center {}\n", s.index, g, unique.join(", ")));
            }
            _ => {
                out.push_str(&format!(
                    "stage {}: max w-ord = {}, max t = {}, fd = {}\n",
                    s.index,
                    s.max_w_ord.as_deref().unwrap_or("-"),
                    s.max_t.as_deref().unwrap_or("-"),
                    s.fd
                ));
                for (c, text) in s.centers.iter().zip(&centers) {
                    out.push_str(&format!("  center {} in chart {}\n", text, c.chart));
                }
            }
        }
        for t in &s.traces {
            out.push_str(&format!("  chart {}: {}\n", t.chart, t.fd));
        }
        if let Some(l) = s.new_label {
            out.push_str(&format!("  new divisor H{} born at stage {}\n", l, s.index + 1));
        }
    }
    match (tree.stop_stage, tree.task.as_str()) {
        (Some(l), "embedded") => {
            out.push_str(&format!("stopped at stage {l}: strict transform is a component of the center\n"))
        }
        (Some(l), _) => out.push_str(&format!("embedded resolution stops at stage {l}\n")),
        (None, _) => {}
    }
    out.push_str("charts:\n");
    for n in &tree.nodes {
        let parent = n.parent.map(|p| format!(", parent {p}")).unwrap_or_default();
        let subst = if n.substitution.is_empty() { "root".to_string() } else { n.substitution.join("; ") };
        let divs: Vec<String> = n
            .exceptionals
            .iter()
            .map(|d| format!("H{} = {{{} = 0}} born {} mult {}", d.label, d.var, d.birth, d.mult))
            .collect();
        out.push_str(&format!("  chart {} (stage {}{}): {}\n", n.id, n.stage, parent, subst));
        if !divs.is_empty() {
            out.push_str(&format!("    divisors: {}\n", divs.join(", ")));
        }
        out.push_str(&format!("    ideal: {}\n", n.ideal));
        match &n.detail {
            Some(d) => out.push_str(&format!("    status: {} ({})\n", n.status, d)),
            None => out.push_str(&format!("    status: {}\n", n.status)),
        }
    }
    out
}
