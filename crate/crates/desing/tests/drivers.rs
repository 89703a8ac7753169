use std::process::Command;

use desing::drivers::{
    corpus::CORPUS, emit_json, emit_text, parse_problem, principalization_certificate, run_problem, solve,
    ResolutionTree, Task,
};
use desing::exactpoly::{Ideal, Polynomial};
use desing::resolver::Status;
use desing::Error;

#[test]
fn parses_the_cusp_problem() {
    let p = parse_problem("vars: x y\nideal: x^2 - y^3\nb: 2\ntask: resolve").unwrap();
    assert_eq!(p.ring.names(), ["x", "y"]);
    assert_eq!(p.b, 2);
    assert_eq!(p.task, Task::Resolve);
    assert!(p.boundary.is_empty());
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    assert_eq!(p.ideal, Ideal::new(2, [x.pow(2).sub(&y.pow(3))]));
}

#[test]
fn parses_the_line_and_plane_problem() {
    let p = parse_problem("vars: x1 x2 x3\nideal: x1, x2*x3\ntask: principalize").unwrap();
    assert_eq!(p.b, 1);
    assert_eq!(p.task, Task::Principalize);
    let v = |i| Polynomial::var(3, i);
    assert_eq!(p.ideal, Ideal::new(3, [v(0), v(1).mul(&v(2))]));
}

#[test]
fn parses_rationals_comments_and_boundary() {
    let p = parse_problem("# a comment\nvars: x y z\nideal: 1/2*x^2 − (y + z)^2  # trailing\nboundary: z, y\nmaxStages: 7\n").unwrap();
    assert_eq!(p.boundary, vec![2, 1]);
    assert_eq!(p.max_stages, 7);
    assert_eq!(p.task, Task::Resolve);
}

#[test]
fn monomial_task_orders_multiplicities_by_boundary() {
    let p = parse_problem("vars: x y\nboundary: y x\nmults: x=3, y=1\nb: 2\ntask: monomial\n").unwrap();
    assert_eq!(p.mults, vec![(1, 1), (0, 3)]);
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_problem("vars: x y\nideal: x^ + y\n").unwrap_err();
    match err {
        Error::Syntax { line, col, .. } => {
            assert_eq!(line, 2);
            assert_eq!(col, 11);
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
    assert!(matches!(parse_problem("vars: x\nideal: x +\n"), Err(Error::Syntax { line: 2, .. })));
    assert!(matches!(parse_problem("vars: x\nideal: (x\n"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_problem("vars: x\nideal: x/y\n"), Err(Error::Syntax { .. }) | Err(Error::UnknownVariable(_))));
    assert!(matches!(parse_problem("vars: x\nbogus: 1\n"), Err(Error::Syntax { line: 2, col: 1, .. })));
    assert!(matches!(parse_problem("vars: x\nideal: x\ntask: dance\n"), Err(Error::Syntax { line: 3, .. })));
}

#[test]
fn semantic_errors() {
    assert!(matches!(parse_problem("vars: x\nideal: y\n"), Err(Error::UnknownVariable(v)) if v == "y"));
    assert!(matches!(parse_problem("vars: x\nideal: x - x\n"), Err(Error::ZeroIdeal)));
    assert!(parse_problem("vars: x x\nideal: x\n").is_err());
    assert!(parse_problem("vars: x y\nideal: x\nboundary: y y\n").is_err());
    assert!(parse_problem("ideal: x\n").is_err());
    assert!(parse_problem("vars: x\nideal: x\nb: 0\n").is_err());
}

#[test]
fn json_round_trip() {
    for golden in CORPUS {
        let tree = solve(&golden.problem(), false, true).unwrap();
        let text = emit_json(&tree);
        let back: ResolutionTree = serde_json::from_str(&text).unwrap();
        assert_eq!(back, tree, "{}", golden.name);
    }
}

#[test]
fn json_uses_the_documented_field_names() {
    let tree = solve(&CORPUS[5].problem(), false, false).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_json(&tree)).unwrap();
    let node = &v["nodes"][0];
    for key in ["id", "parent", "stage", "vars", "substitution", "exceptionals", "status"] {
        assert!(node.get(key).is_some(), "node field {key}");
    }
    let stage = &v["stages"][0];
    for key in ["index", "maxWOrd", "maxT", "gamma", "fd", "centers"] {
        assert!(stage.get(key).is_some(), "stage field {key}");
    }
    assert_eq!(stage["maxWOrd"], "1");
    let second = &v["nodes"][1]["exceptionals"][0];
    for key in ["label", "var", "birth", "mult"] {
        assert!(second.get(key).is_some(), "divisor field {key}");
    }
}

#[test]
fn emission_is_deterministic() {
    for golden in CORPUS {
        let a = solve(&golden.problem(), false, true).unwrap();
        let b = solve(&golden.problem(), false, true).unwrap();
        assert_eq!(emit_json(&a), emit_json(&b), "{}", golden.name);
        assert_eq!(emit_text(&a), emit_text(&b), "{}", golden.name);
    }
}

#[test]
fn nodes_are_sorted_and_parents_precede_children() {
    let tree = solve(&CORPUS[4].problem(), false, false).unwrap();
    let keys: Vec<(usize, usize)> = tree.nodes.iter().map(|n| (n.stage, n.id)).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    for n in &tree.nodes {
        if let Some(parent) = n.parent {
            let pn = tree.nodes.iter().find(|m| m.id == parent).unwrap();
            assert!(pn.stage < n.stage);
        }
    }
    assert_eq!(tree.nodes.iter().filter(|n| n.parent.is_none()).count(), 1);
}

#[test]
fn already_resolved_input_gives_a_single_root() {
    let tree = solve(&parse_problem("vars: x y\nideal: x\nb: 2\n").unwrap(), false, false).unwrap();
    assert!(tree.stages.is_empty());
    assert_eq!(tree.nodes.len(), 1);
    assert_eq!(tree.nodes[0].status, "resolved");
}

#[test]
fn monomial_text_listing() {
    let tree = solve(&CORPUS[0].problem(), false, false).unwrap();
    let text = emit_text(&tree);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("stage")).collect();
    assert_eq!(
        lines,
        vec![
            "stage 0: Γmax = (-1, 3/2, [2]) center H2",
            "stage 1: Γmax = (-1, 3/2, [1]) center H1",
            "stage 2: Γmax = (-2, 1, [4, 3]) center H3 ∩ H4",
        ]
    );
}

#[test]
fn principalized_leaves_reproduce_the_total_transform() {
    let run = run_problem(&CORPUS[4].problem(), false).unwrap();
    for leaf in run.leaves().filter(|n| n.status == Status::Principalized) {
        let exps = principalization_certificate(leaf).unwrap();
        let n = leaf.total.nvars();
        let mut mono = Polynomial::one(n);
        for (label, a) in exps {
            let d = leaf.chart.divisor(label).unwrap();
            mono = mono.mul(&Polynomial::var(n, d.var).pow(a));
        }
        assert_eq!(Ideal::new(n, [mono]), leaf.total);
    }
}

#[test]
fn embedded_runs_carry_the_continuation() {
    let tree = solve(&CORPUS[9].problem(), false, false).unwrap();
    let stop = tree.stop_stage.unwrap();
    let cont = tree.continuation.as_ref().unwrap();
    assert_eq!(cont.stop_stage, Some(stop));
    for (a, b) in tree.stages.iter().zip(&cont.stages).take(stop + 1) {
        assert_eq!(a.fd, b.fd);
        let ca: Vec<&str> = a.centers.iter().map(|c| c.ideal.as_str()).collect();
        let cb: Vec<&str> = b.centers.iter().map(|c| c.ideal.as_str()).collect();
        assert_eq!(ca, cb);
    }
}

#[test]
fn embedded_first_center_contains_the_singular_locus() {
    // the stage-0 center lies over Sing(X): its ideal is inside rad(I + Jacobian)
    let p = CORPUS[9].problem();
    let run = run_problem(&p, false).unwrap();
    let f = &p.ideal.gens()[0];
    let sing = p.ideal.with(f.derivative(0)).with(f.derivative(1));
    for g in run.centers(0)[0].gens() {
        assert!(sing.radical_contains(g));
    }
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_desing"))
}

#[test]
fn cli_emits_text_and_json() {
    let dir = std::env::temp_dir().join(format!("desing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cusp.txt");
    std::fs::write(&path, "vars: x y\nideal: x^2 - y^3\nb: 2\ntask: resolve\n").unwrap();

    let out = cli().arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("task resolve on x, y (b = 2)"));
    assert!(text.contains("stage 0: max w-ord = 1, max t = (1, 0), fd = (1; 0) (3/2; 0) ∞"));

    let out = cli().arg(&path).args(["--emit", "json", "--trace"]).output().unwrap();
    assert!(out.status.success());
    let tree: ResolutionTree = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(tree.stages.len(), 1);
    assert!(!tree.stages[0].traces.is_empty());

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "vars: x\nideal: x^\n").unwrap();
    let out = cli().arg(&bad).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_seed_corpus_passes() {
    let out = cli().arg("--seed-corpus").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), CORPUS.len());
}
