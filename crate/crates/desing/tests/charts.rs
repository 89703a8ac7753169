use desing::charts::{
    apply_coordinate_change, blowup_coordinate_center, blowup_images, controlled_transform,
    strict_transform_hyperplane, weak_transform_extract, Chart, CoordinateChange, HyperplaneFate,
    TrailEntry,
};
use desing::deltaorder::order_at_point;
use desing::drivers::parse_polynomial;
use desing::exactpoly::{rat, Ideal, Monomial, Polynomial, Rational, Ring};
use proptest::prelude::*;

fn ring(names: &[&str]) -> Ring {
    Ring::new(names.iter().copied()).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r.dim(), gens.iter().map(|g| p(r, g)))
}

#[test]
fn plane_blowup_x_chart() {
    let r = ring(&["x", "y"]);
    let children = blowup_coordinate_center(&Chart::root(2, &[]), &[0, 1], 0, 1, 1).unwrap();
    assert_eq!(children.len(), 2);
    let x_chart = &children[0];
    assert_eq!(x_chart.branch, Some(0));
    assert_eq!(x_chart.divisors.len(), 1);
    assert_eq!((x_chart.divisors[0].label, x_chart.divisors[0].var), (1, 0));
    assert_eq!(x_chart.trail[0].describe(&r), "y -> x*y");
    assert_eq!(blowup_images(2, &[0, 1], 0), vec![p(&r, "x"), p(&r, "x*y")]);
}

#[test]
fn cusp_y_chart_pullback_and_transform() {
    // in the y-chart the old x is y*t; the variable x plays the role of t
    let r = ring(&["t", "y"]);
    let cusp = ideal(&r, &["t^2-y^3"]);
    let pulled = cusp.substitute(&blowup_images(2, &[0, 1], 1)).unwrap();
    assert_eq!(pulled, ideal(&r, &["y^2*(t^2-y)"]));
    assert_eq!(controlled_transform(&pulled, 2, 1).unwrap(), ideal(&r, &["t^2-y"]));
    assert!(controlled_transform(&pulled, 3, 1).is_err());
}

#[test]
fn hypersurface_center_is_identity_and_relabels() {
    let r = ring(&["x", "y"]);
    let root = Chart::root(2, &[0, 1]);
    let children = blowup_coordinate_center(&root, &[1], 0, 3, 1).unwrap();
    assert_eq!(children.len(), 1);
    let child = &children[0];
    assert_eq!(child.trail[0].describe(&r), "identity");
    let labels: Vec<(usize, usize)> = child.divisors.iter().map(|d| (d.label, d.var)).collect();
    assert_eq!(labels, vec![(1, 0), (3, 1)]);
    // the double line along a divisor loses all of its order
    let dl = ideal(&r, &["y^2"]);
    let pulled = dl.substitute(&blowup_images(2, &[1], 1)).unwrap();
    assert!(controlled_transform(&pulled, 2, 1).unwrap().is_trivial());
}

#[test]
fn surface_in_four_space_first_blowup() {
    let r = ring(&["x", "y", "z", "w"]);
    let i = ideal(&r, &["x^2+y^2+z^2+w^2", "x^6+y^6+z^6+w^6"]);
    let pulled = i.substitute(&blowup_images(4, &[0, 1, 2, 3], 0)).unwrap();
    let j1 = controlled_transform(&pulled, 1, 0).unwrap();
    assert_eq!(j1, ideal(&r, &["x*(1+y^2+z^2+w^2)", "x^5*(1+y^6+z^6+w^6)"]));
    let (weak, mults) = weak_transform_extract(&j1, &[(1, 0)]).unwrap();
    assert_eq!(weak, ideal(&r, &["1+y^2+z^2+w^2", "x^4*(1+y^6+z^6+w^6)"]));
    assert_eq!(mults, vec![(1, 1)]);
}

#[test]
fn weak_transform_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2-y^3"]);
    assert_eq!(weak_transform_extract(&i, &[]).unwrap(), (i.clone(), vec![]));
    let (weak, mults) = weak_transform_extract(&ideal(&r, &["x^3*y"]), &[(1, 0), (2, 1)]).unwrap();
    assert!(weak.is_trivial());
    assert_eq!(mults, vec![(1, 3), (2, 1)]);
}

#[test]
fn hyperplane_fates() {
    // {x4 = 0} with x4 in the center but not the chart variable stays a coordinate
    assert_eq!(strict_transform_hyperplane(3, &[0, 2, 3], 0), HyperplaneFate::Kept(3));
    assert_eq!(strict_transform_hyperplane(1, &[0, 2, 3], 0), HyperplaneFate::Kept(1));
    assert_eq!(strict_transform_hyperplane(0, &[0, 2, 3], 0), HyperplaneFate::BecameExceptional);
}

#[test]
fn flag_hyperplane_strict_transform_is_the_same_coordinate() {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    let images = blowup_images(4, &[0, 2, 3], 0);
    // pullback of x4 is x1*x4: dividing once by the exceptional coordinate gives x4 back
    let strict = images[3].div_var_power(0, 1).unwrap();
    assert_eq!(strict, p(&r, "x4"));
}

#[test]
fn coordinate_change_examples() {
    let r = ring(&["x", "y"]);
    let chart = Chart::root(2, &[]);
    let swap = CoordinateChange::AffineLinear {
        matrix: vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
        translation: vec![rat(0, 1), rat(0, 1)],
    };
    let (next, out) = apply_coordinate_change(&chart, &swap, &[ideal(&r, &["x^2-y^3"])]).unwrap();
    assert_eq!(out[0], ideal(&r, &["y^2-x^3"]));
    assert_eq!(next.trail.len(), 1);

    let r4 = ring(&["x1", "x2", "x3", "x4"]);
    let g = p(&r4, "x1^3+x2*x3^2");
    let tschirnhausen = CoordinateChange::Triangular { target: 3, scale: rat(1, 1), shift: g.neg() };
    let (_, out) = apply_coordinate_change(&Chart::root(4, &[]), &tschirnhausen, &[Ideal::new(4, [p(&r4, "x4").add(&g)])]).unwrap();
    assert_eq!(out[0], ideal(&r4, &["x4"]));

    let identity = CoordinateChange::Triangular { target: 0, scale: rat(1, 1), shift: Polynomial::zero(2) };
    let (_, out) = apply_coordinate_change(&chart, &identity, &[ideal(&r, &["x^2-y^3"])]).unwrap();
    assert_eq!(out[0], ideal(&r, &["x^2-y^3"]));

    let singular = CoordinateChange::AffineLinear {
        matrix: vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]],
        translation: vec![rat(0, 1), rat(0, 1)],
    };
    assert!(apply_coordinate_change(&chart, &singular, &[]).is_err());
    let not_triangular = CoordinateChange::Triangular { target: 0, scale: rat(1, 1), shift: p(&r, "x*y") };
    assert!(not_triangular.validate(2).is_err());
}

fn monomials_up_to_degree(n: usize, d: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(n)];
    let mut frontier = vec![Monomial::one(n)];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..n {
                let mm = m.mul(&Monomial::var(n, i));
                if !next.contains(&mm) {
                    next.push(mm);
                }
            }
        }
        out.extend(next.iter().map(|m| Polynomial::term(m.clone(), rat(1, 1))));
        frontier = next;
    }
    out
}

fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -3i64..=3), 0..=3)
        .prop_map(move |terms| Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial(e), rat(c, 1)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn affine_change_inverse_is_identity_on_monomials(
        entries in prop::collection::vec(-2i64..=2, 9),
        shift in prop::collection::vec(-2i64..=2, 3),
    ) {
        let matrix: Vec<Vec<Rational>> = entries.chunks(3).map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect();
        let change = CoordinateChange::AffineLinear { matrix, translation: shift.iter().map(|&v| rat(v, 1)).collect() };
        prop_assume!(change.validate(3).is_ok());
        let inverse = change.inverse(3).unwrap();
        let (fwd, back) = (change.images(3), inverse.images(3));
        for m in monomials_up_to_degree(3, 3) {
            prop_assert_eq!(m.substitute(&fwd).unwrap().substitute(&back).unwrap(), m.clone());
            prop_assert_eq!(m.substitute(&back).unwrap().substitute(&fwd).unwrap(), m);
        }
    }

    #[test]
    fn triangular_change_inverse_is_identity_on_monomials(
        target in 0usize..3,
        scale in prop::sample::select(vec![-2i64, -1, 1, 3]),
        shift in small_poly(3),
    ) {
        let shift = shift.set_zero(&[target]);
        let change = CoordinateChange::Triangular { target, scale: rat(scale, 1), shift };
        let inverse = change.inverse(3).unwrap();
        let (fwd, back) = (change.images(3), inverse.images(3));
        for m in monomials_up_to_degree(3, 3) {
            prop_assert_eq!(m.substitute(&fwd).unwrap().substitute(&back).unwrap(), m);
        }
    }

    #[test]
    fn controlled_then_weak_equals_weak_of_pullback(f in small_poly(3), g in small_poly(3), m in 0usize..3) {
        prop_assume!(!f.is_zero());
        let origin = [rat(0, 1), rat(0, 1), rat(0, 1)];
        let i = Ideal::new(3, [f, g].into_iter().filter(|h| !h.is_zero()));
        let b = order_at_point(&i, &origin).unwrap();
        prop_assume!(b >= 1);
        let pulled = i.substitute(&blowup_images(3, &[0, 1, 2], m)).unwrap();
        let controlled = controlled_transform(&pulled, b, m).unwrap();
        let (w1, m1) = weak_transform_extract(&controlled, &[(1, m)]).unwrap();
        let (w2, m2) = weak_transform_extract(&pulled, &[(1, m)]).unwrap();
        prop_assert_eq!(w1, w2);
        prop_assert_eq!(m1[0].1 as u64 + b, m2[0].1 as u64);
    }

    #[test]
    fn center_pulls_back_to_exceptional_hyperplane(m in 0usize..3, extra in 0usize..3) {
        // blow up a coordinate subspace and check the center's pullback cuts out {x_m = 0}
        let center: Vec<usize> = if extra == m { vec![m] } else { let mut c = vec![m, extra]; c.sort(); c };
        let center_ideal = Ideal::coordinates(3, &center);
        let pulled = center_ideal.substitute(&blowup_images(3, &center, m)).unwrap();
        prop_assert!(pulled.same_locus(&Ideal::coordinates(3, &[m])));
    }
}

#[test]
fn corpus_first_blowup_glues_along_exceptional_divisor() {
    use desing::drivers::{corpus::CORPUS, run_problem};
    for golden in CORPUS {
        let problem = golden.problem();
        let run = run_problem(&problem, false).unwrap();
        let n = problem.ring.dim();
        for rec in run.nodes.iter().filter(|r| r.chart.stage == 1) {
            let Some(TrailEntry::Blowup { center, chart_var }) =
                rec.chart.trail.iter().find(|t| matches!(t, TrailEntry::Blowup { .. }))
            else {
                panic!("a stage-1 chart records its blowup");
            };
            let pulled = Ideal::coordinates(n, center).substitute(&blowup_images(n, center, *chart_var)).unwrap();
            assert!(pulled.same_locus(&Ideal::coordinates(n, &[*chart_var])), "{}", golden.name);
        }
    }
}
