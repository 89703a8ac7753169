use desing::drivers::parse_polynomial;
use desing::exactpoly::{
    gcd, krull_dimension, normal_form, rat, Ideal, Monomial, Polynomial, Rational, Ring, TermOrder,
};
use desing::deltaorder::order_at_point;
use num_traits::Zero;
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

/// Order at a point by scanning mixed partials level by level until one
/// does not vanish there.
fn taylor_order(f: &Polynomial, point: &[Rational]) -> u64 {
    let n = f.nvars();
    let mut level = vec![f.clone()];
    let mut k = 0;
    loop {
        if level.iter().any(|g| !g.eval(point).is_zero()) {
            return k;
        }
        let mut next: Vec<Polynomial> = Vec::new();
        for g in &level {
            for i in 0..n {
                let d = g.derivative(i);
                if !d.is_zero() && !next.contains(&d) {
                    next.push(d);
                }
            }
        }
        level = next;
        k += 1;
    }
}

fn poly_strategy(n: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -3i64..=3), 1..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial(e), rat(c, 1))))
    })
}

fn nonzero_poly(n: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    poly_strategy(n, max_terms, max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

#[test]
fn arithmetic_examples() {
    let r = ring(&["x", "y"]);
    assert!(p(&r, "x").add(&p(&r, "-x")).is_zero());
    assert_eq!(p(&r, "x+y").mul(&p(&r, "x-y")), p(&r, "x^2-y^2"));
    // repeated multiplication oracle
    let base = p(&r, "x+1");
    let cube = base.mul(&base).mul(&base);
    assert_eq!(base.pow(3), cube);
    assert_eq!(base.pow(3), p(&r, "x^3+3*x^2+3*x+1"));
}

#[test]
fn derivative_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(p(&r, "x^2-y^3").derivative(1), p(&r, "-3*y^2"));
    assert!(p(&r, "7").derivative(0).is_zero());
    assert_eq!(p(&r, "x^2*y").derivative(0), p(&r, "2*x*y"));
}

#[test]
fn substitution_examples() {
    let r = ring(&["x", "y", "t"]);
    let f = p(&r, "x^2-y^3");
    let pulled = f.substitute(&[p(&r, "t*y"), p(&r, "y"), p(&r, "t")]).unwrap();
    assert_eq!(pulled, p(&r, "t^2*y^2-y^3"));
    let id: Vec<_> = (0..3).map(|i| Polynomial::var(3, i)).collect();
    assert_eq!(f.substitute(&id).unwrap(), f);
    assert_eq!(p(&r, "x+y").set_zero(&[0]), p(&r, "y"));
    assert!(f.substitute(&id[..2]).is_err());
}

#[test]
fn coordinate_valuation_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(ideal(&r, &["x^3*y", "x^5"]).coordinate_valuation(0).unwrap(), 3);
    assert_eq!(Ideal::unit(2).coordinate_valuation(1).unwrap(), 0);
    let r4 = ring(&["x1", "y1", "z1", "w1"]);
    let j1 = ideal(&r4, &["x1*(1+y1^2+z1^2+w1^2)", "x1^5*(1+y1^6+z1^6+w1^6)"]);
    assert_eq!(j1.coordinate_valuation(0).unwrap(), 1);
}

#[test]
fn order_at_point_examples() {
    let r = ring(&["x", "y"]);
    let cusp = ideal(&r, &["x^2-y^3"]);
    assert_eq!(order_at_point(&cusp, &[rat(0, 1), rat(0, 1)]).unwrap(), 2);
    let at = [rat(1, 1), rat(1, 1)];
    assert_eq!(order_at_point(&cusp, &at).unwrap(), taylor_order(&cusp.gens()[0], &at));
    assert_eq!(order_at_point(&cusp, &at).unwrap(), 1);
    assert_eq!(order_at_point(&Ideal::unit(2), &at).unwrap(), 0);
}

#[test]
fn groebner_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(ideal(&r, &["x+y", "x-y"]), ideal(&r, &["x", "y"]));
    // the single S-polynomial x*(xy) - y*(x^2) = 0 already
    let g = ideal(&r, &["x^2", "x*y"]);
    let mut basis = g.groebner().to_vec();
    basis.sort_by_key(|f| f.format(&r));
    let mut expected = vec![p(&r, "x^2"), p(&r, "x*y")];
    expected.sort_by_key(|f| f.format(&r));
    assert_eq!(basis, expected);
    assert!(ideal(&r, &["x", "1-x"]).groebner().iter().any(|f| f.is_constant()));
}

#[test]
fn triviality_examples() {
    let r = ring(&["x", "y"]);
    assert!(ideal(&r, &["x", "1-x"]).is_trivial());
    assert!(!ideal(&r, &["x", "y^2"]).is_trivial());
    assert!(ideal(&r, &["2"]).is_trivial());
}

#[test]
fn radical_membership_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2"]);
    assert!(i.radical_contains(&p(&r, "x")));
    assert!(!i.radical_contains(&p(&r, "y")));
    assert!(!ideal(&r, &["x"]).radical_contains(&p(&r, "1+y^2")));
}

#[test]
fn combination_examples() {
    let r = ring(&["x", "y", "z"]);
    assert_eq!(ideal(&r, &["x"]).sum(&ideal(&r, &["y"])).gens(), ideal(&r, &["x", "y"]).gens());
    let sq = ideal(&r, &["x", "y"]).power(2);
    let mut gens = sq.gens().to_vec();
    gens.sort_by_key(|f| f.format(&r));
    let mut expected = vec![p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")];
    expected.sort_by_key(|f| f.format(&r));
    assert_eq!(gens, expected);
    assert_eq!(ideal(&r, &["x"]).product(&ideal(&r, &["y", "z"])), ideal(&r, &["x*y", "x*z"]));
}

#[test]
fn dimension_examples() {
    let r = ring(&["x", "y", "z"]);
    assert_eq!(krull_dimension(&ideal(&r, &["x"])), 2);
    assert_eq!(krull_dimension(&ideal(&r, &["x", "y", "z"])), 0);
    // V(xy) = V(x) ∪ V(y): two planes
    assert_eq!(krull_dimension(&ideal(&r, &["x*y"])), 2);
    assert_eq!(krull_dimension(&ideal(&r, &["x*y", "z"])), 1);
}

#[test]
fn gcd_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(gcd(&p(&r, "x^2-y^2"), &p(&r, "x-y")), p(&r, "x-y"));
    assert_eq!(gcd(&p(&r, "x^2*y+x*y^2"), &p(&r, "x*y")), p(&r, "x*y"));
    assert_eq!(gcd(&p(&r, "x+1"), &p(&r, "x-1")), Polynomial::one(2));
}

#[test]
fn parse_and_format_round_trip() {
    let r = ring(&["x", "y"]);
    let f = p(&r, "3/2*x^2*y - (x - y)^2 + 5");
    assert_eq!(p(&r, &f.format(&r)), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn buchberger_membership_both_ways(gens in prop::collection::vec(nonzero_poly(3, 3, 3), 1..=3)) {
        let id = Ideal::new(3, gens.clone());
        let basis = id.groebner().to_vec();
        for g in &gens {
            prop_assert!(normal_form(g, &basis, TermOrder::DegRevLex).is_zero());
        }
        let original = Ideal::new(3, gens);
        for b in &basis {
            prop_assert!(original.contains(b));
        }
    }

    #[test]
    fn monomial_triviality_matches_evaluation(exps in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=3)) {
        let gens: Vec<Polynomial> = exps.iter().map(|e| Polynomial::term(Monomial(e.clone()), rat(1, 1))).collect();
        let id = Ideal::new(3, gens.clone());
        // a monomial ideal has a common root iff it has one among the 0/1 points
        let mut has_root = false;
        for mask in 0..8u32 {
            let pt: Vec<Rational> = (0..3).map(|i| rat(((mask >> i) & 1) as i64, 1)).collect();
            if gens.iter().all(|g| g.eval(&pt).is_zero()) {
                has_root = true;
            }
        }
        prop_assert_eq!(id.is_trivial(), !has_root);
        if id.is_trivial() {
            prop_assert!(normal_form(&Polynomial::one(3), id.groebner(), TermOrder::DegRevLex).is_zero());
        }
    }

    #[test]
    fn order_at_point_matches_taylor_scan(
        gens in prop::collection::vec(nonzero_poly(2, 4, 4), 1..=2),
        a in -2i64..=2,
        b in -2i64..=2,
    ) {
        let pt = [rat(a, 1), rat(b, 1)];
        let id = Ideal::new(2, gens.clone());
        let oracle = gens.iter().map(|g| taylor_order(g, &pt)).min().unwrap();
        prop_assert_eq!(order_at_point(&id, &pt).unwrap(), oracle);
    }

    #[test]
    fn valuation_additive_and_min_stable(
        f in nonzero_poly(3, 3, 3),
        g in nonzero_poly(3, 3, 3),
        i in 0usize..3,
        k in 0u64..4,
    ) {
        let shifted = f.mul(&Polynomial::var(3, i).pow(k));
        prop_assert_eq!(shifted.coordinate_valuation(i).unwrap() as u64, f.coordinate_valuation(i).unwrap() as u64 + k);
        let both = Ideal::new(3, [f.clone(), g.clone()]);
        let expected = f.coordinate_valuation(i).unwrap().min(g.coordinate_valuation(i).unwrap());
        prop_assert_eq!(both.coordinate_valuation(i).unwrap(), expected);
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(
        f in nonzero_poly(2, 3, 3),
        g in nonzero_poly(2, 3, 3),
        h in nonzero_poly(2, 2, 2),
    ) {
        let a = f.mul(&h);
        let b = g.mul(&h);
        let d = gcd(&a, &b);
        let qa = a.exact_div(&d);
        let qb = b.exact_div(&d);
        prop_assert!(qa.is_some() && qb.is_some());
        prop_assert!(gcd(&qa.unwrap(), &qb.unwrap()).is_constant());
        prop_assert!(d.exact_div(&h.monic()).is_some() || h.is_constant());
    }
}
