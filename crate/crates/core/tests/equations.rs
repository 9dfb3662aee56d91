mod common;

use common::*;
use denv::algebra::{PointP1, RatFun, Scalar, Series};
use denv::equations::{
    affine_coeff, chart_transform, cocycle_residual, eq_residual, gauge_series, gauge_transform, is_solution,
    schwarzian, series_schwarzian, GroupoidEq,
};
use denv::jets::{jet_identity, jet_of_map, Jet};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `2 f'''/f' - 3 (f''/f')^2` straight from the derivatives.
fn schwarzian_by_hand(f: &RatFun) -> RatFun {
    let (d1, d2, d3) = (f.derive(), f.derive().derive(), f.derive().derive().derive());
    let a = &d3 / &d1;
    let b = &d2 / &d1;
    &a.scale(&Scalar::from_int(2)) - &(&b * &b).scale(&Scalar::from_int(3))
}

fn random_jet(g: &mut ChaCha8Rng, x: Scalar, order: usize) -> Jet {
    let y = small_rational(g);
    let mut d: Vec<Scalar> = (0..order).map(|_| small_rational(g)).collect();
    while d[0].is_zero() {
        d[0] = small_rational(g);
    }
    Jet::new(x, y, d).unwrap()
}

#[test]
fn cocycles_vanish_on_random_pairs() {
    let mut g = rng(2024);
    for _ in 0..300 {
        let f = random_ratfun(&mut g, 4);
        let h = random_ratfun(&mut g, 4);
        assert!(cocycle_residual(2, &f, &h, None).unwrap().is_zero(), "kind 2 on {f:?}, {h:?}");
        assert!(cocycle_residual(3, &f, &h, None).unwrap().is_zero(), "kind 3 on {f:?}, {h:?}");
    }
}

#[test]
fn multiplicative_cocycle() {
    let mut g = rng(99);
    for _ in 0..40 {
        let f = random_ratfun(&mut g, 3);
        let h = random_ratfun(&mut g, 3);
        let eta = random_ratfun(&mut g, 2);
        let n = g.gen_range(-3..=3_i32);
        if n == 0 {
            continue;
        }
        assert!(cocycle_residual(1, &f, &h, Some((n, &eta))).unwrap().is_zero());
    }
    assert!(cocycle_residual(4, &px(&[0, 1]), &px(&[0, 1]), None).is_err());
    assert!(cocycle_residual(1, &px(&[0, 1]), &px(&[0, 1]), None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schwarzian_matches_definition(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = random_ratfun(&mut g, 3);
        prop_assert_eq!(schwarzian(&f), schwarzian_by_hand(&f));
        prop_assert_eq!(affine_coeff(&f), &f.derive().derive() / &f.derive());
    }

    #[test]
    fn schwarzian_kills_mobius(seed in any::<u64>()) {
        let mut g = rng(seed);
        let phi = random_mobius(&mut g);
        prop_assert!(schwarzian(&phi).is_zero());
        let f = random_ratfun(&mut g, 3);
        // invariance under post-composition by Möbius maps
        prop_assert_eq!(schwarzian(&phi.compose(&f)), schwarzian(&f));
    }

    #[test]
    fn gauge_transform_carries_solutions(seed in any::<u64>()) {
        let mut g = rng(seed);
        let phi = random_mobius(&mut g);
        let k = g.gen_range(2..=4_usize);
        let mut c = vec![0i64; k + 1];
        c[k] = 1;
        let r = px(&c);
        let mu = GroupoidEq::G2(rf(&[-1], &[0, 1]));
        let conj = r.mobius_conjugate(&phi).unwrap();
        let moved = gauge_transform(&mu, &phi).unwrap();
        prop_assert!(is_solution(&moved, &conj));
        // every power map solves G3(1/x^2)
        let nu = GroupoidEq::G3(rf(&[1], &[0, 0, 1]));
        prop_assert!(is_solution(&nu, &r));
        prop_assert!(is_solution(&gauge_transform(&nu, &phi).unwrap(), &conj));
    }

    #[test]
    fn diffpoly_prolongation_is_the_residual(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = random_ratfun(&mut g, 3);
        let c = random_ratfun(&mut g, 2);
        for e in [GroupoidEq::G2(c.clone()), GroupoidEq::G3(c.clone()), GroupoidEq::g1(2, c.clone()).unwrap()] {
            let dp = e.to_diffpoly();
            prop_assert_eq!(dp.eval_prolongation(&r), eq_residual(&e, &r));
            prop_assert_eq!(dp.total_derivative().eval_prolongation(&r), dp.eval_prolongation(&r).derive());
        }
    }
}

#[test]
fn solutions_close_under_composition() {
    let mu = GroupoidEq::G2(rf(&[-1], &[0, 1]));
    let (sq, cube) = (px(&[0, 0, 1]), px(&[0, 0, 0, 1]));
    assert!(is_solution(&mu, &sq) && is_solution(&mu, &cube));
    assert!(is_solution(&mu, &sq.compose(&cube)));
    assert!(is_solution(&mu, &rf(&[0, 5], &[1])));
    assert!(!is_solution(&mu, &px(&[1, 0, 1])));
    // the chart at infinity of -1/x is -1/x again, up to the affine term
    assert!(is_solution(&chart_transform(&mu), &px(&[0, 0, 1])));
    assert!(matches!(GroupoidEq::g1(0, RatFun::one()), Err(_)));
}

#[test]
fn series_gauge_matches_exact_gauge() {
    // pulling back along a Möbius series agrees with the exact transform expanded at 0
    let phi = rf(&[1, 2], &[3, 1]);
    let s = Series::variable(Scalar::zero(), 10).eval_ratfun(&phi).unwrap();
    let mu = rf(&[-1], &[0, 1]);
    let exact = gauge_transform(&GroupoidEq::G2(mu.clone()), &phi).unwrap();
    let expanded = Series::variable(Scalar::zero(), 8).eval_ratfun(exact.coefficient().unwrap()).unwrap();
    assert_eq!(gauge_series(&GroupoidEq::G2(mu), &s).unwrap(), expanded);
    assert!(series_schwarzian(&s).unwrap().is_zero());
}

#[test]
fn jet_groupoid_axioms() {
    let mut g = rng(31337);
    for _ in 0..200 {
        let order = g.gen_range(1..=6);
        let x0 = small_rational(&mut g);
        let a = random_jet(&mut g, x0.clone(), order);
        let b = random_jet(&mut g, a.target().clone(), order);
        let c = random_jet(&mut g, b.target().clone(), order);
        let left = a.then(&b).unwrap().then(&c).unwrap();
        let right = a.then(&b.then(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(a.then(&a.invert()).unwrap(), jet_identity(x0.clone(), order));
        assert_eq!(a.invert().then(&a).unwrap(), jet_identity(a.target().clone(), order));
        assert_eq!(jet_identity(x0, order).then(&a).unwrap(), a);
        assert_eq!(a.then(&jet_identity(a.target().clone(), order)).unwrap(), a);
        assert_eq!(a.invert().invert(), a);
    }
}

#[test]
fn jets_of_maps_are_functorial() {
    let mut g = rng(5);
    let mut checked = 0;
    while checked < 60 {
        let f = random_ratfun(&mut g, 3);
        let h = random_ratfun(&mut g, 3);
        let p = PointP1::Finite(small_rational(&mut g));
        let (Ok(jf), Ok(jhf)) = (jet_of_map(&f, &p, 5), jet_of_map(&h.compose(&f), &p, 5)) else { continue };
        let Ok(jh) = jet_of_map(&h, &PointP1::Finite(jf.target().clone()), 5) else { continue };
        assert_eq!(jf.then(&jh).unwrap(), jhf);
        checked += 1;
    }
    assert!(jet_of_map(&px(&[0, 0, 1]), &PointP1::Finite(Scalar::zero()), 3).is_err());
    assert!(jet_of_map(&px(&[0, 0, 1]), &PointP1::Infinity, 3).is_err());
}

#[test]
fn jet_errors() {
    let a = jet_identity(Scalar::zero(), 3);
    let b = jet_identity(Scalar::one(), 3);
    assert!(a.then(&b).is_err());
    assert!(a.then(&jet_identity(Scalar::zero(), 4)).is_err());
    assert!(Jet::new(Scalar::zero(), Scalar::zero(), vec![Scalar::zero()]).is_err());
    assert!(Jet::new(Scalar::zero(), Scalar::zero(), vec![]).is_err());
}
