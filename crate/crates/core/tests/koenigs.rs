mod common;

use common::*;
use denv::algebra::{BigFloatC, Divisor, Field, Poly, RatFun, Scalar};
use denv::dynamics::{fixed_points, repelling_point_avoiding};
use denv::equations::{eq_residual, GroupoidEq};
use denv::koenigs::{
    deck_transform_series, exp_series, koenigs_at, koenigs_series, linearization_residual, nonlinearity,
    polynomial_series, pullback_mu_series, pullback_nu_series, residual_pullback, scaling_defect, two_cos_series,
    weierstrass_series, Koenigs,
};
use denv::Error;
use rand::Rng;

fn factorial(k: i64) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, i| &acc * &Scalar::from_int(i))
}

#[test]
fn exponential_and_hyperbolic_cosine() {
    let sq = px(&[0, 0, 1]);
    let k = koenigs_at(&sq, &Scalar::one(), 32).unwrap();
    for (i, a) in k.coefficients().iter().enumerate() {
        assert_eq!(*a, factorial(i as i64 + 1).inv());
    }
    assert_eq!(linearization_residual(&sq, &k).unwrap(), 0.0);

    // 2 cosh(sqrt w) = sum 2 w^k / (2k)!
    let cheb = px(&[-2, 0, 1]);
    let k = koenigs_at(&cheb, &Scalar::from_int(2), 16).unwrap();
    for (i, a) in k.coefficients().iter().enumerate() {
        let kk = i as i64 + 1;
        assert_eq!(*a, &Scalar::from_int(2) / &factorial(2 * kk));
    }
    assert_eq!(k.coefficients()[1], q(1, 12));
    assert_eq!(k.coefficients()[2], q(1, 360));

    // cosh(sqrt(2w)) for the classical 2x^2 - 1 at 1
    let t2 = px(&[-1, 0, 2]);
    let k = koenigs_at(&t2, &Scalar::one(), 12).unwrap();
    for (i, a) in k.coefficients().iter().enumerate() {
        let kk = i as i64 + 1;
        assert_eq!(*a, &Scalar::from_int(2).pow(kk) / &factorial(2 * kk));
    }
}

#[test]
fn conjugation_rescales_coefficients() {
    // for r~ = φ^-1 r φ with φ = αx + β, Ψ~(w) = φ^-1(Ψ(αw)), so a~_k = a_k α^(k-1)
    let mut g = rng(12);
    let base = koenigs_at(&px(&[0, 0, 1]), &Scalar::one(), 16).unwrap();
    for _ in 0..10 {
        let mut alpha = small_rational(&mut g);
        while alpha.is_zero() {
            alpha = small_rational(&mut g);
        }
        let beta = small_rational(&mut g);
        let phi = RatFun::from_poly(Poly::new(vec![beta.clone(), alpha.clone()]));
        let conj = px(&[0, 0, 1]).mobius_conjugate(&phi).unwrap();
        let p = &(&Scalar::one() - &beta) / &alpha;
        let k = koenigs_at(&conj, &p, 16).unwrap();
        for (i, (a, b)) in k.coefficients().iter().zip(base.coefficients()).enumerate() {
            assert_eq!(*a, b * &alpha.pow(i as i64));
        }
    }
}

#[test]
fn linearizers_of_random_maps_are_exact() {
    let mut g = rng(13);
    let mut checked = 0;
    while checked < 10 {
        let r = random_ratfun(&mut g, 3);
        if r.degree() < 2 {
            continue;
        }
        let Ok(fps) = fixed_points(&r, 1, Field::Rational, 128) else { continue };
        for fp in fps.iter().filter(|f| f.repelling) {
            match koenigs_series(&r, fp, 10, 128) {
                Ok(Koenigs::Exact(k)) => {
                    assert_eq!(linearization_residual(&r, &k).unwrap(), 0.0);
                    checked += 1;
                }
                Ok(Koenigs::Numeric(k)) => {
                    // relative to the size of Ψ(λw), whose coefficients grow like λ^k
                    let scale = k.psi.scale_argument(&k.multiplier).max_magnitude_from(0);
                    assert!(linearization_residual(&r, &k).unwrap() < 1e-25 * scale);
                }
                Err(e) => assert!(matches!(e, Error::Parameter(_) | Error::ResonantMultiplier(_)), "{e}"),
            }
        }
    }
}

#[test]
fn numeric_linearizer_of_a_non_pcf_quadratic() {
    let r = px(&[1, 0, 1]);
    let fp = repelling_point_avoiding(&r, &Divisor::empty(), Field::Rational, 1, 256).unwrap();
    let Koenigs::Numeric(k) = koenigs_series(&r, &fp, 32, 256).unwrap() else { panic!("x^2 + 1 has no rational fixed point") };
    assert!(linearization_residual(&r, &k).unwrap() < 2f64.powi(-64));
    assert!(k.multiplier.magnitude() > 1.0);
}

#[test]
fn pullback_of_the_solution_vanishes() {
    let sq = px(&[0, 0, 1]);
    let k = koenigs_at(&sq, &Scalar::one(), 32).unwrap();
    let mu_bar = pullback_mu_series(&rf(&[-1], &[0, 1]), &k).unwrap();
    assert_eq!(mu_bar.order(), 30);
    assert!(mu_bar.is_zero());
    // μ = 0 pulls back to Ψ''/Ψ' = 1, which does not scale
    let zero_bar = pullback_mu_series(&RatFun::zero(), &k).unwrap();
    assert!(!scaling_defect(&zero_bar, &k.multiplier, 1).is_zero());
    let nu_bar = pullback_nu_series(&rf(&[1], &[0, 0, 1]), &k).unwrap();
    assert!(nu_bar.is_zero());
    assert!(scaling_defect(&nu_bar, &k.multiplier, 2).is_zero());
    assert!(pullback_mu_series(&rf(&[1], &[-1, 1]), &k).is_err());
}

#[test]
fn scaling_defect_equals_pulled_back_residual() {
    let mut g = rng(14);
    let sq = px(&[0, 0, 1]);
    let k = koenigs_at(&sq, &Scalar::one(), 16).unwrap();
    let mut checked = 0;
    while checked < 20 {
        let c = random_ratfun(&mut g, 2);
        let (Ok(mu_bar), Ok(nu_bar)) = (pullback_mu_series(&c, &k), pullback_nu_series(&c, &k)) else { continue };
        let res2 = eq_residual(&GroupoidEq::G2(c.clone()), &sq);
        let res3 = eq_residual(&GroupoidEq::G3(c.clone()), &sq);
        let (Ok(r2), Ok(r3)) = (residual_pullback(&res2, &k, 1), residual_pullback(&res3, &k, 2)) else { continue };
        assert_eq!(scaling_defect(&mu_bar, &k.multiplier, 1), r2);
        assert_eq!(scaling_defect(&nu_bar, &k.multiplier, 2), r3);
        checked += 1;
    }
}

#[test]
fn koenigs_errors() {
    let sq = px(&[0, 0, 1]);
    assert!(matches!(koenigs_at(&sq, &Scalar::zero(), 8), Err(Error::CriticalPoint)));
    assert!(matches!(koenigs_at(&sq, &Scalar::from_int(2), 8), Err(Error::Parameter(_))));
    // λ = 1 is resonant at every order
    assert!(matches!(koenigs_at(&px(&[0, 1, 1]), &Scalar::zero(), 8), Err(Error::ResonantMultiplier(2))));
    // λ = -1 resonates at order 3
    assert!(matches!(koenigs_at(&px(&[0, -1, 1]), &Scalar::zero(), 8), Err(Error::ResonantMultiplier(3))));
    let attracting = BigFloatC::from_f64(0.0, 0.0, 128);
    let half_x = RatFun::from_poly(Poly::new(vec![Scalar::zero(), q(1, 2), Scalar::one()]));
    assert!(matches!(koenigs_at(&half_x, &attracting, 8), Err(Error::NotRepelling)));
    assert!(matches!(koenigs_at(&rf(&[1], &[0, 1]), &Scalar::zero(), 8), Err(Error::PoleAtBasePoint)));
}

#[test]
fn deck_transformations() {
    let mut g = rng(15);
    for _ in 0..5 {
        let w0 = BigFloatC::from_f64(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0), 160);
        let w1 = &w0 + &BigFloatC::two_pi_i(160);
        let gamma = deck_transform_series(&exp_series(&w0, 16), &exp_series(&w1, 16)).unwrap();
        assert!(nonlinearity(&gamma) < 2f64.powi(-100));
        assert!((gamma.coeff(1).magnitude() - 1.0).abs() < 1e-30);
    }
    let (c, s) = (q(3, 5), q(4, 5));
    let gamma = deck_transform_series(&two_cos_series(&c, &s, 16), &two_cos_series(&c, &(-&s), 16)).unwrap();
    assert_eq!(nonlinearity(&gamma), 0.0);
    assert_eq!(*gamma.coeff(1), Scalar::from_int(-1));
    let (g2, x, y) = (Scalar::from_int(4), Scalar::from_int(1), Scalar::zero());
    // y = 0 is a critical point of ℘
    assert!(deck_transform_series(&weierstrass_series(&g2, &x, &y, 12), &weierstrass_series(&g2, &x, &y, 12)).is_err());
    let (x, y) = (Scalar::from_int(2), Scalar::from_int(4));
    // the ODE only involves g2; g3 is fixed by the starting point
    let gamma = deck_transform_series(&weierstrass_series(&g2, &x, &y, 12), &weierstrass_series(&g2, &x, &(-&y), 12)).unwrap();
    assert_eq!(nonlinearity(&gamma), 0.0);
    assert_eq!(*gamma.coeff(1), Scalar::from_int(-1));
    let p = Poly::from_ints(&[0, -1, 0, 1]);
    let gamma = deck_transform_series(&polynomial_series(&p, &Scalar::zero(), 12), &polynomial_series(&p, &Scalar::one(), 12)).unwrap();
    assert!(nonlinearity(&gamma) > 0.1);
}
