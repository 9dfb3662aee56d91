//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::ops::RangeInclusive;

use denv::algebra::{Poly, RatFun, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn rf(n: &[i64], d: &[i64]) -> RatFun {
    RatFun::new(Poly::from_ints(n), Poly::from_ints(d))
}

pub fn px(c: &[i64]) -> RatFun {
    RatFun::from_poly(Poly::from_ints(c))
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// A random rational with small numerator and denominator.
pub fn small_rational(g: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(g.gen_range(-9..=9), g.gen_range(1..=4))
}

pub fn random_poly(g: &mut ChaCha8Rng, degrees: RangeInclusive<usize>) -> Poly {
    let deg = g.gen_range(degrees);
    let mut c: Vec<Scalar> = (0..deg).map(|_| small_rational(g)).collect();
    let mut lead = small_rational(g);
    while lead.is_zero() {
        lead = small_rational(g);
    }
    c.push(lead);
    Poly::new(c)
}

/// A nonconstant rational function of degree at most `max_deg`.
pub fn random_ratfun(g: &mut ChaCha8Rng, max_deg: usize) -> RatFun {
    loop {
        let n = random_poly(g, 0..=max_deg);
        let d = random_poly(g, 0..=max_deg);
        let r = RatFun::new(n, d);
        if r.degree() >= 1 {
            return r;
        }
    }
}

/// A random Möbius map over the rationals with small integer entries.
pub fn random_mobius(g: &mut ChaCha8Rng) -> RatFun {
    loop {
        let e: Vec<i64> = (0..4).map(|_| g.gen_range(-5..=5)).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            let s = |v: i64| Scalar::from_int(v);
            return RatFun::mobius(s(e[0]), s(e[1]), s(e[2]), s(e[3])).expect("nonzero determinant");
        }
    }
}
