//! Canonical text for rational functions, re-parseable by `parse_ratfun`.
//!
//! Polynomials print expanded with spaced operators (`2*x^2 - 1`). Proper fractions over
//! the rationals print with integral primitive numerator and denominator, repeated
//! factors collected and the sign in front (`-x/(x^2-4)`, `(x^2+1)^2/(4*x^3-4*x)`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Poly, RatFun, Scalar};

/// Whether `c` prints as a sum (`1+i`) and needs parentheses as a factor.
fn coeff_is_compound(c: &Scalar) -> bool {
    !c.is_rational() && !c.re().is_zero()
}

fn monomial_text(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    }
}

/// Terms from the highest degree down, each as (negative, magnitude text).
fn terms(p: &Poly) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for k in (0..=p.deg()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c.rational_signum() {
            Some(s) if s < 0 => (true, -&c),
            Some(_) => (false, c.clone()),
            // coefficients outside Q with a leading minus are written with it
            None => {
                let text = c.to_string();
                if !coeff_is_compound(&c) && text.starts_with('-') {
                    (true, -&c)
                } else {
                    (false, c)
                }
            }
        };
        let mono = monomial_text(k);
        let text = if mono.is_empty() {
            if coeff_is_compound(&mag) {
                format!("({mag})")
            } else {
                mag.to_string()
            }
        } else if mag.is_one() {
            mono
        } else if coeff_is_compound(&mag) {
            format!("({mag})*{mono}")
        } else {
            format!("{mag}*{mono}")
        };
        out.push((neg, text));
    }
    out
}

fn join_terms(ts: &[(bool, String)], spaced: bool) -> String {
    if ts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, t)) in ts.iter().enumerate() {
        match (i, neg, spaced) {
            (0, true, _) => s.push('-'),
            (0, false, _) => {}
            (_, true, true) => s.push_str(" - "),
            (_, false, true) => s.push_str(" + "),
            (_, true, false) => s.push('-'),
            (_, false, false) => s.push('+'),
        }
        s.push_str(t);
    }
    s
}

/// `p` expanded, with spaces around `+` and `-`.
pub fn format_poly(p: &Poly) -> String {
    join_terms(&terms(p), true)
}

fn compact(p: &Poly) -> String {
    join_terms(&terms(p), false)
}

fn is_single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

/// Integral primitive factors with positive leading coefficients and the rational
/// constant `c` with `p = c * prod f^e`.
fn primitive_factors(p: &Poly) -> (BigRational, Vec<(Poly, u32)>) {
    let mut factors = Vec::new();
    let mut lead = BigRational::one();
    for (f, e) in p.squarefree_decomposition() {
        if f.is_constant() {
            continue;
        }
        let g = f.clear_denominators();
        let content = Scalar::from_bigint(g.integer_content());
        let g = g.scale(&content.inv());
        let g = if g.lc().re().is_negative() { -&g } else { g };
        lead *= g.lc().re().pow(e as i32);
        factors.push((g, e));
    }
    (p.lc().re() / lead, factors)
}

#[derive(PartialEq)]
enum Shape {
    Atom,
    Product,
    Sum,
}

fn shape_of_poly(p: &Poly) -> Shape {
    if !is_single_term(p) {
        Shape::Sum
    } else if compact(p).contains('*') {
        Shape::Product
    } else {
        Shape::Atom
    }
}

/// `k * prod f^e` with `k` a positive integer; folded into an expanded polynomial when
/// there is a single simple factor.
fn product_text(k: &BigInt, factors: &[(Poly, u32)]) -> (String, Shape) {
    if factors.is_empty() {
        return (k.to_string(), Shape::Atom);
    }
    if factors.len() == 1 && factors[0].1 == 1 {
        let p = factors[0].0.scale(&Scalar::from_bigint(k.clone()));
        return (compact(&p), shape_of_poly(&p));
    }
    let mut parts: Vec<String> = Vec::new();
    if !k.is_one() {
        parts.push(k.to_string());
    }
    for (f, e) in factors {
        let body = compact(f);
        let base = if is_single_term(f) { body } else { format!("({body})") };
        parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
    }
    let shape = if parts.len() == 1 { Shape::Atom } else { Shape::Product };
    (parts.join("*"), shape)
}

/// Canonical text of `r`.
pub fn format_ratfun(r: &RatFun) -> String {
    if r.den().is_constant() {
        return format_poly(&r.num().scale(&r.den().coeff(0).inv()));
    }
    let rational = r.num().coeffs().iter().chain(r.den().coeffs()).all(Scalar::is_rational);
    if !rational {
        let n = compact(r.num());
        let n = if is_single_term(r.num()) { n } else { format!("({n})") };
        return format!("{n}/({})", compact(r.den()));
    }
    let (cn, fnum) = primitive_factors(r.num());
    let (cd, fden) = primitive_factors(r.den());
    let c = cn / cd;
    let sign = if c.is_negative() { "-" } else { "" };
    let c = c.abs();
    let (num, num_shape) = product_text(c.numer(), &fnum);
    let (den, den_shape) = product_text(c.denom(), &fden);
    let num = if num_shape == Shape::Sum { format!("({num})") } else { num };
    let den = if den_shape == Shape::Atom { den } else { format!("({den})") };
    format!("{sign}{num}/{den}")
}
