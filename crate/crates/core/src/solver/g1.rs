//! Order-one equations `η(y) y1^n = η(x)`.
//!
//! Taking logarithmic derivatives turns the equation into `κ(R) R' + n R''/R' = κ` for
//! `κ = η'/η`, which is linear in `κ`. A rational `η` exists exactly when `κ` has simple
//! poles with integer residues and vanishes at infinity; the residues are read off the
//! Rothstein–Trager resultant `Res_x(D, N - t D')`. The equation then holds up to a
//! constant `c` with `η(R) R'^n = c η`.

use crate::algebra::{linalg::interpolate, resultant, Divisor, Field, Poly, RatFun, Scalar};
use num_complex::Complex64;

use crate::dynamics::roots::{numeric_roots, roots};
use crate::equations::affine_coeff;

use super::{candidate_pole_divisor, solve_linear, Candidates, SolutionSpace, SolveCaps, SolveOutcome};

/// Bound on the integer coefficients tried along the homogeneous directions.
const KERNEL_SEARCH_BOUND: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Candidate {
    pub n: i32,
    pub eta: RatFun,
    /// `η(R) R'^n / η`; the equation holds strictly when this is 1.
    pub constant: Scalar,
}

impl G1Candidate {
    pub fn is_strict(&self) -> bool {
        self.constant.is_one()
    }
}

/// `η` with logarithmic derivative `κ`, when `κ` has integer residues only.
fn integrate_log_derivative(kappa: &RatFun) -> Option<RatFun> {
    if kappa.is_zero() {
        return Some(RatFun::one());
    }
    let d = kappa.den();
    if kappa.num().deg() >= d.deg() || d.squarefree_part().deg() != d.deg() {
        return None;
    }
    let n = kappa.num();
    let dd = d.derivative();
    // residues are the roots of Res_x(D, N - t D'), a polynomial of degree deg D in t
    let ts: Vec<Scalar> = (0..=d.deg() as i64).map(Scalar::from_int).collect();
    // a vanishing second argument shares every root with D
    let vals: Vec<Scalar> = ts.iter().map(|t| resultant(d, &(n - &dd.scale(t))).unwrap_or_else(|_| Scalar::zero())).collect();
    let rt = interpolate(&ts, &vals);
    let rs = roots(&rt, Field::Rational, 128).ok()?;
    if !rs.numeric.is_empty() {
        return None;
    }
    let mut eta = RatFun::one();
    for (r, _) in &rs.exact {
        if !r.is_rational() || !r.re().is_integer() {
            return None;
        }
        let g = d.gcd(&(n - &dd.scale(r)));
        let k = r.re().to_integer();
        let k: i64 = i64::try_from(k).ok()?;
        eta = &eta * &RatFun::from_poly(g).pow(k);
    }
    Some(eta)
}

fn candidate_for(r: &RatFun, n: i32, kappa: &RatFun) -> Option<G1Candidate> {
    let eta = integrate_log_derivative(kappa)?;
    let ratio = &(&eta.compose(r) * &r.derive().pow(n as i64)) / &eta;
    let constant = ratio.constant_value()?;
    Some(G1Candidate { n, eta, constant })
}

/// Searches `η` for a fixed `n` over the pole candidates of `r`. Returns a strict solution
/// when one is found, otherwise the particular candidate with its obstruction constant.
pub fn solve_g1(r: &RatFun, n: i32, caps: &SolveCaps) -> Option<G1Candidate> {
    assert!(n != 0, "n must be nonzero");
    let cand = match candidate_pole_divisor(r, caps) {
        Candidates::Divisor(d) => d,
        Candidates::Overflow { .. } => return None,
    };
    let finite = Divisor::from_poly(&cand.finite_support_poly());
    // κ vanishes at infinity: numerator degree below the denominator degree
    let e = finite.degree() as usize;
    let rhs = affine_coeff(r).scale(&Scalar::from_int(n as i64));
    let space = if e == 0 {
        if rhs.is_zero() {
            SolutionSpace { particular: Some(RatFun::zero()), kernel: Vec::new() }
        } else {
            return None;
        }
    } else {
        match solve_linear(r, &rhs, 1, &finite.finite_support_poly(), e - 1, caps) {
            SolveOutcome::Solved(s) => s,
            SolveOutcome::NoSolution { .. } => return None,
        }
    };
    let p = space.particular.clone()?;
    let first = candidate_for(r, n, &p);
    if first.as_ref().is_some_and(G1Candidate::is_strict) || space.kernel.is_empty() {
        return first;
    }
    let trial: Vec<Vec<Scalar>> = if space.kernel.len() == 1 {
        residue_targets(&p, &space.kernel[0]).into_iter().map(|t| vec![t]).collect()
    } else {
        integer_points(space.kernel.len(), KERNEL_SEARCH_BOUND)
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::from_int).collect())
            .collect()
    };
    for coeffs in trial {
        let kappa = space.kernel.iter().zip(&coeffs).fold(p.clone(), |acc, (k, t)| &acc + &k.scale(t));
        if let Some(c) = candidate_for(r, n, &kappa) {
            if c.is_strict() {
                return Some(c);
            }
        }
    }
    first
}

/// Rational `t` for which `p + t k` has an integer residue `m` at some pole, for small
/// `|m|`. Residues are located numerically; callers confirm every candidate exactly.
fn residue_targets(p: &RatFun, k: &RatFun) -> Vec<Scalar> {
    let d = p.den().lcm(k.den());
    let (np, nk) = (p.num() * &d.exact_div(p.den()), k.num() * &d.exact_div(k.den()));
    let Ok(alphas) = numeric_roots(&d.squarefree_part(), 64) else {
        return Vec::new();
    };
    let dd = d.derivative();
    let eval = |f: &Poly, z: Complex64| {
        f.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            let (re, im) = c.to_f64_pair();
            acc * z + Complex64::new(re, im)
        })
    };
    let mut out: Vec<Scalar> = Vec::new();
    for a in alphas {
        let (re, im) = a.to_f64_pair();
        let z = Complex64::new(re, im);
        let w = eval(&dd, z);
        let (rp, rk) = (eval(&np, z) / w, eval(&nk, z) / w);
        if rk.norm() < 1e-9 {
            continue;
        }
        for m in (0..=KERNEL_SEARCH_BOUND).flat_map(|m| [m, -m]) {
            let t = (Complex64::new(m as f64, 0.0) - rp) / rk;
            if t.im.abs() > 1e-6 * (1.0 + t.re.abs()) {
                continue;
            }
            if let Some(q) = rationalize(t.re) {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// A rational with small denominator within `1e-9` of `x`, by continued fractions.
fn rationalize(x: f64) -> Option<Scalar> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        (h0, h1) = (h1, a.checked_mul(h1)?.checked_add(h0)?);
        (k0, k1) = (k1, a.checked_mul(k1)?.checked_add(k0)?);
        if (h1 as f64 / k1 as f64 - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return (k1 <= 1_000_000).then(|| Scalar::ratio(h1, k1));
        }
        let frac = y - a as f64;
        if frac.abs() < 1e-15 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

/// Integer vectors of length `k` with entries in `[-bound, bound]`, ordered by max norm.
fn integer_points(k: usize, bound: i64) -> Vec<Vec<i64>> {
    if k > 2 {
        return Vec::new();
    }
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |t| [v.clone(), vec![t]].concat())).collect();
    }
    out.sort_by_key(|v| v.iter().map(|t| t.abs()).max().unwrap_or(0));
    out
}
