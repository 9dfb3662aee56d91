//! Roots of a polynomial over the base field: exact where they lie in the field, numeric
//! otherwise.
//!
//! Every squarefree factor is solved by Aberth iteration, first in `f64` and then at the
//! requested precision. A numeric root `z` is promoted to an exact one by rounding a
//! scaled copy to the ring of integers (with `L` the integral leading coefficient, `2 L α`
//! lies in `Z[alpha]`) and checking the candidate by exact evaluation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{BigFloatC, Field, Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct Roots {
    /// Exact roots with multiplicity, in canonical order.
    pub exact: Vec<(Scalar, u32)>,
    /// Remaining roots, with multiplicity.
    pub numeric: Vec<(BigFloatC, u32)>,
}

impl Roots {
    pub fn count(&self) -> u32 {
        self.exact.iter().map(|r| r.1).sum::<u32>() + self.numeric.iter().map(|r| r.1).sum::<u32>()
    }
}

/// All roots of `f` in the algebraic closure, with `field` deciding which count as exact.
pub fn roots(f: &Poly, field: Field, prec: usize) -> Result<Roots> {
    let mut out = Roots::default();
    for (g, m) in f.squarefree_decomposition() {
        let exact = exact_roots(&g, field, prec)?;
        let mut rest = g.clone();
        for a in &exact {
            rest = rest.exact_div(&Poly::linear_root(a));
        }
        out.exact.extend(exact.into_iter().map(|a| (a, m)));
        if !rest.is_constant() {
            out.numeric.extend(numeric_roots(&rest, prec)?.into_iter().map(|z| (z, m)));
        }
    }
    out.exact.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Simple roots of a squarefree `g`, numerically at `prec` bits.
pub fn numeric_roots(g: &Poly, prec: usize) -> Result<Vec<BigFloatC>> {
    let n = g.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let wp = prec + 32;
    let lc = BigFloatC::from_scalar(&g.lc(), wp);
    let coeffs: Vec<BigFloatC> = g.coeffs().iter().map(|c| &BigFloatC::from_scalar(c, wp) / &lc).collect();
    let approx: Vec<Complex64> = coeffs
        .iter()
        .map(|c| {
            let (re, im) = c.to_f64_pair();
            Complex64::new(re, im)
        })
        .collect();
    let start = if approx.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        aberth_f64(&approx)
    } else {
        initial_circle(n, 1.0)
    };
    let mut zs: Vec<BigFloatC> = start.iter().map(|z| BigFloatC::from_f64(z.re, z.im, wp)).collect();
    for _ in 0..200 {
        if aberth_step_big(&coeffs, &mut zs, prec) {
            return Ok(zs.into_iter().map(|z| round_to(&z, prec)).collect());
        }
    }
    Err(Error::Precision { precision: prec as u32, required: (2 * prec) as u32 })
}

fn round_to(z: &BigFloatC, prec: usize) -> BigFloatC {
    let mut re = z.re().clone();
    let mut im = z.im().clone();
    re.set_precision(prec, astro_float::RoundingMode::ToEven).expect("valid precision");
    im.set_precision(prec, astro_float::RoundingMode::ToEven).expect("valid precision");
    BigFloatC::new(re, im, prec)
}

fn initial_circle(n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

fn horner_f64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth iteration on a monic polynomial (lowest coefficient first).
fn aberth_f64(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    // Fujiwara bound on the root moduli
    let radius = (0..n).map(|k| c[k].norm().powf(1.0 / (n - k) as f64)).fold(0.0, f64::max) * 2.0;
    let mut zs = initial_circle(n, radius.max(1e-3));
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_f64(c, zs[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (zs[k] - zs[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                zs[k] -= w;
                worst = worst.max(w.norm() / (1.0 + zs[k].norm()));
            }
        }
        if worst < 1e-14 {
            break;
        }
    }
    zs
}

/// One Aberth sweep at high precision; true when every correction is below `2^-prec`
/// relative to the root.
fn aberth_step_big(c: &[BigFloatC], zs: &mut [BigFloatC], prec: usize) -> bool {
    let n = zs.len();
    let wp = c[0].precision();
    let one = BigFloatC::one(wp);
    let mut done = true;
    for k in 0..n {
        let mut p = BigFloatC::zero(wp);
        let mut dp = BigFloatC::zero(wp);
        for a in c.iter().rev() {
            dp = &(&dp * &zs[k]) + &p;
            p = &(&p * &zs[k]) + a;
        }
        if p.is_zero() {
            continue;
        }
        let ratio = &p / &dp;
        let mut s = BigFloatC::zero(wp);
        for j in (0..n).filter(|&j| j != k) {
            s = &s + &(&one / &(&zs[k] - &zs[j]));
        }
        let w = &ratio / &(&one - &(&ratio * &s));
        zs[k] = &zs[k] - &w;
        let scale = zs[k].log2_magnitude().max(0.0);
        if w.log2_magnitude() > scale - prec as f64 {
            done = false;
        }
    }
    done
}

fn round_int(x: f64) -> Option<BigInt> {
    (x.is_finite() && x.abs() < 2f64.powi(52)).then(|| BigInt::from(x.round() as i64))
}

fn make(u: &BigInt, v: &BigInt, den: &BigInt, field: Field) -> Scalar {
    let re = BigRational::new(u.clone(), den.clone());
    let im = BigRational::new(v.clone(), den.clone());
    Scalar::with_field(re, im, field)
}

/// Roots of the squarefree `g` lying in `field`.
fn exact_roots(g: &Poly, field: Field, prec: usize) -> Result<Vec<Scalar>> {
    if g.deg() == 1 {
        return Ok(vec![-&(&g.coeff(0) / &g.coeff(1))]);
    }
    // h has rational coefficients and contains the roots of g together with their conjugates
    let h = if g.coeffs().iter().all(Scalar::is_rational) { g.clone() } else { (g * &g.conj()).squarefree_part() };
    let hi = h.clear_denominators();
    let l = hi.lc().re().numer().clone();
    let l2 = &l * BigInt::from(2);
    let zs: Vec<(f64, f64)> = numeric_roots(&h, prec.min(128))?.iter().map(BigFloatC::to_f64_pair).collect();
    let lf = BigFloatC::from_scalar(&Scalar::from_bigint(l.clone()), 64).to_f64_pair().0;
    let mut cands: Vec<Scalar> = Vec::new();
    let zero = BigInt::zero();
    for &(re, im) in &zs {
        if let Some(u) = round_int(lf * re) {
            cands.push(make(&u, &zero, &l, field));
        }
        match field {
            Field::Rational => {}
            Field::Gauss => {
                if let (Some(u), Some(v)) = (round_int(lf * re), round_int(lf * im)) {
                    cands.push(make(&u, &v, &l, field));
                }
            }
            Field::Quadratic(d) if d < 0 => {
                let r = ((-d) as f64).sqrt();
                if let (Some(u), Some(v)) = (round_int(2.0 * lf * re), round_int(2.0 * lf * im / r)) {
                    cands.push(make(&u, &v, &l2, field));
                }
            }
            Field::Quadratic(_) => {}
        }
    }
    if let Field::Quadratic(d) = field {
        if d > 0 {
            let r = (d as f64).sqrt();
            let real: Vec<f64> = zs.iter().filter(|z| z.1.abs() <= 1e-9 * (1.0 + z.0.abs())).map(|z| z.0).collect();
            for (i, a) in real.iter().enumerate() {
                for (j, b) in real.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if let (Some(u), Some(v)) = (round_int(lf * (a + b)), round_int(lf * (a - b) / r)) {
                        cands.push(make(&u, &v, &l2, field));
                    }
                }
            }
        }
    }
    let mut found: Vec<Scalar> = Vec::new();
    for c in cands {
        if !found.contains(&c) && g.eval(&c).is_zero() {
            found.push(c);
        }
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_and_irrational_roots() {
        // (x - 2)(x + 1/3)^2 (x^2 + 1)
        let f = &(&Poly::from_ints(&[-2, 1]) * &Poly::new(vec![Scalar::ratio(1, 3), Scalar::one()]).pow(2))
            * &Poly::from_ints(&[1, 0, 1]);
        let r = roots(&f, Field::Rational, 128).unwrap();
        assert_eq!(r.exact, vec![(Scalar::ratio(-1, 3), 2), (Scalar::from_int(2), 1)]);
        assert_eq!(r.numeric.len(), 2);
        assert_eq!(r.count(), 5);
        let g = roots(&f, Field::Gauss, 128).unwrap();
        assert_eq!(g.exact.len(), 4);
        assert!(g.numeric.is_empty());
    }

    #[test]
    fn quadratic_field_roots() {
        // x^2 - 2x - 2 has roots 1 ± sqrt 3
        let f = Poly::from_ints(&[-2, -2, 1]);
        let r = roots(&f, Field::Quadratic(3), 128).unwrap();
        assert_eq!(r.exact.len(), 2);
        let s3 = Scalar::generator(Field::Quadratic(3));
        assert!(r.exact.iter().any(|(a, _)| *a == &Scalar::one() + &s3));
        // x^2 + x + 1 has roots (-1 ± sqrt(-3))/2
        let r = roots(&Poly::from_ints(&[1, 1, 1]), Field::Quadratic(-3), 128).unwrap();
        assert_eq!(r.exact.len(), 2);
    }

    #[test]
    fn numeric_precision() {
        let f = Poly::from_ints(&[1, -1, 1]);
        let r = roots(&f, Field::Rational, 192).unwrap();
        for (z, _) in &r.numeric {
            let v = f.coeffs().iter().rev().fold(BigFloatC::zero(192), |acc, c| &(&acc * z) + &BigFloatC::from_scalar(c, 192));
            assert!(v.log2_magnitude() < -180.0);
        }
    }
}
