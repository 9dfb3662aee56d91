//! Generators for the exceptional families (power maps, Chebyshev polynomials, Lattès
//! maps) and the table of coefficient functions `μ` they are known to preserve.
//!
//! Elliptic curves use the standard Weierstrass normalization
//! `(℘')^2 = 4℘^3 - g2 ℘ - g3`.

use std::fmt;

use crate::algebra::{Poly, RatFun, Scalar};
use crate::equations::{eq_residual, GroupoidEq};
use crate::error::{Error, Result};

/// Multiplication-by-k maps are built for `k` up to this bound.
pub const LATTES_K_CAP: u32 = 6;

pub fn monomial(k: i64) -> Result<RatFun> {
    if k.abs() < 2 {
        return Err(Error::Parameter(format!("monomial degree must satisfy |k| >= 2, got {k}")));
    }
    Ok(RatFun::x().pow(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `T_k(cos w) = cos(k w)`.
    Classical,
    /// `P_k(x) = 2 T_k(x/2)`, so that `P_k(2 cos w) = 2 cos(k w)`.
    Dilated,
}

impl Normalization {
    pub fn parse(s: &str) -> Result<Normalization> {
        match s {
            "classical" => Ok(Normalization::Classical),
            "dilated" => Ok(Normalization::Dilated),
            _ => Err(Error::Parameter(format!("unknown normalization {s:?}"))),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Classical => "classical",
            Normalization::Dilated => "dilated",
        })
    }
}

pub fn chebyshev(k: u32, normalization: Normalization) -> Result<RatFun> {
    if k < 2 {
        return Err(Error::Parameter(format!("chebyshev degree must be at least 2, got {k}")));
    }
    let (t0, lead) = match normalization {
        Normalization::Classical => (Poly::one(), Scalar::from_int(2)),
        Normalization::Dilated => (Poly::from_ints(&[2]), Scalar::one()),
    };
    let step = Poly::x().scale(&lead);
    let (mut prev, mut cur) = (t0, Poly::x());
    for _ in 1..k {
        let next = &(&step * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(RatFun::from_poly(cur))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LattesParams {
    pub g2: Scalar,
    pub g3: Scalar,
    pub k: u32,
}

impl LattesParams {
    pub fn new(g2: Scalar, g3: Scalar, k: u32) -> Result<LattesParams> {
        let p = LattesParams { g2, g3, k };
        p.validate()?;
        Ok(p)
    }

    pub fn discriminant(&self) -> Scalar {
        &self.g2.pow(3) - &(&Scalar::from_int(27) * &self.g3.pow(2))
    }

    fn validate(&self) -> Result<()> {
        if self.discriminant().is_zero() {
            return Err(Error::SingularCubic);
        }
        if self.k < 2 || self.k > LATTES_K_CAP {
            return Err(Error::Parameter(format!("lattes multiplier must lie in 2..={LATTES_K_CAP}, got {}", self.k)));
        }
        Ok(())
    }

    /// `4x^3 - g2 x - g3`.
    pub fn cubic(&self) -> Poly {
        Poly::new(vec![-&self.g3, -&self.g2, Scalar::zero(), Scalar::from_int(4)])
    }
}

/// `p * y^odd` on the curve, with `y^2` replaced by the cubic.
#[derive(Clone)]
struct CurveFn {
    p: Poly,
    odd: bool,
}

impl CurveFn {
    fn mul(&self, other: &CurveFn, f: &Poly) -> CurveFn {
        let p = &self.p * &other.p;
        let p = if self.odd && other.odd { &p * f } else { p };
        CurveFn { p, odd: self.odd ^ other.odd }
    }

    fn sub(&self, other: &CurveFn) -> CurveFn {
        assert!(self.odd == other.odd || self.p.is_zero() || other.p.is_zero());
        CurveFn { p: &self.p - &other.p, odd: self.odd || other.odd }
    }
}

/// Division polynomials `ψ_0 ..= ψ_{n}` of `Y^2 = x^3 + a x + b` with `y = 2Y`.
fn division_polynomials(a: &Scalar, b: &Scalar, n: usize) -> (Vec<CurveFn>, Poly) {
    let f = Poly::new(vec![b.clone(), a.clone(), Scalar::zero(), Scalar::one()]);
    let c = |v: i64| Scalar::from_int(v);
    let even = |p: Poly| CurveFn { p, odd: true };
    let odd = |p: Poly| CurveFn { p, odd: false };
    let a2 = a.pow(2);
    let psi3 = Poly::new(vec![-&a2, &c(12) * b, &c(6) * a, Scalar::zero(), c(3)]);
    let psi4 = Poly::new(vec![
        &(&c(-8) * &b.pow(2)) - &a.pow(3),
        &(&c(-4) * a) * b,
        &c(-5) * &a2,
        &c(20) * b,
        &c(5) * a,
        Scalar::zero(),
        Scalar::one(),
    ])
    .scale(&c(4));
    let mut psi = vec![odd(Poly::zero()), odd(Poly::one()), even(Poly::from_ints(&[2])), odd(psi3), even(psi4)];
    let cube = |x: &CurveFn| x.mul(x, &f).mul(x, &f);
    let square = |x: &CurveFn| x.mul(x, &f);
    while psi.len() <= n {
        let j = psi.len();
        let m = j / 2;
        let next = if j % 2 == 1 {
            psi[m + 2].mul(&cube(&psi[m]), &f).sub(&psi[m - 1].mul(&cube(&psi[m + 1]), &f))
        } else {
            let bracket = psi[m + 2].mul(&square(&psi[m - 1]), &f).sub(&psi[m - 2].mul(&square(&psi[m + 1]), &f));
            let t = bracket.mul(&psi[m], &f);
            // divide by 2Y
            let two = Scalar::from_int(2).inv();
            if t.odd {
                odd(t.p.scale(&two))
            } else {
                even(t.p.exact_div(&f).scale(&two))
            }
        };
        psi.push(next);
    }
    (psi, f)
}

/// The map `x(P) -> x([k] P)` on `y^2 = 4x^3 - g2 x - g3`, of degree `k^2`.
pub fn lattes(params: &LattesParams) -> Result<RatFun> {
    params.validate()?;
    let quarter = Scalar::ratio(-1, 4);
    let (a, b) = (&params.g2 * &quarter, &params.g3 * &quarter);
    let k = params.k as usize;
    let (psi, f) = division_polynomials(&a, &b, k + 1);
    let num = psi[k - 1].mul(&psi[k + 1], &f);
    let den = psi[k].mul(&psi[k], &f);
    debug_assert!(!num.odd && !den.odd);
    let correction = RatFun::normalize(num.p, den.p)?;
    Ok(&RatFun::x() - &correction)
}

pub fn commutes(r1: &RatFun, r2: &RatFun) -> bool {
    r1.compose(r2) == r2.compose(r1)
}

/// A row of the table of maps with a nontrivial envelope: the lattice quotient case
/// (1 to 7) and its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub case: u8,
    /// Degree used to build a generator for the self-check (cases 2 to 4).
    pub k: u32,
    pub g2: Scalar,
    pub g3: Scalar,
}

impl FamilySpec {
    pub fn new(case: u8) -> FamilySpec {
        FamilySpec { case, k: 2, g2: Scalar::zero(), g3: Scalar::zero() }
    }

    pub fn with_invariants(case: u8, g2: Scalar, g3: Scalar) -> FamilySpec {
        FamilySpec { case, k: 2, g2, g3 }
    }

    /// A map of this case, where one is built here.
    pub fn generator(&self) -> Result<Option<RatFun>> {
        match self.case {
            2 => monomial(self.k as i64).map(Some),
            3 => chebyshev(self.k, Normalization::Dilated).map(Some),
            4 => lattes(&LattesParams::new(self.g2.clone(), self.g3.clone(), self.k)?).map(Some),
            1 | 5..=7 => Ok(None),
            c => Err(Error::UnknownCase(c)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSource {
    /// Checked by the residual of the affine equation against a generator.
    Verified,
    /// Taken from the published table with the sign convention converted; not checked.
    PaperVerbatim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownMu {
    pub mu: RatFun,
    pub source: MuSource,
}

/// The coefficient `μ` of the affine equation for a case of the table. The published
/// table uses `(℘')^2 = 4℘^3 + g2 ℘ + g3`; its invariants are negated here.
pub fn known_mu(spec: &FamilySpec) -> Result<KnownMu> {
    let c = |v: i64| Scalar::from_int(v);
    let q = |n, d| Scalar::ratio(n, d);
    let z = Poly::x();
    let lin = |a: Scalar, b: Scalar| Poly::new(vec![b, a]);
    let frac = |n: Poly, d: Poly| RatFun::normalize(n, d);
    let (g2, g3) = (&spec.g2, &spec.g3);
    let half = q(1, 2);
    let mu = match spec.case {
        1 => RatFun::zero(),
        2 => frac(Poly::from_ints(&[-1]), z.clone())?,
        3 => frac(Poly::from_ints(&[0, -1]), Poly::from_ints(&[-4, 0, 1]))?,
        4 => frac(
            Poly::new(vec![g2 * &half, Scalar::zero(), c(-6)]),
            Poly::new(vec![-g3, -g2, Scalar::zero(), c(4)]),
        )?,
        5 => {
            let a = frac(Poly::from_ints(&[-1]), z.scale(&c(4)))?;
            let b = frac(Poly::new(vec![g2 * &half, c(-6)]), Poly::new(vec![Scalar::zero(), &c(-2) * g2, c(8)]))?;
            &a + &b
        }
        6 => frac(Poly::new(vec![Scalar::zero(), q(-2, 3)]), Poly::new(vec![g3.clone(), Scalar::zero(), c(1)]))?,
        7 => {
            let a = frac(Poly::from_ints(&[-2]), z.scale(&c(9)))?;
            let b = frac(Poly::from_ints(&[-1]), lin(c(1), -&(g3 * &half)))?;
            &a + &b
        }
        other => return Err(Error::UnknownCase(other)),
    };
    let source = match spec.generator()? {
        Some(r) if spec.case >= 2 => {
            let residual = eq_residual(&GroupoidEq::G2(mu.clone()), &r);
            if !residual.is_zero() {
                return Err(Error::Parameter(format!("table entry for case {} fails its residual check", spec.case)));
            }
            MuSource::Verified
        }
        _ if spec.case == 1 => MuSource::Verified,
        _ => MuSource::PaperVerbatim,
    };
    Ok(KnownMu { mu, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn generators() {
        assert_eq!(monomial(-2).unwrap(), rf(&[1], &[0, 0, 1]));
        assert!(monomial(1).is_err());
        assert_eq!(chebyshev(2, Normalization::Classical).unwrap(), rf(&[-1, 0, 2], &[1]));
        assert_eq!(chebyshev(2, Normalization::Dilated).unwrap(), rf(&[-2, 0, 1], &[1]));
        assert_eq!(chebyshev(4, Normalization::Classical).unwrap(), rf(&[1, 0, -8, 0, 8], &[1]));
    }

    #[test]
    fn duplication_map() {
        let p = LattesParams::new(Scalar::from_int(4), Scalar::zero(), 2).unwrap();
        assert_eq!(lattes(&p).unwrap(), rf(&[1, 0, 2, 0, 1], &[0, -4, 0, 4]));
        for k in 2..=LATTES_K_CAP {
            let p = LattesParams::new(Scalar::from_int(4), Scalar::from_int(1), k).unwrap();
            assert_eq!(lattes(&p).unwrap().degree(), (k * k) as usize);
        }
        assert!(matches!(LattesParams::new(Scalar::from_int(3), Scalar::from_int(1), 2), Err(Error::SingularCubic)));
    }

    #[test]
    fn table_checks() {
        assert_eq!(known_mu(&FamilySpec::new(2)).unwrap().mu, rf(&[-1], &[0, 1]));
        let m = known_mu(&FamilySpec::with_invariants(4, Scalar::from_int(4), Scalar::zero())).unwrap();
        assert_eq!(m.mu, rf(&[2, 0, -6], &[0, -4, 0, 4]));
        assert_eq!(m.source, MuSource::Verified);
        assert_eq!(known_mu(&FamilySpec::new(6)).unwrap().source, MuSource::PaperVerbatim);
        assert!(matches!(known_mu(&FamilySpec::new(9)), Err(Error::UnknownCase(9))));
    }
}
