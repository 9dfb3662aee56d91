//! Reduced rational functions and points of the projective line.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Default cap on the degree of an iterate.
pub const ITERATE_DEGREE_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointP1 {
    Finite(Scalar),
    Infinity,
}

impl PointP1 {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            PointP1::Finite(s) => Some(s),
            PointP1::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointP1::Infinity)
    }
}

impl From<Scalar> for PointP1 {
    fn from(s: Scalar) -> PointP1 {
        PointP1::Finite(s)
    }
}

impl fmt::Display for PointP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointP1::Finite(s) => write!(f, "{s}"),
            PointP1::Infinity => write!(f, "inf"),
        }
    }
}

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduces `num / den` to lowest terms with a monic denominator.
    pub fn normalize(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let inv = den.lc().inv();
        Ok(RatFun { num: num.scale(&inv), den: den.scale(&inv) })
    }

    /// `normalize` for a denominator known to be nonzero.
    pub fn new(num: Poly, den: Poly) -> RatFun {
        RatFun::normalize(num, den).expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Scalar) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn x() -> RatFun {
        RatFun::from_poly(Poly::x())
    }

    /// `(a x + b) / (c x + d)`
    pub fn mobius(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<RatFun> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::NotMobius);
        }
        RatFun::normalize(Poly::new(vec![b, a]), Poly::new(vec![d, c]))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `max(deg num, deg den)`
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn derive(&self) -> RatFun {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RatFun {
        if e < 0 {
            return self.inv().expect("power of zero").pow(-e);
        }
        RatFun { num: self.num.pow(e as usize), den: self.den.pow(e as usize) }
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `self ∘ inner`; fails only when `inner` is a constant pole of `self`.
    pub fn try_compose(&self, inner: &RatFun) -> Result<RatFun> {
        let n = self.degree();
        let p = self.num.homogeneous_eval(n, &inner.num, &inner.den);
        let q = self.den.homogeneous_eval(n, &inner.num, &inner.den);
        if q.is_zero() {
            return Err(Error::ConstantInfinity);
        }
        RatFun::normalize(p, q)
    }

    /// `self ∘ inner` for a nonconstant `inner`.
    ///
    /// Panics if `inner` is a constant pole of `self`.
    pub fn compose(&self, inner: &RatFun) -> RatFun {
        self.try_compose(inner).expect("composition into a pole")
    }

    /// The `n`-fold iterate, refusing degrees above `cap`.
    pub fn iterate(&self, n: usize, cap: u64) -> Result<RatFun> {
        assert!(n >= 1, "iterate count must be positive");
        let d = self.degree() as u64;
        let mut degree: u64 = 1;
        for _ in 0..n {
            degree = degree.saturating_mul(d.max(1));
            if degree > cap {
                return Err(Error::IterateDegreeCap { degree, cap });
            }
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.try_compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, p: &PointP1) -> PointP1 {
        match p {
            PointP1::Finite(x) => {
                let d = self.den.eval(x);
                if d.is_zero() {
                    PointP1::Infinity
                } else {
                    PointP1::Finite(&self.num.eval(x) / &d)
                }
            }
            PointP1::Infinity => {
                let (dn, dd) = (self.num.deg(), self.den.deg());
                if self.num.is_zero() {
                    PointP1::Finite(Scalar::zero())
                } else if dn > dd {
                    PointP1::Infinity
                } else if dn == dd {
                    PointP1::Finite(&self.num.lc() / &self.den.lc())
                } else {
                    PointP1::Finite(Scalar::zero())
                }
            }
        }
    }

    /// Value at a finite point that is not a pole.
    pub fn eval_finite(&self, x: &Scalar) -> Option<Scalar> {
        match self.eval(&PointP1::Finite(x.clone())) {
            PointP1::Finite(v) => Some(v),
            PointP1::Infinity => None,
        }
    }

    /// `φ⁻¹ ∘ self ∘ φ` for a Möbius `φ`.
    pub fn mobius_conjugate(&self, phi: &RatFun) -> Result<RatFun> {
        let inv = phi.mobius_inverse()?;
        Ok(inv.compose(&self.compose(phi)))
    }

    /// Inverse of a degree-one map.
    pub fn mobius_inverse(&self) -> Result<RatFun> {
        if self.degree() != 1 {
            return Err(Error::NotMobius);
        }
        // (a x + b)/(c x + d) -> (d x - b)/(-c x + a)
        let (b, a) = (self.num.coeff(0), self.num.coeff(1));
        let (d, c) = (self.den.coeff(0), self.den.coeff(1));
        RatFun::mobius(d, -&b, -&c, a)
    }

    /// The Wronskian `P'Q - PQ'` of `P/Q`, whose roots are the finite critical points.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    pub fn height_bits(&self) -> u64 {
        self.num.height_bits().max(self.den.height_bits())
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.exact_div(&g);
        let b = self.den.exact_div(&g);
        RatFun::new(&(&self.num * &a) + &(&rhs.num * &b), &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFun::new(n, d)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d))
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[-2, 0, 2], &[-2, 2]), RatFun::from_poly(p(&[1, 1])));
        assert_eq!(rf(&[0, 1], &[1]), RatFun::x());
        let r = rf(&[1, 0, 1], &[0, 2]);
        assert_eq!(r.num(), &Poly::new(vec![Scalar::ratio(1, 2), Scalar::zero(), Scalar::ratio(1, 2)]));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert_eq!(RatFun::normalize(p(&[1]), Poly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(rf(&[0, 0, 1], &[1]).derive(), rf(&[0, 2], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).derive(), rf(&[-1], &[0, 0, 1]));
        assert_eq!(rf(&[1, 0, 1], &[0, 2]).derive(), rf(&[-1, 0, 1], &[0, 0, 2]));
    }

    #[test]
    fn compose_examples() {
        let sq = rf(&[0, 0, 1], &[1]);
        assert_eq!(sq.compose(&rf(&[1, 1], &[1])), rf(&[1, 2, 1], &[1]));
        assert_eq!(sq.compose(&sq), rf(&[0, 0, 0, 0, 1], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).compose(&rf(&[1, 1], &[-1, 1])), rf(&[-1, 1], &[1, 1]));
        let pole = RatFun::constant(Scalar::zero());
        assert_eq!(rf(&[1], &[0, 1]).try_compose(&pole), Err(Error::ConstantInfinity));
    }

    #[test]
    fn iterate_examples() {
        let sq = rf(&[0, 0, 1], &[1]);
        assert_eq!(sq.iterate(3, ITERATE_DEGREE_CAP).unwrap(), RatFun::from_poly(Poly::monomial(Scalar::one(), 8)));
        assert_eq!(rf(&[1, 1], &[1]).iterate(5, ITERATE_DEGREE_CAP).unwrap(), rf(&[5, 1], &[1]));
        assert_eq!(rf(&[-1, 0, 2], &[1]).iterate(2, ITERATE_DEGREE_CAP).unwrap(), rf(&[1, 0, -8, 0, 8], &[1]));
        assert!(matches!(sq.iterate(13, ITERATE_DEGREE_CAP), Err(Error::IterateDegreeCap { .. })));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[1], &[0, 1]).eval(&PointP1::Finite(Scalar::zero())), PointP1::Infinity);
        assert_eq!(rf(&[0, 0, 1], &[1]).eval(&PointP1::Infinity), PointP1::Infinity);
        assert_eq!(rf(&[1, 0, 1], &[0, 2]).eval(&PointP1::Infinity), PointP1::Infinity);
        assert_eq!(rf(&[1, 1], &[2, 3]).eval(&PointP1::Infinity), PointP1::Finite(Scalar::ratio(1, 3)));
    }

    #[test]
    fn mobius_conjugate_examples() {
        let sq = rf(&[0, 0, 1], &[1]);
        let two_x = rf(&[0, 2], &[1]);
        assert_eq!(sq.mobius_conjugate(&two_x).unwrap(), rf(&[0, 0, 2], &[1]));
        assert_eq!(sq.mobius_conjugate(&RatFun::x()).unwrap(), sq);
        let t2 = rf(&[-1, 0, 2], &[1]);
        let expect = RatFun::from_poly(Poly::new(vec![Scalar::ratio(-1, 2), Scalar::zero(), Scalar::from_int(4)]));
        assert_eq!(t2.mobius_conjugate(&two_x).unwrap(), expect);
        assert_eq!(sq.mobius_conjugate(&sq), Err(Error::NotMobius));
    }
}
