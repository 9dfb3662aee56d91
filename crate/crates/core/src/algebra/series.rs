//! Truncated power series in one variable, over exact scalars or `BigFloatC`.
//!
//! A series of order `N` carries the coefficients of `w^0 .. w^N`; products and
//! compositions are truncated to the smaller order of their inputs.

use std::fmt;

use super::bigfloat::BigFloatC;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Coefficient ring of a series.
pub trait Coeff: Clone + fmt::Debug {
    /// Whether arithmetic is exact; numeric coefficients are only ever compared by magnitude.
    const EXACT: bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn over(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// An exact scalar in the same context (precision) as `self`.
    fn embed(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;

    fn zero_like(&self) -> Self {
        self.embed(&Scalar::zero())
    }

    fn one_like(&self) -> Self {
        self.embed(&Scalar::one())
    }

    fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Coeff for Scalar {
    const EXACT: bool = true;

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn embed(&self, s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        let (a, b) = self.to_f64_pair();
        a.hypot(b)
    }
}

impl Coeff for BigFloatC {
    const EXACT: bool = false;

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn embed(&self, s: &Scalar) -> Self {
        BigFloatC::from_scalar(s, self.precision())
    }
    fn is_zero(&self) -> bool {
        BigFloatC::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        BigFloatC::magnitude(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    pub fn new(coeffs: Vec<C>) -> Series<C> {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Series { coeffs }
    }

    pub fn zeros_like(c: &C, order: usize) -> Series<C> {
        Series { coeffs: vec![c.zero_like(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Series<C> {
        let mut s = Series::zeros_like(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// `a + w`
    pub fn variable(a: C, order: usize) -> Series<C> {
        let mut s = Series::constant(a, order);
        if order >= 1 {
            s.coeffs[1] = s.coeffs[0].one_like();
        }
        s
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Series<C> {
        Series { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        self.coeffs[k] = c;
    }

    pub fn add(&self, rhs: &Series<C>) -> Series<C> {
        let n = self.order().min(rhs.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].plus(&rhs.coeffs[k])).collect() }
    }

    pub fn sub(&self, rhs: &Series<C>) -> Series<C> {
        let n = self.order().min(rhs.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].minus(&rhs.coeffs[k])).collect() }
    }

    pub fn neg(&self) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(C::negate).collect() }
    }

    pub fn scale(&self, c: &C) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, rhs: &Series<C>) -> Series<C> {
        let n = self.order().min(rhs.order());
        let mut out = vec![self.coeffs[0].zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Series { coeffs: out }
    }

    /// Term-by-term derivative; the order drops by one.
    pub fn derivative(&self) -> Series<C> {
        if self.order() == 0 {
            return Series::zeros_like(&self.coeffs[0], 0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].times(&self.coeffs[k].embed(&Scalar::from_int(k as i64))))
            .collect();
        Series { coeffs }
    }

    /// `f(c w)`
    pub fn scale_argument(&self, c: &C) -> Series<C> {
        let mut p = c.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.times(&p));
            p = p.times(c);
        }
        Series { coeffs }
    }

    /// `1/f` by Newton iteration `g <- g (2 - f g)`, doubling the order each step.
    pub fn reciprocal(&self) -> Result<Series<C>> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::Series("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let two = Series::constant(f0.embed(&Scalar::from_int(2)), n);
        let mut g = Series::constant(f0.one_like().over(f0), 0);
        let mut m = 0;
        while m < n {
            m = (2 * m + 1).min(n);
            let f = self.truncate(m);
            let g_ext = g.extend_to(m);
            g = g_ext.mul(&two.truncate(m).sub(&f.mul(&g_ext)));
        }
        Ok(g)
    }

    /// `1/f` by the triangular recursion; quadratic, kept as an oracle for `reciprocal`.
    pub fn reciprocal_naive(&self) -> Result<Series<C>> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::Series("reciprocal of a series with zero constant term".into()));
        }
        let mut g = vec![f0.one_like().over(f0)];
        for k in 1..=self.order() {
            let mut acc = f0.zero_like();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].times(&g[k - j]));
            }
            g.push(acc.negate().over(f0));
        }
        Ok(Series { coeffs: g })
    }

    pub fn div(&self, rhs: &Series<C>) -> Result<Series<C>> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// Pads with zero coefficients up to `order`.
    pub fn extend_to(&self, order: usize) -> Series<C> {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, self.coeffs[0].zero_like());
        Series { coeffs }
    }

    /// `self ∘ inner` for `inner(0) = 0`, by Horner's rule.
    pub fn compose(&self, inner: &Series<C>) -> Result<Series<C>> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series("inner series must vanish at 0".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse of `f` with `f(0) = 0` and `f'(0) != 0`, by Newton iteration
    /// `g <- g - (f∘g - w) / (f'∘g)`.
    pub fn reversion(&self) -> Result<Series<C>> {
        self.check_reversible()?;
        let n = self.order();
        let z = self.coeffs[0].zero_like();
        let mut g = Series::new(vec![z.clone(), self.coeffs[1].one_like().over(&self.coeffs[1])]);
        let mut m = 1;
        let fp = self.derivative();
        while m < n {
            m = (2 * m).min(n);
            let g_ext = g.extend_to(m);
            let f = self.truncate(m);
            let num = f.compose(&g_ext)?.sub(&Series::variable(z.clone(), m));
            let den = fp.extend_to(m).truncate(m).compose(&g_ext)?;
            g = g_ext.sub(&num.div(&den)?);
        }
        Ok(g.truncate(n))
    }

    /// Compositional inverse, one coefficient at a time; oracle for `reversion`.
    pub fn reversion_naive(&self) -> Result<Series<C>> {
        self.check_reversible()?;
        let n = self.order();
        let f1 = &self.coeffs[1];
        let z = self.coeffs[0].zero_like();
        let mut g = Series::zeros_like(&z, n);
        g.coeffs[1] = f1.one_like().over(f1);
        for k in 2..=n {
            let c = self.compose(&g)?.coeffs[k].clone();
            g.coeffs[k] = c.negate().over(f1);
        }
        Ok(g)
    }

    fn check_reversible(&self) -> Result<()> {
        if self.order() < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::Series("reversion needs f(0) = 0 and f'(0) != 0".into()));
        }
        Ok(())
    }

    /// `p(self)`
    pub fn eval_poly(&self, p: &Poly) -> Series<C> {
        let z = &self.coeffs[0];
        let n = self.order();
        let mut acc = Series::zeros_like(z, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].plus(&z.embed(c));
        }
        acc
    }

    /// `r(self)`; fails when the constant term is a pole of `r`.
    pub fn eval_ratfun(&self, r: &RatFun) -> Result<Series<C>> {
        let den = self.eval_poly(r.den());
        if den.coeffs[0].is_zero() {
            return Err(Error::PoleAtBasePoint);
        }
        self.eval_poly(r.num()).div(&den)
    }

    /// Largest coefficient magnitude among degrees `from..`.
    pub fn max_magnitude_from(&self, from: usize) -> f64 {
        self.coeffs.iter().skip(from).map(C::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }
}

impl Series<Scalar> {
    /// Exact series as a map from `w^k` to its coefficient, for display.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// `c ∘ ...` evaluated at a point of the coefficient ring.
pub fn eval_poly_at<C: Coeff>(p: &Poly, x: &C) -> C {
    let mut acc = x.zero_like();
    for c in p.coeffs().iter().rev() {
        acc = acc.times(x).plus(&x.embed(c));
    }
    acc
}

/// `r(x)` at a point of the coefficient ring; `None` at a pole.
pub fn eval_ratfun_at<C: Coeff>(r: &RatFun, x: &C) -> Option<C> {
    let d = eval_poly_at(r.den(), x);
    if d.is_zero() {
        return None;
    }
    Some(eval_poly_at(r.num(), x).over(&d))
}
