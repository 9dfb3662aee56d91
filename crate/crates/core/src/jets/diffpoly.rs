//! Differential polynomials on the jet space: finite sums of `c(x, y) · y1^a1 .. yk^ak`
//! with `a1` any integer and the other exponents nonnegative.

use std::collections::BTreeMap;

use crate::algebra::{Poly, RatFun, Scalar};

use super::Jet;

/// Polynomial in `x` and `y`, keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn constant(c: Scalar) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn in_x(p: &Poly) -> Poly2 {
        Poly2::from_univariate(p, true)
    }

    pub fn in_y(p: &Poly) -> Poly2 {
        Poly2::from_univariate(p, false)
    }

    fn from_univariate(p: &Poly, in_x: bool) -> Poly2 {
        let mut out = Poly2::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let key = if in_x { (k as u32, 0) } else { (0, k as u32) };
            out.add_term(key, c.clone());
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &rhs.terms {
                out.add_term((a + d, b + e), c * f);
            }
        }
        out
    }

    pub fn dx(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.terms {
            if *a > 0 {
                out.add_term((a - 1, *b), c * &Scalar::from_int(*a as i64));
            }
        }
        out
    }

    pub fn dy(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.terms {
            if *b > 0 {
                out.add_term((*a, b - 1), c * &Scalar::from_int(*b as i64));
            }
        }
        out
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, ((a, b), c)| {
            &acc + &(&(c * &x.pow(*a as i64)) * &y.pow(*b as i64))
        })
    }

    /// `Σ c x^a r^b` as a rational function of `x`.
    pub fn substitute_y(&self, r: &RatFun) -> RatFun {
        self.terms.iter().fold(RatFun::zero(), |acc, ((a, b), c)| {
            let t = RatFun::from_poly(Poly::monomial(c.clone(), *a as usize));
            &acc + &(&t * &r.pow(*b as i64))
        })
    }
}

/// `num(x, y) / (den_x(x) den_y(y))`, the coefficient ring of a differential polynomial.
/// Not reduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct BiRat {
    num: Poly2,
    den_x: Poly,
    den_y: Poly,
}

impl BiRat {
    pub fn constant(c: Scalar) -> BiRat {
        BiRat { num: Poly2::constant(c), den_x: Poly::one(), den_y: Poly::one() }
    }

    pub fn in_x(r: &RatFun) -> BiRat {
        BiRat { num: Poly2::in_x(r.num()), den_x: r.den().clone(), den_y: Poly::one() }
    }

    pub fn in_y(r: &RatFun) -> BiRat {
        BiRat { num: Poly2::in_y(r.num()), den_x: Poly::one(), den_y: r.den().clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &BiRat) -> BiRat {
        if self.den_x == rhs.den_x && self.den_y == rhs.den_y {
            return BiRat { num: self.num.add(&rhs.num), den_x: self.den_x.clone(), den_y: self.den_y.clone() };
        }
        let l = self.num.mul(&Poly2::in_x(&rhs.den_x)).mul(&Poly2::in_y(&rhs.den_y));
        let r = rhs.num.mul(&Poly2::in_x(&self.den_x)).mul(&Poly2::in_y(&self.den_y));
        BiRat { num: l.add(&r), den_x: &self.den_x * &rhs.den_x, den_y: &self.den_y * &rhs.den_y }
    }

    pub fn neg(&self) -> BiRat {
        BiRat { num: self.num.neg(), den_x: self.den_x.clone(), den_y: self.den_y.clone() }
    }

    pub fn mul(&self, rhs: &BiRat) -> BiRat {
        BiRat { num: self.num.mul(&rhs.num), den_x: &self.den_x * &rhs.den_x, den_y: &self.den_y * &rhs.den_y }
    }

    pub fn scale(&self, c: &Scalar) -> BiRat {
        self.mul(&BiRat::constant(c.clone()))
    }

    pub fn dx(&self) -> BiRat {
        // (N' dx - N dx') / dx^2, with dy untouched
        let n = self.num.dx().mul(&Poly2::in_x(&self.den_x)).add(&self.num.mul(&Poly2::in_x(&self.den_x.derivative())).neg());
        BiRat { num: n, den_x: &self.den_x * &self.den_x, den_y: self.den_y.clone() }
    }

    pub fn dy(&self) -> BiRat {
        let n = self.num.dy().mul(&Poly2::in_y(&self.den_y)).add(&self.num.mul(&Poly2::in_y(&self.den_y.derivative())).neg());
        BiRat { num: n, den_x: self.den_x.clone(), den_y: &self.den_y * &self.den_y }
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        let d = &self.den_x.eval(x) * &self.den_y.eval(y);
        (!d.is_zero()).then(|| &self.num.eval(x, y) / &d)
    }

    /// The coefficient along the graph `y = r(x)`.
    pub fn along(&self, r: &RatFun) -> RatFun {
        let d = &RatFun::from_poly(self.den_x.clone()) * &RatFun::from_poly(self.den_y.clone()).compose(r);
        &self.num.substitute_y(r) / &d
    }
}

impl PartialEq for BiRat {
    fn eq(&self, other: &BiRat) -> bool {
        let l = self.num.mul(&Poly2::in_x(&other.den_x)).mul(&Poly2::in_y(&other.den_y));
        let r = other.num.mul(&Poly2::in_x(&self.den_x)).mul(&Poly2::in_y(&self.den_y));
        l == r
    }
}

/// Exponent vector `(a1, .., ak)` with trailing zeros trimmed.
type Monomial = Vec<i32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

#[derive(Clone, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, BiRat>,
}

impl DiffPoly {
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    /// `c · y1^a1 .. yk^ak`; only `a1` may be negative.
    pub fn term(c: BiRat, exps: &[i32]) -> DiffPoly {
        assert!(exps.iter().skip(1).all(|&a| a >= 0), "only y1 may carry a negative power");
        let mut p = DiffPoly::zero();
        p.add_term(trim(exps.to_vec()), c);
        p
    }

    /// The jet coordinate `y_i` (`i >= 1`).
    pub fn y(i: usize) -> DiffPoly {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        DiffPoly::term(BiRat::constant(Scalar::one()), &e)
    }

    pub fn coefficient(c: BiRat) -> DiffPoly {
        DiffPoly::term(c, &[])
    }

    fn add_term(&mut self, m: Monomial, c: BiRat) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest `k` with `y_k` present.
    pub fn order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &DiffPoly) -> DiffPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn mul(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let n = m1.len().max(m2.len());
                let m: Monomial = (0..n).map(|i| m1.get(i).unwrap_or(&0) + m2.get(i).unwrap_or(&0)).collect();
                out.add_term(trim(m), c1.mul(c2));
            }
        }
        out
    }

    /// `D = ∂x + y1 ∂y + Σ y_{i+1} ∂_{y_i}`.
    pub fn total_derivative(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.dx());
            let mut with_y1 = m.clone();
            if with_y1.is_empty() {
                with_y1.push(0);
            }
            with_y1[0] += 1;
            out.add_term(trim(with_y1), c.dy());
            for i in 0..m.len() {
                let a = m[i];
                if a == 0 {
                    continue;
                }
                let mut e = m.clone();
                e[i] -= 1;
                if e.len() < i + 2 {
                    e.resize(i + 2, 0);
                }
                e[i + 1] += 1;
                out.add_term(trim(e), c.scale(&Scalar::from_int(a as i64)));
            }
        }
        out
    }

    /// Value at a jet of order at least `self.order()`; `None` where a coefficient has a pole.
    pub fn eval_jet(&self, j: &Jet) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval(j.source(), j.target())?;
            for (i, &a) in m.iter().enumerate() {
                t = &t * &j.deriv(i + 1).pow(a as i64);
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Substitutes the prolongation `y = r(x)`, `y_i = r^(i)(x)`.
    pub fn eval_prolongation(&self, r: &RatFun) -> RatFun {
        let mut derivs = vec![r.derive()];
        while derivs.len() < self.order() {
            let next = derivs.last().unwrap().derive();
            derivs.push(next);
        }
        let mut acc = RatFun::zero();
        for (m, c) in &self.terms {
            let mut t = c.along(r);
            for (i, &a) in m.iter().enumerate() {
                t = &t * &derivs[i].pow(a as i64);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &DiffPoly) -> bool {
        self.sub(other).is_zero()
    }
}
