//! Jets of invertible local maps of the line and the groupoid operations on them.
//!
//! A jet `(x, y, y1, .., yk)` is handled through its Taylor polynomial
//! `y + Σ y_i t^i / i!`; composition and inversion are truncated series composition and
//! reversion, which agree with Faà di Bruno term by term.

mod diffpoly;

use std::fmt;

pub use diffpoly::{BiRat, DiffPoly, Poly2};

use crate::algebra::{PointP1, RatFun, Scalar, Series};
use crate::error::{Error, Result};

/// Default bound on jet orders.
pub const MAX_JET_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    x: Scalar,
    y: Scalar,
    /// `y1 .. yk`
    derivs: Vec<Scalar>,
}

fn factorial(k: usize) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |acc, i| &acc * &Scalar::from_int(i))
}

impl Jet {
    pub fn new(x: Scalar, y: Scalar, derivs: Vec<Scalar>) -> Result<Jet> {
        if derivs.is_empty() {
            return Err(Error::InvalidJet("order must be at least 1".into()));
        }
        if derivs[0].is_zero() {
            return Err(Error::InvalidJet("y1 must be nonzero".into()));
        }
        Ok(Jet { x, y, derivs })
    }

    /// `e(x) = (x, x, 1, 0, ..)`
    pub fn identity(x: Scalar, order: usize) -> Jet {
        assert!(order >= 1);
        let mut derivs = vec![Scalar::zero(); order];
        derivs[0] = Scalar::one();
        Jet { y: x.clone(), x, derivs }
    }

    pub fn order(&self) -> usize {
        self.derivs.len()
    }

    pub fn source(&self) -> &Scalar {
        &self.x
    }

    pub fn target(&self) -> &Scalar {
        &self.y
    }

    /// `y_i` for `1 <= i <= order`.
    pub fn deriv(&self, i: usize) -> &Scalar {
        &self.derivs[i - 1]
    }

    pub fn derivs(&self) -> &[Scalar] {
        &self.derivs
    }

    /// Taylor coefficients of `t -> f(x + t) - y`.
    fn taylor(&self) -> Series<Scalar> {
        let mut c = vec![Scalar::zero()];
        c.extend(self.derivs.iter().enumerate().map(|(i, d)| d / &factorial(i + 1)));
        Series::new(c)
    }

    fn from_taylor(x: Scalar, y: Scalar, s: &Series<Scalar>) -> Jet {
        let derivs = (1..=s.order()).map(|i| s.coeff(i) * &factorial(i)).collect();
        Jet { x, y, derivs }
    }

    /// The jet of `h ∘ self`, for `h` based at the target of `self`.
    pub fn then(&self, h: &Jet) -> Result<Jet> {
        if self.y != h.x {
            return Err(Error::NonComposableJets { target: self.y.to_string(), source_point: h.x.to_string() });
        }
        if self.order() != h.order() {
            return Err(Error::JetOrderMismatch(self.order(), h.order()));
        }
        let s = h.taylor().compose(&self.taylor())?;
        Ok(Jet::from_taylor(self.x.clone(), h.y.clone(), &s))
    }

    /// The jet of the local inverse, based at the target.
    pub fn invert(&self) -> Jet {
        let s = self.taylor().reversion().expect("y1 is nonzero by construction");
        Jet::from_taylor(self.y.clone(), self.x.clone(), &s)
    }
}

/// `jet_compose(j, h)`: first `j`, then `h`.
pub fn jet_compose(j: &Jet, h: &Jet) -> Result<Jet> {
    j.then(h)
}

pub fn jet_invert(j: &Jet) -> Jet {
    j.invert()
}

pub fn jet_identity(x: Scalar, order: usize) -> Jet {
    Jet::identity(x, order)
}

/// `(p, R(p), R'(p), .., R^(k)(p))`; undefined at infinity, at poles and at critical points.
pub fn jet_of_map(r: &RatFun, p: &PointP1, order: usize) -> Result<Jet> {
    let PointP1::Finite(x) = p else {
        return Err(Error::JetUndefined);
    };
    let t = Series::variable(x.clone(), order);
    let s = t.eval_ratfun(r).map_err(|_| Error::JetUndefined)?;
    if s.coeff(1).is_zero() {
        return Err(Error::JetUndefined);
    }
    let y = s.coeff(0).clone();
    let mut shifted = s;
    shifted.set_coeff(0, Scalar::zero());
    Ok(Jet::from_taylor(x.clone(), y, &shifted))
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}", self.x, self.y)?;
        for d in &self.derivs {
            write!(f, ", {d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn jet(v: &[i64]) -> Jet {
        Jet::new(s(v[0]), s(v[1]), v[2..].iter().map(|&d| s(d)).collect()).unwrap()
    }

    #[test]
    fn second_order_chain_rule() {
        let c = jet(&[0, 1, 2, 3]).then(&jet(&[1, 5, 7, 11])).unwrap();
        assert_eq!(c, jet(&[0, 5, 14, 65]));
        assert!(matches!(jet(&[0, 1, 2]).then(&jet(&[2, 0, 1])), Err(Error::NonComposableJets { .. })));
    }

    #[test]
    fn inversion() {
        let inv = jet(&[0, 1, 2, 3]).invert();
        assert_eq!(inv, Jet::new(s(1), s(0), vec![Scalar::ratio(1, 2), Scalar::ratio(-3, 8)]).unwrap());
        assert_eq!(jet(&[0, 1, 2]).invert(), Jet::new(s(1), s(0), vec![Scalar::ratio(1, 2)]).unwrap());
        assert_eq!(Jet::identity(s(3), 4).invert(), Jet::identity(s(3), 4));
    }

    #[test]
    fn jets_of_maps() {
        let sq = RatFun::from_poly(Poly::from_ints(&[0, 0, 1]));
        assert_eq!(jet_of_map(&sq, &PointP1::Finite(s(1)), 2).unwrap(), jet(&[1, 1, 2, 2]));
        assert_eq!(jet_of_map(&sq, &PointP1::Finite(s(0)), 1), Err(Error::JetUndefined));
        let t2 = RatFun::from_poly(Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(jet_of_map(&t2, &PointP1::Finite(s(-1)), 2).unwrap(), jet(&[-1, 1, -4, 4]));
        assert_eq!(Jet::identity(s(0), 2), jet(&[0, 0, 1, 0]));
    }
}
