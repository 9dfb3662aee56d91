//! The normal-form groupoid equations of orders one to three, their residuals on maps,
//! gauge transformations and the cocycle identities behind them.
//!
//! The Schwarzian is normalized as `2 y3/y1 - 3 (y2/y1)^2`, twice the classical one.

use std::fmt;

use crate::algebra::{Coeff, Poly, RatFun, Scalar, Series};
use crate::error::{Error, Result};
use crate::jets::{BiRat, DiffPoly};

/// Default bound on `|n|` for the order-one family.
pub const DEFAULT_N_MAX: i32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidEq {
    /// `η(y) y1^n - η(x) = 0`
    G1 { n: i32, eta: RatFun },
    /// `μ(y) y1 + y2/y1 - μ(x) = 0`
    G2(RatFun),
    /// `ν(y) y1^2 + S(y) - ν(x) = 0`
    G3(RatFun),
    /// `0 = 0`
    GInf,
}

impl GroupoidEq {
    pub fn g1(n: i32, eta: RatFun) -> Result<GroupoidEq> {
        if n == 0 || eta.is_zero() {
            return Err(Error::Parameter("G1 needs n != 0 and a nonzero eta".into()));
        }
        Ok(GroupoidEq::G1 { n, eta })
    }

    pub fn order(&self) -> Option<u8> {
        match self {
            GroupoidEq::G1 { .. } => Some(1),
            GroupoidEq::G2(_) => Some(2),
            GroupoidEq::G3(_) => Some(3),
            GroupoidEq::GInf => None,
        }
    }

    pub fn coefficient(&self) -> Option<&RatFun> {
        match self {
            GroupoidEq::G1 { eta, .. } => Some(eta),
            GroupoidEq::G2(c) | GroupoidEq::G3(c) => Some(c),
            GroupoidEq::GInf => None,
        }
    }

    /// The equation as a differential polynomial in `(x, y, y1, y2, y3)`.
    pub fn to_diffpoly(&self) -> DiffPoly {
        match self {
            GroupoidEq::G1 { n, eta } => {
                DiffPoly::term(BiRat::in_y(eta), &[*n]).sub(&DiffPoly::coefficient(BiRat::in_x(eta)))
            }
            GroupoidEq::G2(mu) => DiffPoly::term(BiRat::in_y(mu), &[1])
                .add(&DiffPoly::term(BiRat::constant(Scalar::one()), &[-1, 1]))
                .sub(&DiffPoly::coefficient(BiRat::in_x(mu))),
            GroupoidEq::G3(nu) => DiffPoly::term(BiRat::in_y(nu), &[2])
                .add(&DiffPoly::term(BiRat::constant(Scalar::from_int(2)), &[-1, 0, 1]))
                .add(&DiffPoly::term(BiRat::constant(Scalar::from_int(-3)), &[-2, 2]))
                .sub(&DiffPoly::coefficient(BiRat::in_x(nu))),
            GroupoidEq::GInf => DiffPoly::zero(),
        }
    }
}

impl fmt::Display for GroupoidEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupoidEq::G1 { n, eta } => write!(f, "G1^{n}({})", crate::cli::format_ratfun(eta)),
            GroupoidEq::G2(mu) => write!(f, "G2({})", crate::cli::format_ratfun(mu)),
            GroupoidEq::G3(nu) => write!(f, "G3({})", crate::cli::format_ratfun(nu)),
            GroupoidEq::GInf => write!(f, "G_inf"),
        }
    }
}

/// `(P, Q)` with `R''/R' = P/Q` before reduction: for `R = N/D` with Wronskian `W`,
/// `R''/R' = W'/W - 2 D'/D`.
fn affine_parts(r: &RatFun) -> (Poly, Poly) {
    let (w, d) = (r.wronskian(), r.den());
    let p = &(&w.derivative() * d) - &(&w * &d.derivative()).scale(&Scalar::from_int(2));
    (p, &w * d)
}

/// `R''/R'`
pub fn affine_coeff(r: &RatFun) -> RatFun {
    let (p, q) = affine_parts(r);
    RatFun::new(p, q)
}

/// `2 R'''/R' - 3 (R''/R')^2`, computed as `2 a' - a^2` with `a = R''/R'`.
pub fn schwarzian(r: &RatFun) -> RatFun {
    let (p, q) = affine_parts(r);
    let two = Scalar::from_int(2);
    let n = &(&(&p.derivative() * &q) - &(&p * &q.derivative())).scale(&two) - &(&p * &p);
    RatFun::new(n, &q * &q)
}

/// The equation evaluated on the prolongation of `r`; zero exactly when `r` is a solution.
pub fn eq_residual(e: &GroupoidEq, r: &RatFun) -> RatFun {
    match e {
        GroupoidEq::G1 { n, eta } => &(&eta.compose(r) * &r.derive().pow(*n as i64)) - eta,
        GroupoidEq::G2(mu) => &(&(&mu.compose(r) * &r.derive()) + &affine_coeff(r)) - mu,
        GroupoidEq::G3(nu) => &(&(&nu.compose(r) * &r.derive().pow(2)) + &schwarzian(r)) - nu,
        GroupoidEq::GInf => RatFun::zero(),
    }
}

pub fn is_solution(e: &GroupoidEq, r: &RatFun) -> bool {
    eq_residual(e, r).is_zero()
}

/// The pulled-back equation `φ* E`; its solutions are the `φ`-conjugates of those of `E`.
pub fn gauge_transform(e: &GroupoidEq, phi: &RatFun) -> Result<GroupoidEq> {
    if phi.degree() != 1 {
        return Err(Error::NotMobius);
    }
    Ok(gauge_rational(e, phi))
}

/// Gauge formulas for any nonconstant `φ`; only Möbius `φ` preserve solution sets.
fn gauge_rational(e: &GroupoidEq, phi: &RatFun) -> GroupoidEq {
    let d = phi.derive();
    match e {
        GroupoidEq::G1 { n, eta } => GroupoidEq::G1 { n: *n, eta: &eta.compose(phi) * &d.pow(*n as i64) },
        GroupoidEq::G2(mu) => GroupoidEq::G2(&(&mu.compose(phi) * &d) + &affine_coeff(phi)),
        GroupoidEq::G3(nu) => GroupoidEq::G3(&(&nu.compose(phi) * &d.pow(2)) + &schwarzian(phi)),
        GroupoidEq::GInf => GroupoidEq::GInf,
    }
}

/// The coefficient of `φ* E` as a series, for an invertible series `φ` (nonzero linear term).
/// `G2` loses two orders of truncation and `G3` three.
pub fn gauge_series<C: Coeff>(e: &GroupoidEq, phi: &Series<C>) -> Result<Series<C>> {
    if phi.order() < 1 || phi.coeff(1).is_zero() {
        return Err(Error::Series("gauge series needs an invertible series".into()));
    }
    let d1 = phi.derivative();
    match e {
        GroupoidEq::G1 { n, eta } => {
            let pulled = phi.eval_ratfun(eta)?;
            let w = if *n >= 0 { pow_series(&d1, *n as usize) } else { pow_series(&d1.reciprocal()?, n.unsigned_abs() as usize) };
            Ok(pulled.mul(&w))
        }
        GroupoidEq::G2(mu) => {
            let d2 = d1.derivative();
            let a = d2.div(&d1.truncate(d2.order()))?;
            Ok(phi.eval_ratfun(mu)?.mul(&d1).truncate(a.order()).add(&a))
        }
        GroupoidEq::G3(nu) => {
            let s = series_schwarzian(phi)?;
            Ok(phi.eval_ratfun(nu)?.mul(&d1.mul(&d1)).truncate(s.order()).add(&s))
        }
        GroupoidEq::GInf => Ok(Series::zeros_like(phi.coeff(0), phi.order())),
    }
}

fn pow_series<C: Coeff>(s: &Series<C>, e: usize) -> Series<C> {
    let mut acc = Series::constant(s.coeff(0).one_like(), s.order());
    for _ in 0..e {
        acc = acc.mul(s);
    }
    acc
}

/// Paper-normalized Schwarzian of an invertible series, to order `N - 3`.
pub fn series_schwarzian<C: Coeff>(phi: &Series<C>) -> Result<Series<C>> {
    if phi.order() < 3 {
        return Err(Error::Series("Schwarzian needs order at least 3".into()));
    }
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let n = d3.order();
    let inv = d1.truncate(n).reciprocal()?;
    let a = d2.truncate(n).mul(&inv);
    let two = phi.coeff(0).embed(&Scalar::from_int(2));
    let three = phi.coeff(0).embed(&Scalar::from_int(3));
    Ok(d3.mul(&inv).scale(&two).sub(&a.mul(&a).scale(&three)))
}

/// The equation in the chart `x̄ = 1/x`; an involution.
pub fn chart_transform(e: &GroupoidEq) -> GroupoidEq {
    gauge_rational(e, &RatFun::x().inv().expect("1/x"))
}

/// Cocycle defect of order `kind` for the pair `f` then `g`; vanishes identically.
///
/// Kind 1 uses the multiplicative cocycle `c(φ) = η(φ) φ'^n / η`, kinds 2 and 3 the
/// affine coefficient and the Schwarzian.
pub fn cocycle_residual(kind: u8, f: &RatFun, g: &RatFun, g1: Option<(i32, &RatFun)>) -> Result<RatFun> {
    let gf = g.compose(f);
    let df = f.derive();
    match kind {
        1 => {
            let (n, eta) = g1.ok_or_else(|| Error::Parameter("kind 1 needs (n, eta)".into()))?;
            let c = |phi: &RatFun| &(&eta.compose(phi) * &phi.derive().pow(n as i64)) / eta;
            Ok(&c(&gf) - &(&c(g).compose(f) * &c(f)))
        }
        2 => Ok(&(&affine_coeff(&gf) - &(&affine_coeff(g).compose(f) * &df)) - &affine_coeff(f)),
        3 => Ok(&(&schwarzian(&gf) - &(&schwarzian(g).compose(f) * &df.pow(2))) - &schwarzian(f)),
        k => Err(Error::Parameter(format!("cocycle kind {k} is not 1, 2 or 3"))),
    }
}
