//! Koenigs linearizers as truncated power series, and the series computations built on
//! them: pulling a coefficient `μ` or `ν` back along `Ψ`, the scaling law the pullback
//! obeys, and deck transformations `γ` with `Ψ∘γ = Ψ`.
//!
//! At a repelling fixed point `p` with multiplier `λ` the linearizer is the unique series
//! `Ψ(w) = p + w + a_2 w^2 + ..` with `R(Ψ(w)) = Ψ(λ w)`. Comparing coefficients of `w^k`
//! gives `a_k (λ^k - λ) = c_k`, where `c_k` only involves `a_2 .. a_{k-1}`.

use crate::algebra::series::eval_ratfun_at;
use crate::algebra::{BigFloatC, Coeff, Poly, RatFun, Scalar, Series};
use crate::dynamics::{FixedPointData, Multiplier, Point};
use crate::algebra::PointP1;
use crate::equations::{gauge_series, GroupoidEq};
use crate::error::{Error, Result};

pub const DEFAULT_SERIES_ORDER: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct KoenigsSeries<C> {
    pub point: C,
    pub multiplier: C,
    /// `Ψ(w)`, with constant term `p` and linear term 1.
    pub psi: Series<C>,
}

impl<C: Coeff> KoenigsSeries<C> {
    pub fn order(&self) -> usize {
        self.psi.order()
    }

    /// `a_1 ..= a_N`.
    pub fn coefficients(&self) -> &[C] {
        &self.psi.coeffs()[1..]
    }
}

/// A linearizer in whichever arithmetic the fixed point allows.
#[derive(Clone, Debug, PartialEq)]
pub enum Koenigs {
    Exact(KoenigsSeries<Scalar>),
    Numeric(KoenigsSeries<BigFloatC>),
}

/// Linearizer of `r` at the finite fixed point `p` to order `n`.
pub fn koenigs_at<C: Coeff>(r: &RatFun, p: &C, n: usize) -> Result<KoenigsSeries<C>> {
    let fp = eval_ratfun_at(r, p).ok_or(Error::PoleAtBasePoint)?;
    let lambda = eval_ratfun_at(&r.derive(), p).ok_or(Error::PoleAtBasePoint)?;
    if C::EXACT {
        if !fp.minus(p).is_zero() {
            return Err(Error::Parameter("base point is not fixed".into()));
        }
    } else if fp.minus(p).magnitude() > 1e-9 * (1.0 + p.magnitude()) {
        return Err(Error::Parameter("base point is not fixed".into()));
    }
    if lambda.is_zero() {
        return Err(Error::CriticalPoint);
    }
    if !C::EXACT && lambda.magnitude() <= 1.0 {
        return Err(Error::NotRepelling);
    }
    let mut lk = lambda.clone();
    let mut divisors = Vec::with_capacity(n + 1);
    for k in 2..=n {
        lk = lk.times(&lambda);
        let d = lk.minus(&lambda);
        if d.is_zero() {
            return Err(Error::ResonantMultiplier(k));
        }
        divisors.push(d);
    }
    let mut psi = Series::variable(p.clone(), 1);
    for (k, d) in (2..=n).zip(divisors) {
        psi = psi.extend_to(k);
        // with a_k = 0, the w^k coefficient of R(Ψ) - Ψ(λw) is c_k
        let c = psi.eval_ratfun(r)?.coeff(k).clone();
        psi.set_coeff(k, c.over(&d));
    }
    Ok(KoenigsSeries { point: p.clone(), multiplier: lambda, psi: psi.truncate(n) })
}

/// Linearizer at a fixed point found by `fixed_points`: exact when the point and its
/// multiplier are exact, numeric at `prec` bits otherwise.
pub fn koenigs_series(r: &RatFun, p: &FixedPointData, n: usize, prec: usize) -> Result<Koenigs> {
    if p.period != 1 {
        return Err(Error::Parameter("linearizers are built at fixed points of period 1".into()));
    }
    match (&p.point, &p.multiplier) {
        (Point::Exact(PointP1::Finite(z)), Multiplier::Exact(_)) => koenigs_at(r, z, n).map(Koenigs::Exact),
        (Point::Exact(PointP1::Infinity), _) => {
            Err(Error::Parameter("fixed point at infinity: conjugate by 1/x first".into()))
        }
        (Point::Exact(PointP1::Finite(z)), Multiplier::Numeric(_)) => {
            koenigs_at(r, &BigFloatC::from_scalar(z, prec), n).map(Koenigs::Numeric)
        }
        (Point::Numeric(z), _) => koenigs_at(r, z, n).map(Koenigs::Numeric),
    }
}

/// `R(Ψ(w)) - Ψ(λ w)`.
pub fn linearization_defect<C: Coeff>(r: &RatFun, k: &KoenigsSeries<C>) -> Result<Series<C>> {
    Ok(k.psi.eval_ratfun(r)?.sub(&k.psi.scale_argument(&k.multiplier)))
}

/// Largest coefficient magnitude of the linearization defect; exactly 0 in exact mode.
pub fn linearization_residual<C: Coeff>(r: &RatFun, k: &KoenigsSeries<C>) -> Result<f64> {
    Ok(linearization_defect(r, k)?.max_magnitude_from(0))
}

fn pullback<C: Coeff>(e: &GroupoidEq, k: &KoenigsSeries<C>) -> Result<Series<C>> {
    gauge_series(e, &k.psi).map_err(|err| match err {
        Error::PoleAtBasePoint => Error::Parameter(
            "coefficient has a pole at the base point; pick another with repelling_point_avoiding".into(),
        ),
        other => other,
    })
}

/// `μ̄ = (μ∘Ψ) Ψ' + Ψ''/Ψ'`, to order `N - 2`.
pub fn pullback_mu_series<C: Coeff>(mu: &RatFun, k: &KoenigsSeries<C>) -> Result<Series<C>> {
    pullback(&GroupoidEq::G2(mu.clone()), k)
}

/// `ν̄ = (ν∘Ψ) Ψ'^2 + S(Ψ)`, to order `N - 3`.
pub fn pullback_nu_series<C: Coeff>(nu: &RatFun, k: &KoenigsSeries<C>) -> Result<Series<C>> {
    pullback(&GroupoidEq::G3(nu.clone()), k)
}

/// `c̄(λw) λ^weight - c̄(w)`; vanishes when the coefficient solves its equation.
pub fn scaling_defect<C: Coeff>(bar: &Series<C>, lambda: &C, weight: usize) -> Series<C> {
    bar.scale_argument(lambda).scale(&lambda.pow(weight)).sub(bar)
}

/// `ρ(Ψ) Ψ'^weight` for a residual `ρ`, truncated like the matching pullback. The scaling
/// defect of any coefficient equals this for its residual.
pub fn residual_pullback<C: Coeff>(residual: &RatFun, k: &KoenigsSeries<C>, weight: usize) -> Result<Series<C>> {
    let d = k.psi.derivative();
    let mut w = Series::constant(k.point.one_like(), d.order());
    for _ in 0..weight {
        w = w.mul(&d);
    }
    let order = k.order().saturating_sub(weight + 1);
    Ok(k.psi.eval_ratfun(residual)?.mul(&w).truncate(order))
}

/// The deck transformation through `(w0, w1)` as the series `t -> γ(w0 + t) - w1`, given
/// the local expansions `t -> Ψ(w0 + t)` and `t -> Ψ(w1 + t)` with equal constant terms.
pub fn deck_transform_series<C: Coeff>(psi_w0: &Series<C>, psi_w1: &Series<C>) -> Result<Series<C>> {
    let base = psi_w1.coeff(0).clone();
    let centered = |s: &Series<C>| {
        let mut s = s.clone();
        s.set_coeff(0, base.zero_like());
        s
    };
    if psi_w1.order() < 1 || psi_w1.coeff(1).is_zero() {
        return Err(Error::CriticalPoint);
    }
    let n = psi_w0.order().min(psi_w1.order());
    let inv = centered(&psi_w1.truncate(n)).reversion()?;
    inv.compose(&centered(&psi_w0.truncate(n)))
}

/// Largest magnitude among the coefficients of `t^2, t^3, ..`; zero exactly for affine maps.
pub fn nonlinearity<C: Coeff>(gamma: &Series<C>) -> f64 {
    gamma.max_magnitude_from(2)
}

/// `exp(c + t)`.
pub fn exp_series(c: &BigFloatC, n: usize) -> Series<BigFloatC> {
    let mut coeffs = vec![c.exp()];
    for k in 1..=n {
        let next = &coeffs[k - 1] / &c.embed(&Scalar::from_int(k as i64));
        coeffs.push(next);
    }
    Series::new(coeffs)
}

/// `2 cos(c + t)` from `cos c` and `sin c`.
pub fn two_cos_series<C: Coeff>(cos_c: &C, sin_c: &C, n: usize) -> Series<C> {
    let two = cos_c.embed(&Scalar::from_int(2));
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut fact = cos_c.one_like();
    for k in 0..=n {
        if k > 0 {
            fact = fact.times(&cos_c.embed(&Scalar::from_int(k as i64)));
        }
        // d^k/dt^k cos(c + t) at 0 cycles through cos, -sin, -cos, sin
        let v = match k % 4 {
            0 => cos_c.clone(),
            1 => sin_c.negate(),
            2 => cos_c.negate(),
            _ => sin_c.clone(),
        };
        coeffs.push(two.times(&v).over(&fact));
    }
    Series::new(coeffs)
}

/// The solution of `f'' = 6 f^2 - g2/2` with `f(0) = x`, `f'(0) = y`: the expansion of `℘`
/// at a point where `(℘, ℘') = (x, y)`, for `y^2 = 4x^3 - g2 x - g3`.
pub fn weierstrass_series<C: Coeff>(g2: &C, x: &C, y: &C, n: usize) -> Series<C> {
    let six = x.embed(&Scalar::from_int(6));
    let half = x.embed(&Scalar::ratio(1, 2));
    let mut f = vec![x.clone(), y.clone()];
    for k in 0..n.saturating_sub(1) {
        // coefficient of t^k in 6 f^2 - g2/2
        let mut sq = x.zero_like();
        for i in 0..=k {
            sq = sq.plus(&f[i].times(&f[k - i]));
        }
        let mut rhs = six.times(&sq);
        if k == 0 {
            rhs = rhs.minus(&g2.times(&half));
        }
        let denom = x.embed(&Scalar::from_int(((k + 1) * (k + 2)) as i64));
        f.push(rhs.over(&denom));
    }
    f.truncate(n + 1);
    Series::new(f)
}

/// `p(c + t)`.
pub fn polynomial_series<C: Coeff>(p: &Poly, c: &C, n: usize) -> Series<C> {
    Series::variable(c.clone(), n).eval_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn exponential_linearizer() {
        let k = koenigs_at(&poly(&[0, 0, 1]), &Scalar::one(), 8).unwrap();
        let mut fact = Scalar::one();
        for (i, a) in k.coefficients().iter().enumerate() {
            fact = &fact * &Scalar::from_int(i as i64 + 1);
            assert_eq!(*a, fact.inv());
        }
        assert_eq!(linearization_residual(&poly(&[0, 0, 1]), &k).unwrap(), 0.0);
    }

    #[test]
    fn cosh_linearizer() {
        let k = koenigs_at(&poly(&[-2, 0, 1]), &Scalar::from_int(2), 3).unwrap();
        assert_eq!(k.coefficients(), &[Scalar::one(), Scalar::ratio(1, 12), Scalar::ratio(1, 360)]);
    }

    #[test]
    fn critical_and_resonant_points() {
        assert!(matches!(koenigs_at(&poly(&[0, 0, 1]), &Scalar::zero(), 4), Err(Error::CriticalPoint)));
        // x -> -x + x^2 at 0 has multiplier -1, and (-1)^3 = -1
        assert!(matches!(koenigs_at(&poly(&[0, -1, 1]), &Scalar::zero(), 4), Err(Error::ResonantMultiplier(3))));
    }

    #[test]
    fn mu_pullback_vanishes_for_square() {
        let r = poly(&[0, 0, 1]);
        let k = koenigs_at(&r, &Scalar::one(), 12).unwrap();
        let mu = RatFun::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, 1]));
        assert!(pullback_mu_series(&mu, &k).unwrap().is_zero());
        let bar = pullback_mu_series(&RatFun::zero(), &k).unwrap();
        assert!(!bar.is_zero());
        assert!(!scaling_defect(&bar, &k.multiplier, 1).is_zero());
    }

    #[test]
    fn even_cover_has_affine_deck() {
        let (c, s) = (Scalar::ratio(3, 5), Scalar::ratio(4, 5));
        let g = deck_transform_series(&two_cos_series(&c, &s, 10), &two_cos_series(&c, &(-&s), 10)).unwrap();
        assert_eq!(g.coeff(1), &Scalar::from_int(-1));
        assert_eq!(nonlinearity(&g), 0.0);
    }

    #[test]
    fn weierstrass_ode() {
        // g2 = 0, g3 = -4: (℘')^2 = 4℘^3 + 4 at (0, 2); ℘ is even, so (0, -2) is -w0
        let (g2, x, y) = (Scalar::zero(), Scalar::zero(), Scalar::from_int(2));
        let f = weierstrass_series(&g2, &x, &y, 10);
        let d = f.derivative();
        // (f')^2 - 4 f^3 - 4 vanishes identically
        let lhs = d.mul(&d).sub(&f.mul(&f).mul(&f).scale(&Scalar::from_int(4)).truncate(d.order()));
        assert!(lhs.sub(&Series::constant(Scalar::from_int(4), d.order())).is_zero());
        let g = deck_transform_series(&f, &weierstrass_series(&g2, &x, &(-&y), 10)).unwrap();
        assert_eq!(g.coeff(1), &Scalar::from_int(-1));
        assert_eq!(nonlinearity(&g), 0.0);
    }
}
