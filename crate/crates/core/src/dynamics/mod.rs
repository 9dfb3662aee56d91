//! Periodic points and multipliers, critical and postcritical divisors, and the
//! exceptional set of a rational map.

pub mod roots;

use std::fmt;

use num_traits::{One, Signed};

use crate::algebra::series::eval_ratfun_at;
use crate::algebra::{BigFloatC, Divisor, Field, PointP1, RatFun, Scalar, ITERATE_DEGREE_CAP};
use crate::error::{Error, Result};

pub use roots::{roots, Roots};

/// Default bound on the support of a postcritical divisor.
pub const DEFAULT_ORBIT_CAP: usize = 64;
/// Default bound on the coefficient height (in bits, above the map's own) of a new orbit point.
pub const DEFAULT_HEIGHT_CAP_BITS: u64 = 64;
/// Default number of periods scanned for repelling points.
pub const DEFAULT_PERIOD_CAP: usize = 6;
/// Periods whose iterate would exceed this degree are not scanned for repelling points.
const PERIOD_SCAN_DEGREE: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact(PointP1),
    Numeric(BigFloatC),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier {
    Exact(Scalar),
    Numeric(BigFloatC),
}

impl Multiplier {
    pub fn magnitude(&self) -> f64 {
        match self {
            Multiplier::Exact(s) => {
                let (a, b) = s.to_f64_pair();
                a.hypot(b)
            }
            Multiplier::Numeric(z) => z.magnitude(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Exact(p) => write!(f, "{p}"),
            Point::Numeric(z) => write!(f, "~{z}"),
        }
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplier::Exact(s) => write!(f, "{s}"),
            Multiplier::Numeric(z) => write!(f, "~{z}"),
        }
    }
}

/// A point fixed by `R^period`, with the multiplier of `R^period` there.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointData {
    pub point: Point,
    pub multiplier: Multiplier,
    pub period: usize,
    /// Multiplicity as a root of `R^period(x) = x`.
    pub multiplicity: u32,
    pub repelling: bool,
}

impl FixedPointData {
    pub fn exact_point(&self) -> Option<&Scalar> {
        match &self.point {
            Point::Exact(PointP1::Finite(s)) => Some(s),
            _ => None,
        }
    }
}

/// `|s| > 1`, exactly where the field allows.
pub fn exceeds_one(s: &Scalar) -> bool {
    match s.field().radicand() {
        Some(d) if d > 0 && !s.is_rational() => {
            let (a, _) = s.to_f64_pair();
            a.abs() > 1.0
        }
        // rational, Gaussian or imaginary quadratic: the norm is |s|^2
        _ => s.norm().abs() > num_rational::BigRational::one(),
    }
}

/// The `1/x` chart conjugate, where infinity becomes 0.
fn at_infinity(r: &RatFun) -> RatFun {
    r.mobius_conjugate(&RatFun::x().inv().expect("1/x")).expect("1/x is Möbius")
}

/// All solutions of `R^n(x) = x` on the projective line with their multipliers; exact
/// over `field` where possible, numeric at `prec` bits otherwise. The multiplicities sum
/// to `deg(R)^n + 1`.
pub fn fixed_points(r: &RatFun, period: usize, field: Field, prec: usize) -> Result<Vec<FixedPointData>> {
    assert!(period >= 1, "period must be positive");
    let s = r.iterate(period, ITERATE_DEGREE_CAP)?;
    let f = &s.num().clone() - &(&s.den().clone() * &crate::algebra::Poly::x());
    if f.is_zero() {
        return Err(Error::Parameter("the iterate is the identity".into()));
    }
    let ds = s.derive();
    let mut out = Vec::new();
    let rs = roots(&f, field, prec)?;
    for (a, m) in rs.exact {
        let lambda = ds.eval_finite(&a).expect("a finite fixed point is not a pole");
        out.push(FixedPointData {
            repelling: exceeds_one(&lambda),
            point: Point::Exact(PointP1::Finite(a)),
            multiplier: Multiplier::Exact(lambda),
            period,
            multiplicity: m,
        });
    }
    for (z, m) in rs.numeric {
        let lambda = eval_ratfun_at(&ds, &z).expect("a finite fixed point is not a pole");
        out.push(FixedPointData {
            repelling: lambda.log2_magnitude() > 0.0,
            point: Point::Numeric(z),
            multiplier: Multiplier::Numeric(lambda),
            period,
            multiplicity: m,
        });
    }
    let total = s.degree() + 1;
    if f.deg() < total {
        let lambda = at_infinity(&s).derive().eval_finite(&Scalar::zero()).expect("infinity is fixed");
        out.push(FixedPointData {
            repelling: exceeds_one(&lambda),
            point: Point::Exact(PointP1::Infinity),
            multiplier: Multiplier::Exact(lambda),
            period,
            multiplicity: (total - f.deg()) as u32,
        });
    }
    Ok(out)
}

fn orbit_avoids(r: &RatFun, p: &Point, period: usize, avoid: &Divisor) -> bool {
    match p {
        Point::Exact(x) => {
            let mut x = x.clone();
            for _ in 0..period {
                if avoid.contains_point(&x) {
                    return false;
                }
                x = r.eval(&x);
            }
            true
        }
        Point::Numeric(z) => {
            let g = avoid.finite_support_poly();
            let mut z = z.clone();
            for _ in 0..period {
                let v = crate::algebra::series::eval_poly_at(&g, &z);
                if !g.is_constant() && v.log2_magnitude() < -(z.precision() as f64) / 2.0 {
                    return false;
                }
                match eval_ratfun_at(r, &z) {
                    Some(w) => z = w,
                    None => return !avoid.contains_infinity(),
                }
            }
            true
        }
    }
}

/// A repelling periodic point whose orbit misses `avoid`, scanning periods
/// `1..=period_cap`. Points exact over `field` are preferred over numeric ones.
pub fn repelling_point_avoiding(
    r: &RatFun,
    avoid: &Divisor,
    field: Field,
    period_cap: usize,
    prec: usize,
) -> Result<FixedPointData> {
    if r.degree() < 2 {
        return Err(Error::Parameter("repelling points need degree at least 2".into()));
    }
    let mut numeric = None;
    for n in 1..=period_cap {
        if r.degree().checked_pow(n as u32).map_or(true, |d| d > PERIOD_SCAN_DEGREE) {
            break;
        }
        for fp in fixed_points(r, n, field, prec)? {
            if !fp.repelling || !orbit_avoids(r, &fp.point, n, avoid) {
                continue;
            }
            match fp.point {
                Point::Exact(_) => return Ok(fp),
                Point::Numeric(_) => {
                    numeric.get_or_insert(fp);
                }
            }
        }
    }
    numeric.ok_or(Error::NoRepellingPoint)
}

/// Critical points with multiplicity: the zeros of the Wronskian, plus infinity with
/// `2d - 2 - deg W`.
pub fn critical_divisor(r: &RatFun) -> Divisor {
    let w = r.wronskian();
    let d = r.degree();
    let inf = (2 * d).saturating_sub(2).saturating_sub(w.deg());
    Divisor::from_parts(w.squarefree_decomposition(), inf as u32)
}

/// Caps that decide when a critical orbit is declared infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitCaps {
    pub max_support: usize,
    pub height_bits: u64,
}

impl Default for OrbitCaps {
    fn default() -> Self {
        OrbitCaps { max_support: DEFAULT_ORBIT_CAP, height_bits: DEFAULT_HEIGHT_CAP_BITS }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Postcritical {
    /// The forward-invariant closure, reached after `iterations` pushforwards.
    Finite { divisor: Divisor, iterations: usize },
    /// The orbit outgrew a cap at pushforward number `iterations`.
    Overflow { iterations: usize, reason: String },
}

impl Postcritical {
    pub fn divisor(&self) -> Option<&Divisor> {
        match self {
            Postcritical::Finite { divisor, .. } => Some(divisor),
            Postcritical::Overflow { .. } => None,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            Postcritical::Finite { iterations, .. } | Postcritical::Overflow { iterations, .. } => *iterations,
        }
    }
}

/// Smallest forward-invariant divisor containing the critical values.
///
/// A new orbit point is treated as evidence of an infinite orbit when the support exceeds
/// `caps.max_support`, or when its defining factor is more than `caps.height_bits` taller
/// than the map itself: preperiodic orbits of exact maps stay at bounded height.
pub fn postcritical_closure(r: &RatFun, caps: OrbitCaps) -> Postcritical {
    let height_limit = caps.height_bits + r.height_bits();
    let mut closure = critical_divisor(r).support().pushforward(r);
    let mut frontier = closure.clone();
    let mut iterations = 1;
    loop {
        if closure.support_size() > caps.max_support {
            return Postcritical::Overflow { iterations, reason: format!("support exceeds {}", caps.max_support) };
        }
        if frontier.height_bits() > height_limit {
            return Postcritical::Overflow { iterations, reason: format!("orbit height exceeds {height_limit} bits") };
        }
        let image = frontier.pushforward(r);
        let new = image.difference(&closure);
        if new.is_empty() {
            return Postcritical::Finite { divisor: closure, iterations };
        }
        closure = closure.union(&new);
        frontier = new;
        iterations += 1;
    }
}

/// Points with finite grand orbit: the largest set of totally ramified points that
/// contains its own preimage.
pub fn exceptional_set(r: &RatFun) -> Divisor {
    let d = r.degree() as u32;
    if d < 2 {
        return Divisor::empty();
    }
    let crit = critical_divisor(r);
    let parts: Vec<_> = crit.factors().iter().filter(|(_, m)| *m == d - 1).cloned().collect();
    let inf = u32::from(crit.inf_mult() == d - 1);
    let mut t = Divisor::from_parts(parts, inf).support();
    loop {
        // points of t with a preimage outside t
        let escaping = t.pullback(r).difference(&t).pushforward(r);
        let next = t.difference(&escaping);
        if next == t {
            return t;
        }
        t = next;
    }
}

/// Whether every critical orbit is finite within `caps`.
pub fn is_pcf(r: &RatFun, caps: OrbitCaps) -> bool {
    matches!(postcritical_closure(r, caps), Postcritical::Finite { .. })
}
