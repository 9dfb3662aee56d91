//! Rational coefficient functions `η`, `μ`, `ν` solving the groupoid equations for a given
//! map, and the classification built on them.
//!
//! The unknown coefficient is written `N / D` with `D` fixed from the pole-candidate divisor
//! and the numerator coefficients unknown; substituting into the equation and clearing
//! denominators gives a polynomial identity that is linear in those coefficients.

mod g1;

use std::fmt;

use crate::algebra::{solve_affine, Divisor, Matrix, Poly, RatFun, Scalar};
use crate::dynamics::{self, critical_divisor, exceptional_set, postcritical_closure, OrbitCaps, Postcritical};
use crate::equations::{affine_coeff, eq_residual, schwarzian, GroupoidEq};
use crate::error::{Error, Result};

pub use g1::{solve_g1, G1Candidate};

pub const DEFAULT_MAX_DEN_DEGREE: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveCaps {
    /// Largest admissible degree of the ansatz denominator.
    pub max_den_degree: usize,
    /// Numerator degree allowance above the denominator degree; `None` means equal to it.
    pub extra_num_degree: Option<usize>,
    /// Pole multiplicity at each candidate point; `None` means 1 for G2 and 2 for G3.
    pub pole_mult: Option<u32>,
    pub orbit: OrbitCaps,
    /// `G1` exponents range over `±1 ..= ±n_max`.
    pub n_max: i32,
}

impl Default for SolveCaps {
    fn default() -> Self {
        SolveCaps {
            max_den_degree: DEFAULT_MAX_DEN_DEGREE,
            extra_num_degree: None,
            pole_mult: None,
            orbit: OrbitCaps::default(),
            n_max: crate::equations::DEFAULT_N_MAX,
        }
    }
}

impl SolveCaps {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Caps(format!("{what} must be at least 1")));
        if self.max_den_degree == 0 {
            return bad("max denominator degree");
        }
        if self.extra_num_degree == Some(0) {
            return bad("extra numerator degree");
        }
        if self.pole_mult == Some(0) {
            return bad("pole multiplicity");
        }
        if self.orbit.max_support == 0 || self.orbit.height_bits == 0 {
            return bad("orbit cap");
        }
        if self.n_max < 1 {
            return bad("n range");
        }
        Ok(())
    }

    fn mult(&self, order: u8) -> u32 {
        self.pole_mult.unwrap_or(if order == 2 { 1 } else { 2 })
    }
}

/// The affine space `particular + span(kernel)` of coefficients solving an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub particular: Option<RatFun>,
    pub kernel: Vec<RatFun>,
}

/// Rank of the numerators of `fs` over a common denominator.
fn span_rank(fs: &[RatFun]) -> usize {
    if fs.is_empty() {
        return 0;
    }
    let den = fs.iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()));
    let nums: Vec<Poly> = fs.iter().map(|f| f.num() * &den.exact_div(f.den())).collect();
    let width = nums.iter().map(|p| p.deg() + 1).max().unwrap_or(1);
    Matrix::from_rows(nums.iter().map(|p| (0..width).map(|k| p.coeff(k)).collect()).collect()).rank()
}

impl SolutionSpace {
    /// Equality of affine spaces, independent of the chosen particular solution and basis.
    pub fn same_space(&self, other: &SolutionSpace) -> bool {
        match (&self.particular, &other.particular) {
            (None, None) => {}
            (Some(p), Some(q)) => {
                let mut with = self.kernel.clone();
                with.push(p - q);
                if span_rank(&with) != span_rank(&self.kernel) {
                    return false;
                }
            }
            _ => return false,
        }
        let r = span_rank(&self.kernel);
        let mut both = self.kernel.clone();
        both.extend(other.kernel.iter().cloned());
        r == span_rank(&other.kernel) && r == span_rank(&both)
    }

    /// The space of the gauge-transformed equation of the given order under a Möbius `φ`.
    pub fn gauge(&self, order: u8, phi: &RatFun) -> Result<SolutionSpace> {
        let wrap = |c: RatFun| if order == 2 { GroupoidEq::G2(c) } else { GroupoidEq::G3(c) };
        let particular = match &self.particular {
            Some(p) => crate::equations::gauge_transform(&wrap(p.clone()), phi)?.coefficient().cloned(),
            None => None,
        };
        let d = phi.derive();
        let w = if order == 2 { d } else { d.pow(2) };
        let kernel = self.kernel.iter().map(|k| &k.compose(phi) * &w).collect();
        Ok(SolutionSpace { particular, kernel })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(SolutionSpace),
    NoSolution { reason: String },
}

impl SolveOutcome {
    pub fn space(&self) -> Option<&SolutionSpace> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::NoSolution { .. } => None,
        }
    }

    pub fn particular(&self) -> Option<&RatFun> {
        self.space().and_then(|s| s.particular.as_ref())
    }

    fn none(reason: impl Into<String>) -> SolveOutcome {
        SolveOutcome::NoSolution { reason: reason.into() }
    }
}

/// Candidate poles, or the reason there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidates {
    Divisor(Divisor),
    Overflow { iterations: usize, reason: String },
}

/// Where the coefficient of an equation solved by `R` may have poles: the postcritical
/// closure, the critical points, the poles of `R` and infinity. For a Möbius map the
/// fixed points replace the postcritical data.
pub fn candidate_pole_divisor(r: &RatFun, caps: &SolveCaps) -> Candidates {
    let poles = Divisor::from_poly(r.den()).union(&Divisor::infinity());
    if r.degree() <= 1 {
        let fixed = r.num() - &(r.den() * &Poly::x());
        let fixed = if fixed.is_zero() { Divisor::empty() } else { Divisor::from_poly(&fixed) };
        return Candidates::Divisor(fixed.union(&poles));
    }
    match postcritical_closure(r, caps.orbit) {
        Postcritical::Overflow { iterations, reason } => Candidates::Overflow { iterations, reason },
        Postcritical::Finite { divisor, .. } => {
            Candidates::Divisor(divisor.union(&critical_divisor(r).support()).union(&poles).support())
        }
    }
}

/// Solves `c(R) R'^w + rhs(R) - c = 0` for `c = N / d` with `deg N <= m`.
fn solve_linear(r: &RatFun, rhs: &RatFun, weight: usize, d: &Poly, m: usize, caps: &SolveCaps) -> SolveOutcome {
    let e = d.deg();
    if e > caps.max_den_degree {
        return SolveOutcome::none(format!("denominator degree {e} exceeds cap {}", caps.max_den_degree));
    }
    assert!(m + 2 * weight >= e, "numerator degree too small for the ansatz");
    let (p, q) = (r.num(), r.den());
    let (a, b) = (rhs.num(), rhs.den());
    let w = r.wronskian().pow(weight);
    let dh = d.homogeneous_eval(e, p, q);
    let t = &(&q.pow(m + 2 * weight - e) * &dh) * b;
    let wdb = &(&w * d) * b;
    let p_pows: Vec<Poly> = std::iter::successors(Some(Poly::one()), |x| Some(x * p)).take(m + 1).collect();
    let q_pows: Vec<Poly> = std::iter::successors(Some(Poly::one()), |x| Some(x * q)).take(m + 1).collect();
    let cols: Vec<Poly> = (0..=m)
        .map(|j| &(&(&p_pows[j] * &q_pows[m - j]) * &wdb) - &t.shift_up(j))
        .collect();
    let target = -&(&(&q.pow(m + 2 * weight - e) * &dh) * &(d * a));
    let rows = cols.iter().map(Poly::deg).chain([target.deg()]).max().unwrap_or(0) + 1;
    let mut mat = Matrix::zeros(rows, m + 1);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.coeffs().iter().enumerate() {
            mat.set(i, j, v.clone());
        }
    }
    let rhs_vec: Vec<Scalar> = (0..rows).map(|i| target.coeff(i)).collect();
    let Some(sol) = solve_affine(&mat, &rhs_vec) else {
        return SolveOutcome::none("no solution within caps");
    };
    let to_ratfun = |c: &[Scalar]| RatFun::new(Poly::new(c.to_vec()), d.clone());
    SolveOutcome::Solved(SolutionSpace {
        particular: Some(to_ratfun(&sol.particular)),
        kernel: sol.kernel.iter().map(|k| to_ratfun(k)).collect(),
    })
}

fn solve_order(r: &RatFun, order: u8, caps: &SolveCaps) -> SolveOutcome {
    let cand = match candidate_pole_divisor(r, caps) {
        Candidates::Divisor(d) => d,
        Candidates::Overflow { iterations, reason } => {
            return SolveOutcome::none(format!("not PCF within cap ({reason} after {iterations} iterations)"))
        }
    };
    let (rhs, weight) = if order == 2 { (affine_coeff(r), 1) } else { (schwarzian(r), 2) };
    let d = cand.finite_support_poly().pow(caps.mult(order) as usize);
    let m = d.deg() + caps.extra_num_degree.unwrap_or(d.deg());
    let out = solve_linear(r, &rhs, weight, &d, m, caps);
    if let SolveOutcome::Solved(space) = &out {
        let wrap = |c: RatFun| if order == 2 { GroupoidEq::G2(c) } else { GroupoidEq::G3(c) };
        let p = space.particular.clone().expect("solve_linear always sets a particular solution");
        assert!(eq_residual(&wrap(p.clone()), r).is_zero(), "linear solve returned a non-solution");
        for k in &space.kernel {
            assert!(eq_residual(&wrap(&p + k), r).is_zero(), "kernel element is not homogeneous");
        }
    }
    out
}

/// All `μ` with `μ(R) R' + R''/R' - μ = 0` within the caps.
pub fn solve_g2(r: &RatFun, caps: &SolveCaps) -> SolveOutcome {
    solve_order(r, 2, caps)
}

/// All `ν` with `ν(R) R'^2 + S(R) - ν = 0` within the caps.
pub fn solve_g3(r: &RatFun, caps: &SolveCaps) -> SolveOutcome {
    solve_order(r, 3, caps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyGuess {
    MonomialLike,
    ChebyshevLike,
    LattesLike,
    None,
}

impl FamilyGuess {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyGuess::MonomialLike => "monomial-like",
            FamilyGuess::ChebyshevLike => "chebyshev-like",
            FamilyGuess::LattesLike => "lattes-like",
            FamilyGuess::None => "none",
        }
    }
}

/// Structural facts behind the family guess.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub exceptional_set_size: usize,
    /// Support of the postcritical closure, when finite within caps.
    pub postcritical_support: Option<usize>,
    pub orbit_iterations: usize,
    pub overflow_reason: Option<String>,
    pub candidate_support: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nontrivial { order: u8, equation: GroupoidEq },
    TrivialWithinCaps,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Nontrivial { .. } => write!(f, "nontrivial"),
            Verdict::TrivialWithinCaps => write!(f, "trivial-within-caps"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub map: RatFun,
    pub degree: usize,
    pub caps: SolveCaps,
    /// The first strict order-one solution in the search order, if any.
    pub g1: Option<G1Candidate>,
    pub g2: SolveOutcome,
    pub g3: SolveOutcome,
    pub verdict: Verdict,
    pub family_guess: FamilyGuess,
    pub evidence: Evidence,
}

impl ClassificationReport {
    pub fn minimal_order(&self) -> Option<u8> {
        match &self.verdict {
            Verdict::Nontrivial { order, .. } => Some(*order),
            Verdict::TrivialWithinCaps => None,
        }
    }
}

/// Exponents in search order: `1, -1, 2, -2, ..`.
pub fn n_range(n_max: i32) -> impl Iterator<Item = i32> {
    (1..=n_max).flat_map(|n| [n, -n])
}

/// Runs the order-one search, then orders two and three, and reports the lowest order
/// with a strict solution. Every reported equation is re-checked by its residual.
pub fn classify(r: &RatFun, caps: &SolveCaps) -> Result<ClassificationReport> {
    caps.validate()?;
    if r.degree() < 1 {
        return Err(Error::Parameter("cannot classify a constant map".into()));
    }
    let g1 = n_range(caps.n_max).filter_map(|n| solve_g1(r, n, caps)).find(|c| c.is_strict());
    let g2 = solve_g2(r, caps);
    let g3 = solve_g3(r, caps);
    let verdict = if let Some(c) = &g1 {
        Verdict::Nontrivial { order: 1, equation: GroupoidEq::G1 { n: c.n, eta: c.eta.clone() } }
    } else if let Some(mu) = g2.particular() {
        Verdict::Nontrivial { order: 2, equation: GroupoidEq::G2(mu.clone()) }
    } else if let Some(nu) = g3.particular() {
        Verdict::Nontrivial { order: 3, equation: GroupoidEq::G3(nu.clone()) }
    } else {
        Verdict::TrivialWithinCaps
    };
    if let Verdict::Nontrivial { equation, .. } = &verdict {
        assert!(eq_residual(equation, r).is_zero(), "reported equation fails its residual check");
    }
    let (family_guess, evidence) = family_evidence(r, caps);
    Ok(ClassificationReport { map: r.clone(), degree: r.degree(), caps: *caps, g1, g2, g3, verdict, family_guess, evidence })
}

fn family_evidence(r: &RatFun, caps: &SolveCaps) -> (FamilyGuess, Evidence) {
    if r.degree() < 2 {
        let support = match candidate_pole_divisor(r, caps) {
            Candidates::Divisor(d) => Some(d.support_size()),
            Candidates::Overflow { .. } => None,
        };
        let ev = Evidence {
            exceptional_set_size: 0,
            postcritical_support: Some(0),
            orbit_iterations: 0,
            overflow_reason: None,
            candidate_support: support,
        };
        return (FamilyGuess::None, ev);
    }
    let e = exceptional_set(r);
    let pc = postcritical_closure(r, caps.orbit);
    let pc_support = pc.divisor().map(Divisor::support_size);
    let candidate_support = match candidate_pole_divisor(r, caps) {
        Candidates::Divisor(d) => Some(d.support_size()),
        Candidates::Overflow { .. } => None,
    };
    let guess = match (e.support_size(), pc_support) {
        (2, _) => FamilyGuess::MonomialLike,
        (1, Some(s)) if s <= 3 => FamilyGuess::ChebyshevLike,
        (0, Some(4)) => FamilyGuess::LattesLike,
        _ => FamilyGuess::None,
    };
    let overflow_reason = match &pc {
        Postcritical::Overflow { reason, .. } => Some(reason.clone()),
        Postcritical::Finite { .. } => None,
    };
    let ev = Evidence {
        exceptional_set_size: e.support_size(),
        postcritical_support: pc_support,
        orbit_iterations: pc.iterations(),
        overflow_reason,
        candidate_support,
    };
    (guess, ev)
}

/// Whether every critical orbit of `r` is finite within `caps`.
pub fn is_pcf_within(r: &RatFun, caps: &SolveCaps) -> bool {
    dynamics::is_pcf(r, caps.orbit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RatFun {
        RatFun::from_poly(Poly::from_ints(c))
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn g2_for_square_and_chebyshev() {
        let caps = SolveCaps::default();
        let s = solve_g2(&poly(&[0, 0, 1]), &caps);
        assert_eq!(s.particular(), Some(&rf(&[-1], &[0, 1])));
        assert!(s.space().unwrap().kernel.is_empty());
        let s = solve_g2(&poly(&[-2, 0, 1]), &caps);
        assert_eq!(s.particular(), Some(&rf(&[0, -1], &[-4, 0, 1])));
        let s = solve_g2(&poly(&[-1, 0, 2]), &caps);
        assert_eq!(s.particular(), Some(&rf(&[0, -1], &[-1, 0, 1])));
        assert!(solve_g2(&poly(&[1, 0, 1]), &caps).space().is_none());
    }

    #[test]
    fn g3_for_mobius_and_square() {
        let caps = SolveCaps::default();
        let s = solve_g3(&rf(&[1, 2], &[3, 1]), &caps);
        assert_eq!(s.particular(), Some(&RatFun::zero()));
        let s = solve_g3(&poly(&[0, 0, 1]), &caps);
        assert_eq!(s.particular(), Some(&rf(&[1], &[0, 0, 1])));
    }

    #[test]
    fn candidates() {
        let caps = SolveCaps::default();
        let Candidates::Divisor(d) = candidate_pole_divisor(&poly(&[-2, 0, 1]), &caps) else { panic!() };
        assert_eq!(d, Divisor::from_poly(&Poly::from_ints(&[0, -4, 0, 1])).union(&Divisor::infinity()));
        assert!(matches!(candidate_pole_divisor(&poly(&[1, 0, 1]), &caps), Candidates::Overflow { .. }));
    }

    #[test]
    fn caps_validation() {
        let caps = SolveCaps { max_den_degree: 0, ..SolveCaps::default() };
        assert!(matches!(classify(&poly(&[0, 0, 1]), &caps), Err(Error::Caps(_))));
    }
}
