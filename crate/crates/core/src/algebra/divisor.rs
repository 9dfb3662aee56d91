//! Galois-stable finite point sets on the projective line, stored as squarefree
//! polynomial factors plus a multiplicity at infinity. Roots are never computed.

use super::linalg::Matrix;
use super::poly::Poly;
use super::ratfun::{PointP1, RatFun};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sylvester resultant with `Res(x - a, x - b) = a - b`, via the subresultant
/// pseudo-remainder sequence.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Scalar> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = Scalar::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return Ok(&sign * &b.lc().pow(a.deg() as i64));
    }
    let mut g = Scalar::one();
    let mut h = Scalar::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let prem = a.scale(&b.lc().pow(delta as i64 + 1)).rem(&b);
        a = b;
        if prem.is_zero() {
            return Ok(Scalar::zero());
        }
        b = prem.scale(&(&g * &h.pow(delta as i64)).inv());
        g = a.lc();
        h = &h.pow(1 - delta as i64) * &g.pow(delta as i64);
        if b.deg() == 0 {
            let da = a.deg() as i64;
            let h_final = &h.pow(1 - da) * &b.lc().pow(da);
            return Ok(&sign * &h_final);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    factors: Vec<(Poly, u32)>,
    inf_mult: u32,
}

impl Divisor {
    pub fn empty() -> Divisor {
        Divisor::default()
    }

    pub fn infinity() -> Divisor {
        Divisor { factors: Vec::new(), inf_mult: 1 }
    }

    /// Builds a divisor from arbitrary nonzero polynomials (their roots, with
    /// multiplicity) and a multiplicity at infinity, refining to a coprime base.
    pub fn from_parts(polys: impl IntoIterator<Item = (Poly, u32)>, inf_mult: u32) -> Divisor {
        let mut d = Divisor { factors: Vec::new(), inf_mult };
        for (p, m) in polys {
            for (f, k) in p.squarefree_decomposition() {
                d.insert(f, k * m);
            }
        }
        d.sort();
        d
    }

    /// The roots of `p` (each once).
    pub fn from_poly(p: &Poly) -> Divisor {
        Divisor::from_parts([(p.squarefree_part(), 1)], 0)
    }

    pub fn from_point(p: &PointP1) -> Divisor {
        match p {
            PointP1::Finite(a) => Divisor::from_poly(&Poly::linear_root(a)),
            PointP1::Infinity => Divisor::infinity(),
        }
    }

    pub fn from_points(points: &[PointP1]) -> Divisor {
        points.iter().fold(Divisor::empty(), |acc, p| acc.union(&Divisor::from_point(p)))
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn inf_mult(&self) -> u32 {
        self.inf_mult
    }

    pub fn contains_infinity(&self) -> bool {
        self.inf_mult > 0
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty() && self.inf_mult == 0
    }

    pub fn support_size(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.deg()).sum::<usize>() + usize::from(self.inf_mult > 0)
    }

    /// Sum of multiplicities over the support.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(f, m)| f.deg() as u64 * *m as u64).sum::<u64>() + self.inf_mult as u64
    }

    /// Monic squarefree polynomial vanishing exactly on the finite support.
    pub fn finite_support_poly(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f)
    }

    /// `prod f^m` over the finite factors.
    pub fn finite_poly_with_multiplicity(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (f, m)| &acc * &f.pow(*m as usize))
    }

    pub fn contains_point(&self, p: &PointP1) -> bool {
        match p {
            PointP1::Infinity => self.inf_mult > 0,
            PointP1::Finite(a) => self.factors.iter().any(|(f, _)| f.eval(a).is_zero()),
        }
    }

    pub fn height_bits(&self) -> u64 {
        self.factors.iter().map(|(f, _)| f.height_bits()).max().unwrap_or(0)
    }

    /// Canonical form: one factor per multiplicity (the product of all coprime factors
    /// sharing it), ordered by multiplicity. Equal divisors then compare equal.
    fn sort(&mut self) {
        let mut by_mult: std::collections::BTreeMap<u32, Poly> = std::collections::BTreeMap::new();
        for (f, m) in std::mem::take(&mut self.factors) {
            let e = by_mult.entry(m).or_insert_with(Poly::one);
            *e = &*e * &f;
        }
        self.factors = by_mult.into_iter().map(|(m, f)| (f, m)).collect();
    }

    /// Inserts a monic squarefree `g` with multiplicity `m`, keeping factors pairwise
    /// coprime; overlapping parts take the larger multiplicity.
    fn insert(&mut self, g: Poly, m: u32) {
        let mut g = g.monic();
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        for (f, mf) in std::mem::take(&mut self.factors) {
            if g.is_constant() {
                out.push((f, mf));
                continue;
            }
            let d = f.gcd(&g);
            if d.is_constant() {
                out.push((f, mf));
                continue;
            }
            let rest = f.exact_div(&d);
            if !rest.is_constant() {
                out.push((rest, mf));
            }
            out.push((d.clone(), mf.max(m)));
            g = g.exact_div(&d);
        }
        if !g.is_constant() {
            out.push((g, m));
        }
        self.factors = out;
    }

    /// Support union; multiplicities combine by maximum.
    pub fn union(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (f, m) in &other.factors {
            d.insert(f.clone(), *m);
        }
        d.inf_mult = d.inf_mult.max(other.inf_mult);
        d.sort();
        d
    }

    /// Same support with every multiplicity set to one.
    pub fn support(&self) -> Divisor {
        let mut d = Divisor {
            factors: self.factors.iter().map(|(f, _)| (f.clone(), 1)).collect(),
            inf_mult: u32::from(self.inf_mult > 0),
        };
        d.sort();
        d
    }

    /// Support containment.
    pub fn is_subset_of(&self, other: &Divisor) -> bool {
        if self.inf_mult > 0 && other.inf_mult == 0 {
            return false;
        }
        let big = other.finite_support_poly();
        self.factors.iter().all(|(f, _)| f.divides(&big))
    }

    /// Support intersection.
    pub fn intersection(&self, other: &Divisor) -> Divisor {
        let big = other.finite_support_poly();
        let parts = self.factors.iter().map(|(f, m)| (f.gcd(&big), *m)).filter(|(g, _)| !g.is_constant());
        Divisor::from_parts(parts.collect::<Vec<_>>(), u32::from(self.inf_mult > 0 && other.inf_mult > 0))
    }

    /// Support of `self` minus the support of `other`.
    pub fn difference(&self, other: &Divisor) -> Divisor {
        let big = other.finite_support_poly();
        let parts = self.factors.iter().filter_map(|(f, m)| {
            let rest = f.exact_div(&f.gcd(&big));
            (!rest.is_constant()).then_some((rest, *m))
        });
        Divisor::from_parts(parts.collect::<Vec<_>>(), if other.inf_mult > 0 { 0 } else { self.inf_mult })
    }

    /// Divisor of one factor, keeping its multiplicity.
    pub fn single_factor(f: &Poly, m: u32) -> Divisor {
        Divisor { factors: vec![(f.monic(), m)], inf_mult: 0 }
    }

    /// `R(support)`, with multiplicity one.
    pub fn pushforward(&self, r: &RatFun) -> Divisor {
        let mut out = Divisor::empty();
        if self.inf_mult > 0 {
            out = out.union(&Divisor::from_point(&r.eval(&PointP1::Infinity)));
        }
        for (f, _) in &self.factors {
            out = out.union(&image_of_factor(f, r));
        }
        out
    }

    /// `R^{-1}(support)`, with multiplicity one.
    pub fn pullback(&self, r: &RatFun) -> Divisor {
        let n = r.num();
        let q = r.den();
        let mut parts: Vec<(Poly, u32)> = Vec::new();
        let mut inf = false;
        for (f, _) in &self.factors {
            let pre = f.homogeneous_eval(f.deg(), n, q);
            if !pre.is_constant() {
                parts.push((pre, 1));
            }
        }
        if self.inf_mult > 0 && !q.is_constant() {
            parts.push((q.clone(), 1));
        }
        if let PointP1::Finite(v) = r.eval(&PointP1::Infinity) {
            if self.contains_point(&PointP1::Finite(v)) {
                inf = true;
            }
        } else if self.inf_mult > 0 {
            inf = true;
        }
        Divisor::from_parts(parts, u32::from(inf)).support()
    }
}

/// Image of the roots of a squarefree `f` under `R = P/Q`: the roots of the
/// characteristic polynomial of multiplication by `R(x)` in `K[x]/(f)`, which is the
/// resultant `Res_x(f, yQ - P)` up to a constant.
fn image_of_factor(f: &Poly, r: &RatFun) -> Divisor {
    let q = r.den();
    let at_poles = f.gcd(q);
    let finite = f.exact_div(&at_poles);
    let out = if at_poles.is_constant() { Divisor::empty() } else { Divisor::infinity() };
    if finite.is_constant() {
        return out;
    }
    let q_inv = q.rem(&finite).inverse_mod(&finite).expect("coprime by construction");
    let value = (&r.num().rem(&finite) * &q_inv).rem(&finite);
    let m = finite.deg();
    let mut mat = Matrix::zeros(m, m);
    let mut col = value;
    for j in 0..m {
        for i in 0..m {
            mat.set(i, j, col.coeff(i));
        }
        col = (&col * &Poly::x()).rem(&finite);
    }
    out.union(&Divisor::from_poly(&mat.charpoly()))
}
