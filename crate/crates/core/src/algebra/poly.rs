//! Dense univariate polynomials over [`Scalar`], lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modgcd;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    pub fn x() -> Poly {
        Poly::from_ints(&[0, 1])
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let mut v = vec![Scalar::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    /// `x - a`
    pub fn linear_root(a: &Scalar) -> Poly {
        Poly::new(vec![-a, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner)`
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `sum c_k p^k q^(n-k)`: the numerator of `self(p/q) * q^n` for `n >= deg self`.
    pub fn homogeneous_eval(&self, n: usize, p: &Poly, q: &Poly) -> Poly {
        assert!(self.is_zero() || self.deg() <= n, "homogenization degree too small");
        // Horner in p with q-powers interleaved: ((c_d p + c_{d-1} q) p + c_{d-2} q^2) ...
        let d = self.deg();
        let mut acc = Poly::zero();
        let mut qpow = Poly::one();
        for (j, c) in self.coeffs.iter().rev().enumerate() {
            if j > 0 {
                qpow = &qpow * q;
            }
            acc = &(&acc * p) + &qpow.scale(c);
        }
        if self.is_zero() {
            return acc;
        }
        &acc * &q.pow(n - d)
    }

    /// Euclidean division over the field.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = divisor.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Division known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        if let (Some((a, la)), Some((b, lb))) = (self.as_integer(), divisor.as_integer()) {
            // b primitive divides a over Q, so by Gauss's lemma the quotient is integral
            let content = b.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let b: Vec<BigInt> = b.iter().map(|c| c / &content).collect();
            if let Some(quot) = modgcd::exact_div(a, &b) {
                return Poly::from_integer(&quot, &(la * &content)).scale(&Scalar::from_bigint(lb));
            }
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if let (Some((a, _)), Some((b, _))) = (self.as_integer(), other.as_integer()) {
            if !self.is_zero() && !other.is_zero() {
                return Poly::from_integer(&modgcd::gcd(&a, &b), &BigInt::one()).monic();
            }
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        (&self.monic() * &other.monic()).exact_div(&self.gcd(other))
    }

    /// `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(m);
        if g.deg() != 0 || g.is_zero() {
            return None;
        }
        Some(s.rem(m))
    }

    /// Yun's squarefree decomposition: `self = lc * prod_i f_i^i` with monic, squarefree,
    /// pairwise coprime `f_i`. Returns nonconstant `(f_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while !b.is_constant() {
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g);
            c = d.exact_div(&g);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Monic squarefree part (product of distinct irreducible factors).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let f = self.monic();
        f.exact_div(&f.gcd(&f.derivative()))
    }

    /// Multiplicity of `factor` (nonconstant) in `self`.
    pub fn multiplicity_of(&self, factor: &Poly) -> u32 {
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.div_rem(factor);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// The polynomial with every coefficient replaced by its Galois conjugate.
    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    /// Largest bit length among coefficient numerators and denominators.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(Scalar::height_bits).max().unwrap_or(0)
    }

    /// Scaling by the lcm of all coefficient denominators gives coordinates in `Z[alpha]`.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }

    /// `self * L` with `L` the denominator lcm, so every coordinate is an integer.
    pub fn clear_denominators(&self) -> Poly {
        self.scale(&Scalar::from_bigint(self.denominator_lcm()))
    }

    /// Gcd of all integer coordinates of an integral polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c.re().numer());
            g = g.gcd(c.im().numer());
        }
        g
    }

    /// `(c, L)` with `self = c / L` and integer `c`, for rational coefficients.
    fn as_integer(&self) -> Option<(Vec<BigInt>, BigInt)> {
        if !self.coeffs.iter().all(Scalar::is_rational) {
            return None;
        }
        let l = self.denominator_lcm();
        Some((self.coeffs.iter().map(|c| (c.re() * &l).to_integer()).collect(), l))
    }

    fn from_integer(c: &[BigInt], den: &BigInt) -> Poly {
        Poly::new(c.iter().map(|v| Scalar::rational(BigRational::new(v.clone(), den.clone()))).collect())
    }

    /// `self(x + a)`
    pub fn taylor_shift(&self, a: &Scalar) -> Poly {
        self.compose(&Poly::new(vec![a.clone(), Scalar::one()]))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).unwrap_or(&zero);
                    let b = rhs.coeffs.get(k).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).unwrap_or(&zero);
                    let b = rhs.coeffs.get(k).unwrap_or(&zero);
                    a - b
                })
                .collect(),
        )
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let (Some((a, la)), Some((b, lb))) = (self.as_integer(), rhs.as_integer()) {
            return Poly::from_integer(&integer_mul(&a, &b), &(la * lb));
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    /// Plain expanded form, highest degree first, for diagnostics.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn yun() {
        // (x-1)^2 (x+2)^3 x
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
        assert_eq!(f.squarefree_part(), &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[0, 1]));
    }

    #[test]
    fn homogeneous() {
        // f = x^2 + 1 at p/q = x/(x+1), n = 3: x^2 (x+1) + (x+1)^3
        let f = p(&[1, 0, 1]);
        let h = f.homogeneous_eval(3, &p(&[0, 1]), &p(&[1, 1]));
        let expect = &(&p(&[0, 0, 1]) * &p(&[1, 1])) + &p(&[1, 1]).pow(3);
        assert_eq!(h, expect);
    }

    #[test]
    fn inverse_mod() {
        let m = p(&[1, 0, 1]);
        let a = p(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m), Poly::one());
    }
}

fn integer_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
