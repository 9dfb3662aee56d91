//! Complex numbers over `astro-float` binary floats, for maps whose fixed points are not
//! exact over the base field.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_rational::BigRational;

use super::scalar::Scalar;

pub const DEFAULT_PRECISION: usize = 128;
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn parse_dec(s: &str, p: usize) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc))
}

fn rational_to_float(q: &BigRational, p: usize) -> BigFloat {
    // integers are parsed with headroom so the only rounding is the final division
    let wp = p + 64;
    let n = parse_dec(&q.numer().to_string(), wp);
    let d = parse_dec(&q.denom().to_string(), wp);
    n.div(&d, p, RM)
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    with_consts(|cc| x.format(Radix::Dec, RM, cc)).ok().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

/// `re + i im` with both parts at `prec` bits.
#[derive(Clone, Debug)]
pub struct BigFloatC {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl BigFloatC {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> BigFloatC {
        assert!(prec >= MIN_PRECISION, "precision below {MIN_PRECISION} bits");
        BigFloatC { re, im, prec }
    }

    pub fn zero(prec: usize) -> BigFloatC {
        BigFloatC::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: usize) -> BigFloatC {
        BigFloatC::from_f64(1.0, 0.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> BigFloatC {
        BigFloatC::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec), prec)
    }

    /// The complex embedding of an exact scalar; `sqrt d` is taken positive (`i sqrt|d|` for `d < 0`).
    pub fn from_scalar(s: &Scalar, prec: usize) -> BigFloatC {
        let re = rational_to_float(s.re(), prec);
        let b = rational_to_float(s.im(), prec);
        match s.field().radicand() {
            None => BigFloatC::new(re, BigFloat::from_f64(0.0, prec), prec),
            Some(d) => {
                let r = BigFloat::from_i64(d.abs(), prec).sqrt(prec, RM);
                let t = b.mul(&r, prec, RM);
                if d < 0 {
                    BigFloatC::new(re, t, prec)
                } else {
                    BigFloatC::new(re.add(&t, prec, RM), BigFloat::from_f64(0.0, prec), prec)
                }
            }
        }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (float_to_f64(&self.re), float_to_f64(&self.im))
    }

    pub fn conj(&self) -> BigFloatC {
        BigFloatC { re: self.re.clone(), im: self.im.clone().neg(), prec: self.prec }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// `|z|` as an `f64`; saturates instead of overflowing.
    pub fn magnitude(&self) -> f64 {
        float_to_f64(&self.abs())
    }

    /// `log2 |z|`, or `-inf` at zero; accurate to within one unit outside the `f64` range.
    pub fn log2_magnitude(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        let v = float_to_f64(&a);
        if v.is_normal() {
            v.log2()
        } else {
            a.exponent().map_or(f64::NAN, |e| e as f64 - 0.5)
        }
    }

    pub fn exp(&self) -> BigFloatC {
        let p = self.prec;
        with_consts(|cc| {
            let r = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            BigFloatC { re: r.mul(&c, p, RM), im: r.mul(&s, p, RM), prec: p }
        })
    }

    pub fn pi(prec: usize) -> BigFloat {
        with_consts(|cc| cc.pi(prec, RM))
    }

    /// `2 pi i` at `prec` bits.
    pub fn two_pi_i(prec: usize) -> BigFloatC {
        let pi = BigFloatC::pi(prec);
        BigFloatC::new(BigFloat::from_f64(0.0, prec), pi.add(&pi, prec, RM), prec)
    }

    pub fn sqrt(&self) -> BigFloatC {
        // principal branch: sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2)
        let p = self.prec;
        let a = self.abs();
        let two = BigFloat::from_f64(2.0, p);
        let x = a.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let mut y = a.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        if self.im.is_negative() {
            y = y.neg();
        }
        BigFloatC { re: x, im: y, prec: p }
    }
}

impl PartialEq for BigFloatC {
    fn eq(&self, other: &BigFloatC) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl<'a> Add<&'a BigFloatC> for &'a BigFloatC {
    type Output = BigFloatC;
    fn add(self, rhs: &BigFloatC) -> BigFloatC {
        let p = self.prec.max(rhs.prec);
        BigFloatC { re: self.re.add(&rhs.re, p, RM), im: self.im.add(&rhs.im, p, RM), prec: p }
    }
}

impl<'a> Sub<&'a BigFloatC> for &'a BigFloatC {
    type Output = BigFloatC;
    fn sub(self, rhs: &BigFloatC) -> BigFloatC {
        let p = self.prec.max(rhs.prec);
        BigFloatC { re: self.re.sub(&rhs.re, p, RM), im: self.im.sub(&rhs.im, p, RM), prec: p }
    }
}

impl<'a> Mul<&'a BigFloatC> for &'a BigFloatC {
    type Output = BigFloatC;
    fn mul(self, rhs: &BigFloatC) -> BigFloatC {
        let p = self.prec.max(rhs.prec);
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        BigFloatC { re, im, prec: p }
    }
}

impl<'a> Div<&'a BigFloatC> for &'a BigFloatC {
    type Output = BigFloatC;
    fn div(self, rhs: &BigFloatC) -> BigFloatC {
        let p = self.prec.max(rhs.prec);
        let n = rhs.norm_sqr();
        let t = self * &rhs.conj();
        BigFloatC { re: t.re.div(&n, p, RM), im: t.im.div(&n, p, RM), prec: p }
    }
}

impl Neg for &BigFloatC {
    type Output = BigFloatC;
    fn neg(self) -> BigFloatC {
        BigFloatC { re: self.re.clone().neg(), im: self.im.clone().neg(), prec: self.prec }
    }
}

impl fmt::Display for BigFloatC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}*i", -im)
        } else {
            write!(f, "{re}+{im}*i")
        }
    }
}
