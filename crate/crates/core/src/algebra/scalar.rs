//! Exact elements of `Q`, `Q(i)` and `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Base field of a session.
///
/// `Quadratic(-1)` is never constructed; the Gaussian field is `Gauss`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Gauss,
    Quadratic(i64),
}

impl Field {
    /// `Q(sqrt d)` for a squarefree `d` other than 0 and 1.
    pub fn sqrt(d: i64) -> Result<Field, Error> {
        if d == -1 {
            return Ok(Field::Gauss);
        }
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::Field(format!("sqrt:{d} is not a squarefree integer other than 0 and 1")));
        }
        Ok(Field::Quadratic(d))
    }

    /// The square of the adjoined generator, if any.
    pub fn radicand(&self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::Gauss => Some(-1),
            Field::Quadratic(d) => Some(*d),
        }
    }

    /// Parses `rational`, `gauss` or `sqrt:<d>`.
    pub fn parse(tag: &str) -> Result<Field, Error> {
        match tag {
            "rational" | "q" => Ok(Field::Rational),
            "gauss" => Ok(Field::Gauss),
            _ => match tag.strip_prefix("sqrt:") {
                Some(d) => {
                    let d: i64 = d
                        .trim()
                        .parse()
                        .map_err(|_| Error::Field(format!("bad radicand in field tag `{tag}`")))?;
                    Field::sqrt(d)
                }
                None => Err(Error::Field(format!("unknown field `{tag}`"))),
            },
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "rational".to_string(),
            Field::Gauss => "gauss".to_string(),
            Field::Quadratic(d) => format!("sqrt:{d}"),
        }
    }

    fn join(self, other: Field) -> Field {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => f,
            (a, b) if a == b => a,
            (a, b) => panic!("mixed quadratic fields {a:?} and {b:?}"),
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `re + im * alpha` with `alpha^2` the radicand of `field`.
///
/// When `im` is zero the field tag is irrelevant for equality.
#[derive(Clone, Debug)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
    field: Field,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational, field: Field) -> Scalar {
        if !im.is_zero() {
            assert!(field != Field::Rational, "irrational part over the rationals");
        }
        Scalar { re, im, field }
    }

    pub fn rational(q: BigRational) -> Scalar {
        Scalar { re: q, im: BigRational::zero(), field: Field::Rational }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The adjoined generator of `field` (`i` for the Gaussian field).
    pub fn generator(field: Field) -> Scalar {
        assert!(field != Field::Rational, "the rationals have no generator");
        Scalar { re: BigRational::zero(), im: BigRational::one(), field }
    }

    pub fn zero() -> Scalar {
        Scalar::from_int(0)
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Galois conjugate `re - im * alpha`.
    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone(), field: self.field }
    }

    /// Field norm `re^2 - d im^2`.
    pub fn norm(&self) -> BigRational {
        match self.field.radicand() {
            None => &self.re * &self.re,
            Some(d) => &self.re * &self.re - BigRational::from_integer(BigInt::from(d)) * &self.im * &self.im,
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return Scalar { re: self.re.recip(), im: BigRational::zero(), field: self.field };
        }
        let n = self.norm();
        Scalar { re: &self.re / &n, im: -(&self.im / &n), field: self.field }
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e as u64;
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

    /// Lowest common denominator of both rational coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Bit length of the largest numerator or denominator.
    pub fn height_bits(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|n| n.bits())
            .max()
            .unwrap_or(0)
    }

    /// Lexicographic order on `(re, im)`, used only for deterministic output.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// Exact sign of a rational scalar.
    pub fn rational_signum(&self) -> Option<i32> {
        if !self.im.is_zero() {
            return None;
        }
        Some(if self.re.is_zero() {
            0
        } else if self.re.is_positive() {
            1
        } else {
            -1
        })
    }

    /// A value in the same field with the given rational coordinates.
    pub fn with_field(re: BigRational, im: BigRational, like: Field) -> Scalar {
        if im.is_zero() {
            Scalar { re, im, field: like }
        } else {
            Scalar::new(re, im, like)
        }
    }

    /// Approximate `(re, im)` of the complex embedding, for display and heuristics.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        match self.field.radicand() {
            None => (re, 0.0),
            Some(d) if d < 0 => (re, im * ((-d) as f64).sqrt()),
            Some(d) => (re + im * (d as f64).sqrt(), 0.0),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.re == other.re && self.im == other.im && (self.im.is_zero() || self.field == other.field)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.hash(state);
        self.im.hash(state);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Scalar {
        Scalar::rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im, field: self.field.join(rhs.field) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im, field: self.field.join(rhs.field) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let field = self.field.join(rhs.field);
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { re: &self.re * &rhs.re, im: BigRational::zero(), field };
        }
        let d = BigRational::from_integer(BigInt::from(field.radicand().unwrap_or(0)));
        Scalar {
            re: &self.re * &rhs.re + d * &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
            field,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.im.is_zero() {
            assert!(!rhs.re.is_zero(), "division by zero scalar");
            return Scalar { re: &self.re / &rhs.re, im: &self.im / &rhs.re, field: self.field.join(rhs.field) };
        }
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone(), field: self.field }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn generator_symbol(field: Field) -> String {
    match field {
        Field::Gauss => "i".to_string(),
        Field::Quadratic(d) => format!("sqrt({d})"),
        Field::Rational => unreachable!(),
    }
}

impl fmt::Display for Scalar {
    /// Parser-compatible form: `3/2`, `i`, `1/2+3*i`, `-sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let g = generator_symbol(self.field);
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        } else if self.im.is_negative() {
            write!(f, "-")?;
        }
        let a = self.im.abs();
        if a.is_one() {
            write!(f, "{g}")
        } else {
            fmt_rational(&a, f)?;
            write!(f, "*{g}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = Scalar::generator(Field::Gauss);
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = &Scalar::from_int(3) + &(&Scalar::from_int(4) * &i);
        assert_eq!(z.norm(), BigRational::from_integer(25.into()));
        assert_eq!(&z * &z.inv(), Scalar::one());
    }

    #[test]
    fn sqrt_three() {
        let f = Field::sqrt(3).unwrap();
        let s = Scalar::generator(f);
        assert_eq!(&s * &s, Scalar::from_int(3));
        assert_eq!((&Scalar::one() + &s).inv(), &(&s - &Scalar::one()) / &Scalar::from_int(2));
    }

    #[test]
    fn field_tags() {
        assert_eq!(Field::parse("gauss").unwrap(), Field::Gauss);
        assert_eq!(Field::parse("sqrt:-1").unwrap(), Field::Gauss);
        assert_eq!(Field::parse("sqrt:5").unwrap(), Field::Quadratic(5));
        assert!(Field::parse("sqrt:4").is_err());
        assert!(Field::parse("sqrt:1").is_err());
        assert!(Field::parse("reals").is_err());
    }

    #[test]
    fn display() {
        let i = Scalar::generator(Field::Gauss);
        assert_eq!(Scalar::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!((&Scalar::ratio(1, 2) - &(&Scalar::from_int(3) * &i)).to_string(), "1/2-3*i");
        assert_eq!((-&i).to_string(), "-i");
    }

    #[test]
    fn rational_equality_ignores_tag() {
        let a = Scalar::with_field(BigRational::one(), BigRational::zero(), Field::Gauss);
        assert_eq!(a, Scalar::one());
    }
}
