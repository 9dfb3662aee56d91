//! Rational expressions in `x` over a number field.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' exponent)?
//! atom  := integer | 'x' | 'i' | 'sqrt' '(' ['-'] integer ')' | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use crate::algebra::{Field, RatFun, Scalar};
use crate::error::{Error, Result};

/// Exponents beyond this magnitude are rejected rather than expanded.
pub const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    I,
    Sqrt,
    Op(char),
    Open,
    Close,
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: Field,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (at, c) = chars[k];
        match c {
            c if c.is_whitespace() => k += 1,
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().map(|c| c.1).collect();
                out.push((Tok::Int(digits.parse().expect("digits")), at));
            }
            'x' => {
                out.push((Tok::X, at));
                k += 1;
            }
            'i' => {
                out.push((Tok::I, at));
                k += 1;
            }
            's' => {
                let word: String = chars[k..].iter().take(4).map(|c| c.1).collect();
                if word != "sqrt" {
                    return Err(syntax(at, "unknown identifier"));
                }
                out.push((Tok::Sqrt, at));
                k += 4;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push((Tok::Op(c), at));
                k += 1;
            }
            '(' => {
                out.push((Tok::Open, at));
                k += 1;
            }
            ')' => {
                out.push((Tok::Close, at));
                k += 1;
            }
            _ => return Err(syntax(at, format!("unexpected character {c:?}"))),
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.at(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            let at = self.at();
            self.bump();
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                if rhs.is_zero() {
                    return Err(Error::Syntax { position: at, message: "division by zero".into() });
                }
                &acc / &rhs
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let negative = matches!(self.peek(), Tok::Op('-'));
        if negative {
            self.bump();
        }
        match self.bump() {
            Tok::Int(n) => Ok(if negative { -n } else { n }),
            _ => Err(syntax(self.toks[self.pos.saturating_sub(1)].1, "expected an integer")),
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.at();
        let e = if *self.peek() == Tok::Open {
            self.bump();
            let e = self.signed_int()?;
            self.expect(Tok::Close, "`)`")?;
            e
        } else {
            self.signed_int()?
        };
        let e: i64 = i64::try_from(&e).ok().filter(|e| e.abs() <= MAX_EXPONENT).ok_or_else(|| {
            syntax(at, format!("exponent exceeds {MAX_EXPONENT} in magnitude"))
        })?;
        if e < 0 && base.is_zero() {
            return Err(syntax(at, "division by zero"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<RatFun> {
        let at = self.at();
        match self.bump() {
            Tok::Int(n) => Ok(RatFun::constant(Scalar::from_bigint(n))),
            Tok::X => Ok(RatFun::x()),
            Tok::I => {
                if self.field != Field::Gauss {
                    return Err(Error::Field(format!("`i` at position {at} needs the gauss field")));
                }
                Ok(RatFun::constant(Scalar::generator(Field::Gauss)))
            }
            Tok::Sqrt => {
                self.expect(Tok::Open, "`(` after sqrt")?;
                let d = self.signed_int()?;
                self.expect(Tok::Close, "`)`")?;
                let d: i64 = i64::try_from(&d).map_err(|_| syntax(at, "radicand out of range"))?;
                if self.field.radicand() != Some(d) {
                    return Err(Error::Field(format!("sqrt({d}) at position {at} is not in the session field")));
                }
                Ok(RatFun::constant(Scalar::generator(self.field)))
            }
            Tok::Open => {
                let e = self.expr()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(e)
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            t => Err(syntax(at, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Op(c) => format!("`{c}`"),
        Tok::Close => "`)`".into(),
        _ => "token".into(),
    }
}

/// Parses `src` as a rational function over `field`. Positions in errors are byte offsets.
pub fn parse_ratfun(src: &str, field: Field) -> Result<RatFun> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, field };
    let r = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.at(), "trailing input"));
    }
    Ok(r)
}

/// Parses a constant expression, such as a point or a jet coordinate.
pub fn parse_scalar(src: &str, field: Field) -> Result<Scalar> {
    parse_ratfun(src, field)?
        .constant_value()
        .ok_or_else(|| syntax(0, "expected a constant, found an expression in x"))
}
