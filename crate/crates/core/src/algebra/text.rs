//! Parser for the canonical text form written by the `Display` impls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::{Exps, LaurentPoly, VAR_NAMES};
use super::ratfun::RationalFunction;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        if self.i < self.s.len() && self.s[self.i] == b'-' {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        txt.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("expected integer at offset {}", start)))
    }

    fn term(&mut self) -> Result<(Exps, BigRational)> {
        let mut coef = BigRational::one();
        let mut e = Exps::ZERO;
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.int()?;
                    let d = if self.eat(b'/') { self.int()? } else { BigInt::one() };
                    coef *= BigRational::new(n, d);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = (c as char).to_string();
                    let v = VAR_NAMES
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {}", name)))?;
                    self.i += 1;
                    let k = if self.eat(b'^') {
                        i32::try_from(self.int()?).map_err(|_| Error::Parse("exponent".into()))?
                    } else {
                        1
                    };
                    e.0[v] += k;
                }
                _ if first => return Err(Error::Parse(format!("expected term at offset {}", self.i))),
                _ => break,
            }
            first = false;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((e, coef))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let (e, c) = self.term()?;
            p.add_term(e, c * BigRational::from_integer(sign.into()));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(p)
    }
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let mut c = Cursor { s: s.as_bytes(), i: 0 };
    let p = c.poly()?;
    if c.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    Ok(p)
}

/// Accepts `poly` or `(poly)/(poly)`; the result is normalized.
pub fn parse_rf(s: &str) -> Result<RationalFunction> {
    let mut c = Cursor { s: s.as_bytes(), i: 0 };
    let rf = if c.eat(b'(') {
        let n = c.poly()?;
        if !c.eat(b')') {
            return Err(Error::Parse("expected ')'".into()));
        }
        if c.eat(b'/') {
            if !c.eat(b'(') {
                return Err(Error::Parse("expected '('".into()));
            }
            let d = c.poly()?;
            if !c.eat(b')') {
                return Err(Error::Parse("expected ')'".into()));
            }
            RationalFunction::new(n, d)?
        } else {
            RationalFunction::from_poly(n)
        }
    } else {
        RationalFunction::from_poly(c.poly()?)
    };
    if c.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    Ok(rf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_polynomial() {
        for s in ["0", "1", "-3/2*t^2*X^-1*K + 7", "X^2 - 1", "-t^3*X - K + 1/5"] {
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn round_trip_rational_function() {
        let s = "(t*X^2 - 1)/(X - 1/3)";
        let f = parse_rf(s).unwrap();
        assert_eq!(parse_rf(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("t^").is_err());
        assert!(parse_poly("y + 1").is_err());
        assert!(parse_rf("(X)/(0)").is_err());
    }
}
