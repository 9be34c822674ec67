//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := natural ('/' natural)? | 'u' digits | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. There is no implicit
//! multiplication, so `u1 u2` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable u{index} at position {pos} is out of range 1..={nvars}")]
    VariableOutOfRange { pos: usize, index: usize, nvars: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

/// Parses `text` as a polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a rational literal `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars: 0 };
    p.skip_ws();
    let neg = p.eat(b'-');
    if !neg {
        p.eat(b'+');
    }
    p.skip_ws();
    let r = p.rational()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(if neg { -r } else { r })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 =
                digits.parse().map_err(|_| ParseError::Syntax { pos: start, msg: "exponent too large".into() })?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b'u') => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected variable index after 'u'"));
                }
                let index: usize = digits.parse().unwrap_or(usize::MAX);
                if index == 0 || index > self.nvars {
                    return Err(ParseError::VariableOutOfRange { pos: start, index, nvars: self.nvars });
                }
                Ok(Poly::var(self.nvars, index - 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.nvars, self.rational()?)),
            Some(_) => Err(self.error("expected a number, a variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits();
        if num.is_empty() {
            return Err(self.error("expected a number"));
        }
        let num: BigInt = num.parse().expect("digit string");
        if self.eat(b'/') {
            self.skip_ws();
            let pos = self.pos;
            let den = self.digits();
            if den.is_empty() {
                return Err(self.error("expected denominator"));
            }
            let den: BigInt = den.parse().expect("digit string");
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator { pos });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn parses_simple() {
        let p = parse_poly("u1 - 1/2", 1).unwrap();
        assert_eq!(p, &Poly::var(1, 0) - &Poly::constant(1, rat(1, 2)));
    }

    #[test]
    fn parses_example_cubic() {
        let f = parse_poly("(u2+u3)^2 - (u1^3 - u1 + 1)", 3).unwrap();
        assert_eq!(f.to_string(), "-u1^3 + u1 + u2^2 + 2*u2*u3 + u3^2 - 1");
    }

    #[test]
    fn rejects_juxtaposition() {
        assert!(matches!(parse_poly("u1 u2", 2), Err(ParseError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn rejects_bad_variables() {
        assert!(matches!(parse_poly("u3", 2), Err(ParseError::VariableOutOfRange { index: 3, .. })));
        assert!(matches!(parse_poly("u0", 2), Err(ParseError::VariableOutOfRange { index: 0, .. })));
        assert!(parse_poly("u", 2).is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "(u1", "u1 +", "1/0", "u1^", "u1 ** 2", "2 3", "u1)"] {
            assert!(parse_poly(bad, 2).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn leading_sign_and_whitespace() {
        assert_eq!(parse_poly(" - u1 + 1", 1).unwrap().to_string(), "-u1 + 1");
        assert_eq!(parse_poly("+3", 1).unwrap(), Poly::constant(1, int(3)));
        assert_eq!(parse_poly("(-u1)^2", 1).unwrap().to_string(), "u1^2");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1.5").is_err());
    }
}
