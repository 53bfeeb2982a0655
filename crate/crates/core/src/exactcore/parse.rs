//! Text grammar for polynomials.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' uint]
//! primary := uint ['/' uint] | 'x' uint | 'm[' uint (',' uint)* ']' | '(' expr ')'
//! ```
//!
//! `x1..xN` are the coordinates and `m[2,1]` is the monomial-symmetric
//! polynomial of that partition. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::{ExactScalar, MultiPoly};
use super::symmetric::{monomial_symmetric, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            Some(c) => format!("'{}'", *c as char),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.to_string(),
            found: self.found(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("'{}'", c as char)))
        }
    }

    fn uint(&mut self, what: &str) -> Result<(usize, BigInt), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(what));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok((start, digits.parse().unwrap()))
    }

    fn small_uint(&mut self, what: &str) -> Result<(usize, u32), ParseError> {
        let (at, v) = self.uint(what)?;
        let v = u32::try_from(v).map_err(|_| ParseError {
            position: at,
            expected: format!("{what} that fits in 32 bits"),
            found: "a larger integer".to_string(),
        })?;
        Ok((at, v))
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = MultiPoly::zero(self.num_vars);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let (_, k) = self.small_uint("an exponent")?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (_, numer) = self.uint("an integer")?;
                let mut denom = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let (at, d) = self.uint("a denominator")?;
                    if d.is_zero() {
                        return Err(ParseError {
                            position: at,
                            expected: "a nonzero denominator".to_string(),
                            found: "0".to_string(),
                        });
                    }
                    denom = d;
                }
                Ok(MultiPoly::constant(
                    self.num_vars,
                    ExactScalar::new(numer, denom),
                ))
            }
            Some(b'x') => {
                self.pos += 1;
                let (at, i) = self.small_uint("a variable index")?;
                if i == 0 || i as usize > self.num_vars {
                    return Err(ParseError {
                        position: at,
                        expected: format!("a variable index in 1..={}", self.num_vars),
                        found: i.to_string(),
                    });
                }
                Ok(MultiPoly::variable(self.num_vars, i as usize - 1).unwrap())
            }
            Some(b'm') => {
                let at = self.pos;
                self.pos += 1;
                self.expect(b'[')?;
                let mut parts = vec![self.small_uint("a partition part")?.1];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.small_uint("a partition part")?.1);
                }
                self.expect(b']')?;
                let partition = Partition::new(parts);
                if partition.len() > self.num_vars {
                    return Err(ParseError {
                        position: at,
                        expected: format!("a partition with at most {} parts", self.num_vars),
                        found: partition.to_string(),
                    });
                }
                Ok(monomial_symmetric(self.num_vars, &partition))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            _ => Err(self.error("a number, variable, m[..] or '('")),
        }
    }
}

/// Parses a polynomial in `num_vars` variables.
pub fn parse_poly(text: &str, num_vars: usize) -> Result<MultiPoly, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    let p = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error("'+', '-', '*' or end of input"));
    }
    Ok(p)
}

/// Parses an exact rational `p`, `-p`, or `p/q`.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ParseError> {
    let trimmed = text.trim();
    let bad = |expected: &str| ParseError {
        position: 0,
        expected: expected.to_string(),
        found: format!("'{trimmed}'"),
    };
    let (neg, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(bad("a rational of the form p or p/q"));
    }
    let n: BigInt = n.parse().unwrap();
    let d: BigInt = d.parse().unwrap();
    if d.is_zero() {
        return Err(bad("a nonzero denominator"));
    }
    let v = ExactScalar::new(n, d);
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{integer, rational};

    #[test]
    fn terms_and_rationals() {
        let p = parse_poly(" 3/2*x1^2*x2 - x2 + 4 ", 2).unwrap();
        assert_eq!(p.coefficient(&[2, 1]), rational(3, 2));
        assert_eq!(p.coefficient(&[0, 1]), integer(-1));
        assert_eq!(p.coefficient(&[0, 0]), integer(4));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn symmetric_shorthand_and_grouping() {
        let a = parse_poly("m[2] - 3*m[1]^2", 2).unwrap();
        let b = parse_poly("x1^2 + x2^2 - 3*(x1 + x2)^2", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("m[1,2]", 3).unwrap(), parse_poly("m[2,1]", 3).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_poly("x1 + * x2", 2).unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_poly("x3", 2).unwrap_err();
        assert_eq!(e.position, 1);
        assert!(e.expected.contains("1..=2"));
        let e = parse_poly("x1 x2", 2).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("m[1,1,1]", 2).is_err());
        assert!(parse_poly("(x1", 2).unwrap_err().found.contains("end of input"));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("7/3").unwrap(), rational(7, 3));
        assert_eq!(parse_scalar("-1/2").unwrap(), rational(-1, 2));
        assert_eq!(parse_scalar("2").unwrap(), integer(2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("0.5").is_err());
    }
}
