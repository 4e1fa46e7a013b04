//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' index | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. xn`. Printing goes highest graded-lex term first and
//! is the canonical form: `parse(print(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly> {
    let mut parser = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        nvars,
        len: text.len(),
    };
    if parser.chars.is_empty() {
        return Err(parser.error("empty polynomial"));
    }
    let p = parser.expr()?;
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.len)
            + 1
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            column: self.column(),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let value = if self.eat('/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Poly::constant(self.nvars, value))
            }
            Some('x') => {
                self.pos += 1;
                let col = self.column();
                let idx = self.integer()?;
                let idx: usize = idx.try_into().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.nvars {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("variable x{idx} outside x1..x{}", self.nvars),
                    });
                }
                Ok(Poly::var(self.nvars, idx - 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational, first: bool) -> fmt::Result {
    let negative = c.is_negative();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let abs = c.abs();
    if m.is_one() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{abs}*{m}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            write_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn grammar_sample() {
        let p = parse_poly("3/2*x1^2*x2 - x3 + 7", 3).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.coefficient(&Monomial::from_exponents(&[2, 1, 0])),
            rat(3, 2)
        );
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3 + 7");
    }

    #[test]
    fn power_binds_tighter_than_product() {
        let a = parse_poly("2*x1^2", 1).unwrap();
        assert_eq!(a.to_string(), "2*x1^2");
        let b = parse_poly("(x1+1)^2", 1).unwrap();
        assert_eq!(b.to_string(), "x1^2 + 2*x1 + 1");
    }

    #[test]
    fn printing_order_and_signs() {
        let p = parse_poly("x2 - x1^2 - 1/3", 2).unwrap();
        assert_eq!(p.to_string(), "-x1^2 + x2 - 1/3");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn errors_carry_columns() {
        match parse_poly("x1 + x4", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x1 +", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x1 ? x2", 2), Err(Error::Parse { .. })));
    }
}
