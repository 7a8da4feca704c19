//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nonneg-int)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant. A leading sign is accepted so that every
//! printed polynomial parses back.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Arc<[String]>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &[String]) -> Self {
        Parser { src: text.as_bytes(), pos: 0, vars: Arc::from(vars.to_vec()) }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
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

    fn zero(&self) -> Polynomial {
        Polynomial::from_parts(self.vars.clone(), Default::default())
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    /// True when the next non-blank characters are `/` followed by a digit.
    fn slash_then_digit(&mut self) -> bool {
        if self.peek() != Some(b'/') {
            return false;
        }
        let mut i = self.pos + 1;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        i < self.src.len() && self.src[i].is_ascii_digit()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.zero();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                pos: at,
                msg: "exponent out of range".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from_integer(n);
                if self.slash_then_digit() {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(Polynomial::constant(value).realign(&self.vars).expect("constant"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let Some(idx) = self.vars.iter().position(|v| v == name) else {
                    return Err(Error::UnknownVariable(name.to_string()));
                };
                let mut exps = vec![0u32; self.vars.len()];
                exps[idx] = 1;
                Ok(Polynomial::from_terms(&self.vars, [(exps, Rational::from_integer(1.into()))]))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

/// Parses an expression over `vars` into its expanded canonical polynomial.
/// The result carries exactly `vars` as its variable list.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Polynomial> {
    let mut p = Parser::new(text, vars);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `num` or `num / den`. Everything left of a top-level `/` is the
/// numerator; the denominator is a single factor, usually parenthesized.
pub fn parse_fraction_parts(text: &str, vars: &[String]) -> Result<(Polynomial, Polynomial)> {
    let mut p = Parser::new(text, vars);
    let num = p.expr()?;
    let den = if p.eat(b'/') {
        p.factor()?
    } else {
        Polynomial::one().realign(&p.vars).expect("constant")
    };
    p.finish()?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Vec<String> {
        vec!["z".to_string()]
    }

    #[test]
    fn examples() {
        assert!(parse_poly("z^2 - z^2", &z()).unwrap().is_zero());
        assert_eq!(parse_poly("1/2*z + 1/2*z", &z()).unwrap(), Polynomial::var("z"));
        assert_eq!(
            parse_poly("(1+2*z)*(1+z+z^2)", &z()).unwrap(),
            parse_poly("1 + 3*z + 3*z^2 + 2*z^3", &z()).unwrap()
        );
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x + 1", &z()), Err(Error::UnknownVariable("x".into())));
        assert!(matches!(parse_poly("1 + ", &z()), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("(1 + z", &z()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("z^-1", &z()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &z()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("z z", &z()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn fractions() {
        let (n, d) = parse_fraction_parts("(1-z^3)/(1-z^2)", &z()).unwrap();
        assert_eq!(n, parse_poly("1 - z^3", &z()).unwrap());
        assert_eq!(d, parse_poly("1 - z^2", &z()).unwrap());
        let (n, d) = parse_fraction_parts("1/2*z", &z()).unwrap();
        assert_eq!(n.to_string(), "1/2*z");
        assert!(d.is_one());
        let (n, d) = parse_fraction_parts("1/(1 - z)", &z()).unwrap();
        assert!(n.is_one());
        assert_eq!(d.to_string(), "1 - z");
        assert_eq!(parse_fraction_parts("z/0", &z()), Err(Error::DivisionByZero));
    }
}
