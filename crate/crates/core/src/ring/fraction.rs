//! Elements of the fraction field.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::Scalar;
use crate::poly::{gcd_univariate, parse_fraction_parts, Polynomial};

/// `num / den` with `den ≠ 0`.
///
/// When both parts use at most one variable the fraction is kept in lowest
/// terms with a monic denominator. Otherwise it is stored as given, except
/// that one part is cancelled when it divides the other exactly.
#[derive(Clone)]
pub struct Fraction {
    num: Polynomial,
    den: Polynomial,
}

fn univariate_pair(a: &Polynomial, b: &Polynomial) -> bool {
    let mut used = a.used_vars();
    for v in b.used_vars() {
        if !used.contains(&v) {
            used.push(v);
        }
    }
    used.len() <= 1
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Fraction { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// Parses `num` or `num / den` over `vars`.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        let (n, d) = parse_fraction_parts(text, vars)?;
        Fraction::new(n, d)
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Fraction { num, den: Polynomial::one() };
        }
        if univariate_pair(&num, &den) {
            let g = gcd_univariate(&num, &den).expect("univariate, not both zero");
            let (mut n, mut d) = if g.is_one() {
                (num, den)
            } else {
                (num.divide_exact(&g).expect("gcd divides"), den.divide_exact(&g).expect("gcd divides"))
            };
            let lc = d.monic_lex();
            if lc != d {
                let k = d.terms().next_back().map(|(_, c)| c.clone()).expect("nonzero");
                n = n.scale(&k.recip());
                d = lc;
            }
            return Fraction { num: n, den: d };
        }
        if let Ok(q) = num.divide_exact(&den) {
            return Fraction { num: q, den: Polynomial::one() };
        }
        if let Ok(q) = den.divide_exact(&num) {
            let (lq, k) = leading_scale(&q);
            return Fraction { num: Polynomial::constant(k.recip()), den: lq };
        }
        let (d, k) = leading_scale(&den);
        Fraction { num: num.scale(&k.recip()), den: d }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is a constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.constant_term().recip()))
        } else {
            self.num.divide_exact(&self.den).ok()
        }
    }

    pub fn add(&self, o: &Fraction) -> Fraction {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Fraction) -> Fraction {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Fraction) -> Fraction {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Fraction> {
        Fraction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Fraction) -> Result<Fraction> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Fraction {
        Self::normalized(self.num.mul(p), self.den.clone())
    }
}

/// Scales `p` so that its lex-leading coefficient is one; returns the
/// scaled polynomial and the factor removed.
fn leading_scale(p: &Polynomial) -> (Polynomial, crate::poly::Rational) {
    let k = p.terms().next_back().map(|(_, c)| c.clone()).unwrap_or_else(crate::poly::Rational::one);
    (p.scale(&k.recip()), k)
}

impl PartialEq for Fraction {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fraction({self})")
    }
}

/// `num` when the denominator is one, otherwise `(num)/(den)` with
/// parentheses only around multi-term parts.
impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| {
            let s = p.to_string();
            if p.num_terms() > 1 || s.contains('/') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl From<Polynomial> for Fraction {
    fn from(p: Polynomial) -> Self {
        Fraction::from_poly(p)
    }
}

impl Scalar for Fraction {
    fn zero_like(&self) -> Self {
        Fraction::zero()
    }
    fn one_like(&self) -> Self {
        Fraction::one()
    }
    fn is_zero(&self) -> bool {
        Fraction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Fraction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fraction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fraction::mul(self, o)
    }
    fn neg(&self) -> Self {
        Fraction::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.div(o).ok()
    }
}
