//! Exact rational scalars and sparse multivariate polynomials over ℚ.
//!
//! A [`Polynomial`] carries its own ordered list of ambient variable names.
//! Binary operations on polynomials with different variable lists first
//! align both operands to the union of the lists, so constants built without
//! any variables mix freely with everything else.

mod format;
mod parse;

pub use format::format_rational;
pub use parse::{parse_fraction_parts, parse_poly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense exponent vector, aligned with the variable list of the owning
/// polynomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub(crate) SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality of aligned
/// term maps is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

fn no_vars() -> Arc<[String]> {
    Arc::from(Vec::<String>::new())
}

fn same_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { vars: no_vars(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Polynomial { vars: no_vars(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exponents(&[1]), Rational::one());
        Polynomial { vars: Arc::from(vec![name.to_string()]), terms }
    }

    /// `coeff · name^exp`.
    pub fn monomial_in(name: &str, exp: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::from_exponents(&[exp]), coeff);
        }
        Polynomial { vars: Arc::from(vec![name.to_string()]), terms }
    }

    /// Builds a polynomial over `vars` from `(exponents, coefficient)` pairs.
    /// Repeated exponent vectors are summed.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let vars: Arc<[String]> = Arc::from(vars.to_vec());
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length must match variable count");
            let m = Monomial::from_exponents(&exps);
            let entry = map.entry(m).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { vars, terms: map }
    }

    pub(crate) fn from_parts(vars: Arc<[String]>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        debug_assert!(terms.keys().all(|m| m.0.len() == vars.len()));
        Polynomial { vars, terms }
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_coeffs(var: &str, coeffs: &[Rational]) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Monomial::from_exponents(&[k as u32]), c.clone());
            }
        }
        Polynomial { vars: Arc::from(vec![var.to_string()]), terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending lex order of the aligned exponent vectors.
    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, Rational> {
        self.terms.iter()
    }


    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Coefficient of the term with the given exponents (aligned to `vars()`).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Variables that occur with a positive exponent in some term.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// used variable.
    pub fn with_vars(&self, vars: &[String]) -> Result<Polynomial> {
        let target: Arc<[String]> = Arc::from(vars.to_vec());
        self.realign(&target)
    }

    fn realign(&self, target: &Arc<[String]>) -> Result<Polynomial> {
        if same_vars(&self.vars, target) {
            return Ok(Polynomial { vars: target.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(Error::UnknownVariable(v.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e: SmallVec<[u32; 4]> = SmallVec::from_elem(0, target.len());
            for (i, slot) in map.iter().enumerate() {
                if let Some(j) = slot {
                    e[*j] = m.0[i];
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(Polynomial { vars: target.clone(), terms })
    }

    fn union_vars(&self, other: &Polynomial) -> Arc<[String]> {
        if same_vars(&self.vars, &other.vars) || other.vars.is_empty() {
            return self.vars.clone();
        }
        if self.vars.is_empty() {
            return other.vars.clone();
        }
        let mut merged: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !merged.contains(v) {
                merged.push(v.clone());
            }
        }
        Arc::from(merged)
    }

    /// Both operands over a common variable list.
    fn aligned(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        let u = self.union_vars(other);
        let a = self.realign(&u).expect("union contains all variables");
        let b = other.realign(&u).expect("union contains all variables");
        (a, b)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            add_term(&mut a.terms, m, c);
        }
        a
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial { vars: self.union_vars(other), terms: BTreeMap::new() };
        }
        let (a, b) = self.aligned(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Polynomial { vars: a.vars, terms }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        result.terms.insert(Monomial::one(self.vars.len()), Rational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = Polynomial::mul(&base, &base);
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn try_pow(&self, exp: i64) -> Result<Polynomial> {
        if exp < 0 {
            return Err(Error::NegativeExponent(exp));
        }
        let e = u32::try_from(exp).map_err(|_| Error::Unsupported(format!("exponent {exp} too large")))?;
        Ok(self.pow(e))
    }

    /// Leading term with respect to lex order on the aligned exponent vector.
    fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`.
    ///
    /// A single nonzero polynomial is a Gröbner basis of the ideal it
    /// generates, so the division remainder vanishes exactly when the
    /// divisor divides `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut rest, q) = self.aligned(divisor);
        let (lm, lc) = {
            let (m, c) = q.lex_leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rest.lex_leading() {
            let Some(shift) = m.div(&lm) else {
                return Err(Error::NotDivisible);
            };
            let k = c / &lc;
            for (mq, cq) in &q.terms {
                add_term(&mut rest.terms, mq.mul(&shift), -(cq * &k));
            }
            quotient.insert(shift, k);
        }
        Ok(Polynomial { vars: rest.vars, terms: quotient })
    }

    /// Substitutes `images[i]` for the `i`-th variable of `vars()`.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let mut acc = Polynomial::zero();
        let mut power_cache: Vec<BTreeMap<u32, Polynomial>> = vec![BTreeMap::new(); images.len()];
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache[i].entry(e).or_insert_with(|| images[i].pow(e)).clone();
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluates at a rational point given as `(variable, value)` pairs;
    /// unlisted variables evaluate to zero.
    pub fn eval(&self, point: &[(&str, Rational)]) -> Rational {
        let vals: Vec<Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(n, _)| *n == v.as_str())
                    .map(|(_, x)| x.clone())
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Dense ascending coefficients when at most one variable is used.
    /// Returns the variable name (if any) and the coefficients.
    pub fn as_univariate(&self) -> Option<(Option<String>, Vec<Rational>)> {
        let used = self.used_vars();
        if used.len() > 1 {
            return None;
        }
        let var = used.into_iter().next();
        let idx = var.as_ref().and_then(|v| self.vars.iter().position(|w| w == v));
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = idx.map(|i| m.0[i]).unwrap_or(0) as usize;
            coeffs[e] = c.clone();
        }
        Some((var, coeffs))
    }

    /// Degree in a single named variable.
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Multiplies by the rational making the first term (in canonical
    /// print order) equal to one.
    pub fn normalize_first(&self) -> Polynomial {
        match format::first_term_coeff(self) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Multiplies by the rational making the lex-leading coefficient one.
    pub fn monic_lex(&self) -> Polynomial {
        match self.lex_leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if same_vars(&self.vars, &other.vars) {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::format_canonical(self))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order used for sorting and deduplication; it
/// compares the canonical printed forms.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        format::format_canonical(self).cmp(&format::format_canonical(other))
    }
}

/// Monic greatest common divisor of two univariate polynomials in the same
/// variable.
pub fn gcd_univariate(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    let (pv, pc) = p.as_univariate().ok_or_else(|| Error::Multivariate(p.to_string()))?;
    let (qv, qc) = q.as_univariate().ok_or_else(|| Error::Multivariate(q.to_string()))?;
    let var = match (pv, qv) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Multivariate(format!("{p} and {q} use different variables")))
        }
        (Some(a), _) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    if p.is_zero() && q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let g = dense::gcd(&pc, &qc);
    Ok(match var {
        Some(v) => Polynomial::from_coeffs(&v, &g),
        None => Polynomial::one(),
    })
}

/// Dense univariate helpers over ascending coefficient vectors.
pub(crate) mod dense {
    use super::Rational;
    use num_traits::{One, Zero};

    pub fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lb = b.last().unwrap().clone();
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let k = r.last().unwrap() / &lb;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= bc * &k;
            }
            q[shift] = k;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(a: Vec<Rational>) -> Vec<Rational> {
        let a = trim(a);
        match a.last() {
            Some(l) if !l.is_one() => {
                let l = l.clone();
                a.into_iter().map(|c| c / &l).collect()
            }
            _ => a,
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$method(&self, &rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(&self, rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::from_int(n)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Vec<String> {
        vec!["z".to_string()]
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &z()).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(p("z^2").add(&p("z^3")), p("z^2 + z^3"));
        assert_eq!(p("1 - z").mul(&p("1 + z")), p("1 - z^2"));
        assert_eq!(p("1 + 2*z").pow(2), p("1 + 4*z + 4*z^2"));
        assert_eq!(p("z").try_pow(-1), Err(Error::NegativeExponent(-1)));
        assert_eq!(p("z").neg(), p("0 - z"));
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(p("1 - z^4").divide_exact(&p("1 - z^2")).unwrap(), p("1 + z^2"));
        assert_eq!(p("1 - z^3").divide_exact(&p("1 - z^2")), Err(Error::NotDivisible));
        let q = p("3 + z^5 - 1/7*z");
        assert_eq!(q.divide_exact(&Polynomial::one()).unwrap(), q);
        assert_eq!(q.divide_exact(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn divide_exact_multivariate() {
        let v = vec!["x".to_string(), "y".to_string()];
        let a = parse_poly("x^2 - y^2", &v).unwrap();
        let b = parse_poly("x + y", &v).unwrap();
        assert_eq!(a.divide_exact(&b).unwrap(), parse_poly("x - y", &v).unwrap());
        let c = parse_poly("x^2 + y^2", &v).unwrap();
        assert_eq!(c.divide_exact(&b), Err(Error::NotDivisible));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_univariate(&p("1 - z^2"), &p("1 - z^3")).unwrap(), p("z - 1"));
        assert_eq!(gcd_univariate(&p("1 - z^2"), &p("1 - 4*z^2")).unwrap(), Polynomial::one());
        assert_eq!(gcd_univariate(&p("2 + 4*z"), &Polynomial::zero()).unwrap(), p("1/2 + z"));
        let v = vec!["x".to_string(), "y".to_string()];
        let xy = parse_poly("x*y", &v).unwrap();
        assert!(matches!(gcd_univariate(&xy, &p("z")), Err(Error::Multivariate(_))));
    }

    #[test]
    fn mixed_variable_lists_align() {
        let x = Polynomial::var("x");
        let y = Polynomial::var("y");
        let s = &x + &y;
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(&s - &x, y);
        assert_eq!(Polynomial::from_int(2) * x.clone(), &x + &x);
    }

    #[test]
    fn compose_and_eval() {
        let v = vec!["u".to_string(), "v".to_string()];
        let rel = parse_poly("u^3 - v^2", &v).unwrap();
        let images = [p("z^2"), p("z^3")];
        assert!(rel.compose(&images).is_zero());
        assert_eq!(p("1 + 3*z").eval(&[("z", rat(2))]), rat(7));
    }
}
