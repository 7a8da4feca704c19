//! Elements `a / f^k` of the localization A_f.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Scalar;
use crate::poly::Polynomial;

use super::{Fraction, RingModel};

/// The ring A_f: a fixed nonzero `f ∈ A` together with A itself.
#[derive(Debug)]
pub struct Locale {
    f: Polynomial,
    ring: Arc<RingModel>,
}

impl Locale {
    pub fn new(f: Polynomial, ring: &Arc<RingModel>) -> Result<Arc<Self>> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !ring.contains(&f) {
            return Err(Error::NotInRing(f.to_string()));
        }
        Ok(Arc::new(Locale { f, ring: ring.clone() }))
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }
}

/// `num / f^exp` with `num ∈ A`. The exponent is kept minimal: `f` is
/// divided out of `num` while the quotient stays in A.
#[derive(Clone)]
pub struct LocalElem {
    num: Polynomial,
    exp: u32,
    locale: Arc<Locale>,
}

impl LocalElem {
    pub fn new(num: Polynomial, exp: u32, locale: &Arc<Locale>) -> Result<Self> {
        if !locale.ring.contains(&num) {
            return Err(Error::NotInRing(num.to_string()));
        }
        Ok(Self::normalized(num, exp, locale.clone()))
    }

    pub fn from_ring(a: Polynomial, locale: &Arc<Locale>) -> Result<Self> {
        Self::new(a, 0, locale)
    }

    /// `1 / f^k`.
    pub fn inv_f_power(k: u32, locale: &Arc<Locale>) -> Self {
        Self::normalized(Polynomial::one(), k, locale.clone())
    }

    fn normalized(mut num: Polynomial, mut exp: u32, locale: Arc<Locale>) -> Self {
        if num.is_zero() {
            return LocalElem { num, exp: 0, locale };
        }
        while exp > 0 {
            match num.divide_exact(&locale.f) {
                Ok(q) if locale.ring.contains(&q) => {
                    num = q;
                    exp -= 1;
                }
                _ => break,
            }
        }
        LocalElem { num, exp, locale }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn locale(&self) -> &Arc<Locale> {
        &self.locale
    }

    /// The element of A when no power of `f` remains.
    pub fn to_ring(&self) -> Option<Polynomial> {
        (self.exp == 0).then(|| self.num.clone())
    }

    pub fn to_fraction(&self) -> Fraction {
        Fraction::new(self.num.clone(), self.locale.f.pow(self.exp)).expect("f is nonzero")
    }

    /// `self · f^k`.
    pub fn times_f_power(&self, k: u32) -> Self {
        if k <= self.exp {
            return Self::normalized(self.num.clone(), self.exp - k, self.locale.clone());
        }
        Self::normalized(self.num.mul(&self.locale.f.pow(k - self.exp)), 0, self.locale.clone())
    }

    fn check_same(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.locale, &o.locale) || self.locale.f == o.locale.f,
            "localized elements over different f"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let e = self.exp.max(o.exp);
        let f = &self.locale.f;
        let a = self.num.mul(&f.pow(e - self.exp));
        let b = o.num.mul(&f.pow(e - o.exp));
        Self::normalized(a.add(&b), e, self.locale.clone())
    }

    pub fn neg(&self) -> Self {
        LocalElem { num: self.num.neg(), exp: self.exp, locale: self.locale.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_same(o);
        Self::normalized(self.num.mul(&o.num), self.exp + o.exp, self.locale.clone())
    }
}

impl PartialEq for LocalElem {
    fn eq(&self, o: &Self) -> bool {
        let f = &self.locale.f;
        self.num.mul(&f.pow(o.exp)) == o.num.mul(&f.pow(self.exp))
    }
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalElem({}/f^{})", self.num, self.exp)
    }
}

impl Scalar for LocalElem {
    fn zero_like(&self) -> Self {
        LocalElem { num: Polynomial::zero(), exp: 0, locale: self.locale.clone() }
    }
    fn one_like(&self) -> Self {
        LocalElem { num: Polynomial::one(), exp: 0, locale: self.locale.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        LocalElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LocalElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LocalElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        LocalElem::neg(self)
    }
    fn div_exact(&self, _o: &Self) -> Option<Self> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZMode;

    #[test]
    fn arithmetic_and_normalization() {
        let a = RingModel::monomial_subalgebra("z", &[2, 3], ZMode::ZeroConstantTerm).unwrap();
        let f = a.parse("1 - z^2").unwrap();
        let loc = Locale::new(f.clone(), &a).unwrap();
        let x = LocalElem::from_ring(a.parse("z^2").unwrap(), &loc).unwrap();
        let y = LocalElem::from_ring(a.parse("z^3").unwrap(), &loc).unwrap();
        let s = x.add(&y);
        assert_eq!(s.num(), &a.parse("z^2 + z^3").unwrap());
        assert_eq!(s.exp(), 0);

        let fa = LocalElem::new(f.mul(&a.parse("z^3").unwrap()), 1, &loc).unwrap();
        assert_eq!(fa.exp(), 0);
        assert_eq!(fa.num(), &a.parse("z^3").unwrap());

        let n1 = LocalElem::new(a.parse("z^2").unwrap(), 1, &loc).unwrap();
        let n2 = LocalElem::new(a.parse("z^3").unwrap(), 1, &loc).unwrap();
        let p = n1.mul(&n2);
        assert_eq!(p.exp(), 2);
        assert_eq!(p.num(), &a.parse("z^5").unwrap());
        assert_eq!(LocalElem::inv_f_power(1, &loc).mul(&LocalElem::from_ring(f, &loc).unwrap()).to_ring(), Some(Polynomial::one()));
    }

    #[test]
    fn quotient_must_stay_in_ring() {
        // f = z^2 divides z^3 in ℚ[z] but z ∉ A, so z^3/z^2 stays as is.
        let a = RingModel::monomial_subalgebra("z", &[2, 3], ZMode::ZeroConstantTerm).unwrap();
        let loc = Locale::new(a.parse("z^2").unwrap(), &a).unwrap();
        let e = LocalElem::new(a.parse("z^3").unwrap(), 1, &loc).unwrap();
        assert_eq!(e.exp(), 1);
    }
}
