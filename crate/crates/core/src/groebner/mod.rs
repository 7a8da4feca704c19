//! Buchberger's algorithm over ℚ[x₁…x_k] with optional cofactor tracking.
//!
//! Pair selection uses the sugar strategy with ties broken by the lcm under
//! the active order and then by the pair's indices, and redundant pairs are
//! discarded with the Gebauer–Möller criteria. The returned basis is reduced
//! (minimal, tail-reduced, monic) and sorted by ascending leading monomial.

pub mod ideal;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational};

pub use ideal::{BezoutCertificate, Ideal, QuotientRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Block order: the first `front` variables form a grevlex block that
    /// dominates the grevlex block of the remaining variables.
    Elimination { front: usize },
}

type Key = SmallVec<[u32; 8]>;

fn grevlex_key(e: &[u32], out: &mut Key) {
    out.push(e.iter().sum());
    out.extend(e.iter().rev().map(|x| u32::MAX - x));
}

impl MonomialOrder {
    fn key(&self, e: &[u32]) -> Key {
        let mut k = Key::new();
        match *self {
            MonomialOrder::Lex => k.extend_from_slice(e),
            MonomialOrder::Grevlex => grevlex_key(e, &mut k),
            MonomialOrder::Elimination { front } => {
                let split = front.min(e.len());
                grevlex_key(&e[..split], &mut k);
                grevlex_key(&e[split..], &mut k);
            }
        }
        k
    }

    /// Compares two exponent vectors of equal length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a.exponents()).cmp(&self.key(b.exponents()))
    }

    /// Leading monomial and coefficient of `p` over `vars`.
    pub fn leading(&self, p: &Polynomial) -> Option<(Monomial, Rational)> {
        p.terms()
            .max_by(|x, y| self.cmp(x.0, y.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct OMono {
    key: Key,
    mono: Monomial,
}

/// Polynomial stored in the active monomial order; the last entry leads.
#[derive(Clone, Debug, Default)]
struct GPoly {
    terms: BTreeMap<OMono, Rational>,
}

impl GPoly {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| (OMono { key: order.key(m.exponents()), mono: m.clone() }, c.clone()))
            .collect();
        GPoly { terms }
    }

    fn to_poly(&self, vars: &Arc<[String]>) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.mono.clone(), c.clone())).collect();
        Polynomial::from_parts(vars.clone(), terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (&m.mono, c))
    }

    /// `self -= c · shift · g`.
    fn sub_mul(&mut self, g: &GPoly, c: &Rational, shift: &Monomial, order: MonomialOrder) {
        for (m, gc) in &g.terms {
            let mono = m.mono.mul(shift);
            let key = order.key(mono.exponents());
            let delta = gc * c;
            match self.terms.entry(OMono { key, mono }) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(-delta);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() -= delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    fn scale(&mut self, k: &Rational) {
        for c in self.terms.values_mut() {
            *c *= k;
        }
    }

    fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.mono.degree()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
struct Element {
    poly: GPoly,
    lm: Monomial,
    sugar: u32,
    /// Expression of `poly` over the input generators.
    cof: Option<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    lcm_key: Key,
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Pair {
    fn rank(&self) -> (u32, &Key, usize, usize) {
        (self.sugar, &self.lcm_key, self.i, self.j)
    }
}

/// Reduced Gröbner basis together with, when tracked, an exact expression of
/// every basis element over the input generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Arc<[String]>,
    order: MonomialOrder,
    elems: Vec<Element>,
    ngens: usize,
}

/// Quotients and remainder of a division by a Gröbner basis.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

struct Engine {
    vars: Arc<[String]>,
    order: MonomialOrder,
    track: bool,
    ngens: usize,
    elems: Vec<Element>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn zero_poly(&self) -> Polynomial {
        Polynomial::from_parts(self.vars.clone(), BTreeMap::new())
    }

    fn monomial_poly(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut t = BTreeMap::new();
        t.insert(m.clone(), c.clone());
        Polynomial::from_parts(self.vars.clone(), t)
    }

    /// Fully reduces `p` by the active elements. Returns the remainder and,
    /// when tracking, the accumulated quotient per element index.
    fn reduce(&self, mut p: GPoly) -> (GPoly, BTreeMap<usize, BTreeMap<Monomial, Rational>>) {
        let mut rem = GPoly::default();
        let mut quots: BTreeMap<usize, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        while let Some((m, c)) = p.terms.pop_last() {
            let divisor = self.active.iter().copied().find(|&k| self.elems[k].lm.divides(&m.mono));
            match divisor {
                Some(k) => {
                    let g = &self.elems[k];
                    let shift = m.mono.div(&g.lm).expect("divisibility checked");
                    let lc = g.poly.lead().expect("nonzero element").1;
                    let q = c / lc;
                    // The leading term cancels exactly; subtract the tail only.
                    let mut tail = g.poly.clone();
                    tail.terms.pop_last();
                    p.sub_mul(&tail, &q, &shift, self.order);
                    if self.track {
                        let e = quots.entry(k).or_default();
                        let slot = e.entry(shift).or_insert_with(Rational::zero);
                        *slot += q;
                    }
                }
                None => {
                    rem.terms.insert(m, c);
                }
            }
        }
        (rem, quots)
    }

    fn combine_cofactors(
        &self,
        base: Vec<Polynomial>,
        quots: BTreeMap<usize, BTreeMap<Monomial, Rational>>,
    ) -> Vec<Polynomial> {
        let mut cof = base;
        for (k, q) in quots {
            let q = Polynomial::from_parts(self.vars.clone(), q.into_iter().filter(|(_, c)| !c.is_zero()).collect());
            let gk = self.elems[k].cof.as_ref().expect("tracking enabled");
            for (slot, c) in cof.iter_mut().zip(gk) {
                if !c.is_zero() {
                    *slot = slot.sub(&q.mul(c));
                }
            }
        }
        cof
    }

    fn push_element(&mut self, poly: GPoly, sugar: u32, cof: Option<Vec<Polynomial>>) -> usize {
        let lm = poly.lead().expect("nonzero").0.clone();
        self.elems.push(Element { poly, lm, sugar, cof });
        let t = self.elems.len() - 1;
        self.update(t);
        t
    }

    /// Gebauer–Möller update after appending element `t`.
    fn update(&mut self, t: usize) {
        let lt = self.elems[t].lm.clone();
        let mk = |i: usize, elems: &[Element], order: MonomialOrder| {
            let lcm = elems[i].lm.lcm(&lt);
            let si = elems[i].sugar + lcm.degree() - elems[i].lm.degree();
            let st = elems[t].sugar + lcm.degree() - lt.degree();
            Pair { sugar: si.max(st), lcm_key: order.key(lcm.exponents()), i, j: t, lcm }
        };
        let mut c: Vec<Pair> = self.active.iter().map(|&i| mk(i, &self.elems, self.order)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let coprime = self.elems[p.i].lm.coprime(&lt);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !self.elems[p.i].lm.coprime(&lt)).collect();
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !lt.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lm.lcm(&lt);
            let lj = elems[p.j].lm.lcm(&lt);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(e);
        self.active.retain(|&g| !lt.divides(&elems[g].lm));
        self.active.push(t);
    }

    fn s_poly(&self, p: &Pair) -> (GPoly, Option<Vec<Polynomial>>) {
        let gi = &self.elems[p.i];
        let gj = &self.elems[p.j];
        let ci = gi.poly.lead().unwrap().1.clone();
        let cj = gj.poly.lead().unwrap().1.clone();
        let mi = p.lcm.div(&gi.lm).unwrap();
        let mj = p.lcm.div(&gj.lm).unwrap();
        // s = (1/ci)·mi·gi − (1/cj)·mj·gj
        let mut s = GPoly::default();
        s.sub_mul(&gi.poly, &-ci.recip(), &mi, self.order);
        s.sub_mul(&gj.poly, &cj.recip(), &mj, self.order);
        let cof = if self.track {
            let a = self.monomial_poly(&mi, &ci.recip());
            let b = self.monomial_poly(&mj, &cj.recip());
            let ca = gi.cof.as_ref().unwrap();
            let cb = gj.cof.as_ref().unwrap();
            Some(ca.iter().zip(cb).map(|(x, y)| a.mul(x).sub(&b.mul(y))).collect())
        } else {
            None
        };
        (s, cof)
    }

    fn run(&mut self) -> bool {
        while !self.pairs.is_empty() {
            let best = (0..self.pairs.len())
                .min_by(|&a, &b| self.pairs[a].rank().cmp(&self.pairs[b].rank()))
                .expect("nonempty");
            let pair = self.pairs.swap_remove(best);
            let (s, cof) = self.s_poly(&pair);
            let (h, quots) = self.reduce(s);
            if h.is_zero() {
                continue;
            }
            let cof = cof.map(|c| self.combine_cofactors(c, quots));
            let constant = h.lead().unwrap().0.is_one();
            self.push_element(h, pair.sugar, cof);
            if constant {
                return true;
            }
        }
        false
    }
}

/// Computes the reduced Gröbner basis of `gens` over `vars`, tracking
/// cofactors when `track` is set. Every generator must use only `vars`.
pub fn groebner_basis(
    gens: &[Polynomial],
    vars: &[String],
    order: MonomialOrder,
    track: bool,
) -> Result<GroebnerBasis> {
    let vars: Arc<[String]> = Arc::from(vars.to_vec());
    let aligned: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.with_vars(&vars))
        .collect::<Result<_>>()?;
    let mut eng = Engine {
        vars: vars.clone(),
        order,
        track,
        ngens: aligned.len(),
        elems: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut unit = false;
    for (idx, g) in aligned.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let gp = GPoly::from_poly(g, order);
        let cof = track.then(|| {
            let mut v = vec![eng.zero_poly(); eng.ngens];
            v[idx] = Polynomial::one().with_vars(&vars).expect("constant");
            v
        });
        let sugar = gp.degree();
        let constant = gp.lead().unwrap().0.is_one();
        eng.push_element(gp, sugar, cof);
        if constant {
            unit = true;
            break;
        }
    }
    if !unit {
        eng.run();
    }
    let gb = finalize(eng)?;
    if track {
        gb.check_cofactors(&aligned)?;
    }
    Ok(gb)
}

/// Buchberger with cofactor tracking and the sugar strategy.
pub fn buchberger(gens: &[Polynomial], vars: &[String], order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis(gens, vars, order, true)
}

fn finalize(mut eng: Engine) -> Result<GroebnerBasis> {
    // A constant element makes the basis {1}.
    if let Some(&k) = eng.active.iter().find(|&&k| eng.elems[k].lm.is_one()) {
        eng.active = vec![k];
    }
    // Minimal basis: active elements already have pairwise non-dividing
    // leading monomials except for equal ones; keep the first of those.
    let mut minimal: Vec<usize> = Vec::new();
    for &k in &eng.active {
        let lm = &eng.elems[k].lm;
        if minimal.iter().any(|&j| eng.elems[j].lm.divides(lm)) {
            continue;
        }
        minimal.retain(|&j| !lm.divides(&eng.elems[j].lm));
        minimal.push(k);
    }
    minimal.sort_by(|&a, &b| eng.order.cmp(&eng.elems[a].lm, &eng.elems[b].lm));

    let mut out: Vec<Element> = Vec::with_capacity(minimal.len());
    for &k in &minimal {
        // Tail-reduce by the other minimal elements.
        eng.active = minimal.iter().copied().filter(|&j| j != k).collect();
        let mut poly = eng.elems[k].poly.clone();
        let (lead_m, lead_c) = poly.terms.pop_last().expect("nonzero");
        let (mut rem, quots) = eng.reduce(poly);
        rem.terms.insert(lead_m, lead_c.clone());
        let cof = if eng.track {
            let mut base = eng.elems[k].cof.clone().unwrap();
            base = eng.combine_cofactors(base, quots);
            let inv = lead_c.recip();
            Some(base.iter().map(|c| c.scale(&inv)).collect::<Vec<_>>())
        } else {
            None
        };
        rem.scale(&lead_c.recip());
        let lm = rem.lead().unwrap().0.clone();
        out.push(Element { poly: rem, lm, sugar: eng.elems[k].sugar, cof });
    }
    Ok(GroebnerBasis { vars: eng.vars, order: eng.order, elems: out, ngens: eng.ngens })
}

impl GroebnerBasis {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Basis polynomials, monic, sorted by ascending leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|e| e.poly.to_poly(&self.vars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm.clone()).collect()
    }

    /// Cofactors of basis element `i` over the input generators, if tracked.
    pub fn cofactors(&self, i: usize) -> Option<&[Polynomial]> {
        self.elems[i].cof.as_deref()
    }

    pub fn is_tracked(&self) -> bool {
        self.elems.first().is_none_or(|e| e.cof.is_some())
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm.is_one()
    }

    fn check_cofactors(&self, gens: &[Polynomial]) -> Result<()> {
        for e in &self.elems {
            let Some(cof) = &e.cof else { continue };
            let mut acc = Polynomial::zero();
            for (c, g) in cof.iter().zip(gens) {
                if !c.is_zero() {
                    acc = acc.add(&c.mul(g));
                }
            }
            if acc != e.poly.to_poly(&self.vars) {
                return Err(Error::internal("Gröbner cofactor expression does not reproduce its basis element"));
            }
        }
        Ok(())
    }

    /// Division of `p` by the basis.
    pub fn divide(&self, p: &Polynomial) -> Result<Division> {
        let p = p.with_vars(&self.vars)?;
        let eng = Engine {
            vars: self.vars.clone(),
            order: self.order,
            track: true,
            ngens: self.ngens,
            elems: self.elems.clone(),
            active: (0..self.elems.len()).collect(),
            pairs: Vec::new(),
        };
        let (rem, quots) = eng.reduce(GPoly::from_poly(&p, self.order));
        let mut quotients = vec![eng.zero_poly(); self.elems.len()];
        for (k, q) in quots {
            quotients[k] = Polynomial::from_parts(
                self.vars.clone(),
                q.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            );
        }
        Ok(Division { quotients, remainder: rem.to_poly(&self.vars) })
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.divide(p)?.remainder)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Expresses `p` over the input generators when it lies in the ideal.
    /// Requires a tracked basis.
    pub fn express(&self, p: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        if !self.is_tracked() {
            return Err(Error::internal("cofactor expression requested from an untracked basis"));
        }
        let div = self.divide(p)?;
        if !div.remainder.is_zero() {
            return Ok(None);
        }
        let zero = Polynomial::zero().with_vars(&self.vars)?;
        let mut out = vec![zero; self.ngens];
        for (q, e) in div.quotients.iter().zip(&self.elems) {
            if q.is_zero() {
                continue;
            }
            for (slot, c) in out.iter_mut().zip(e.cof.as_ref().unwrap()) {
                if !c.is_zero() {
                    *slot = slot.add(&q.mul(c));
                }
            }
        }
        Ok(Some(out))
    }

    /// Basis elements that do not involve any of the first `front`
    /// variables; for an elimination order this generates the elimination
    /// ideal.
    pub fn eliminated(&self, front: usize) -> Vec<Polynomial> {
        self.elems
            .iter()
            .filter(|e| {
                e.poly.terms.keys().all(|m| m.mono.exponents()[..front].iter().all(|&x| x == 0))
            })
            .map(|e| e.poly.to_poly(&self.vars))
            .collect()
    }
}

/// S-polynomial of `f` and `g` under `order`, both over the same variables.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (mf, cf) = order.leading(f).expect("nonzero");
    let (mg, cg) = order.leading(g).expect("nonzero");
    let l = mf.lcm(&mg);
    let vars = f.vars().to_vec();
    let term = |m: Monomial, c: Rational| {
        Polynomial::from_terms(&vars, [(m.exponents().to_vec(), c)])
    };
    let a = term(l.div(&mf).unwrap(), cf.recip());
    let b = term(l.div(&mg).unwrap(), cg.recip());
    a.mul(f).sub(&b.mul(g))
}

/// Convenience: `1` over `vars`.
pub(crate) fn one_over(vars: &[String]) -> Polynomial {
    Polynomial::from_terms(vars, [(vec![0; vars.len()], Rational::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ps(items: &[&str], v: &[String]) -> Vec<Polynomial> {
        items.iter().map(|s| parse_poly(s, v).unwrap()).collect()
    }

    #[test]
    fn singleton_is_basis() {
        let v = vars(&["x"]);
        let gb = buchberger(&ps(&["x"], &v), &v, MonomialOrder::Lex).unwrap();
        assert_eq!(gb.basis(), ps(&["x"], &v));
    }

    #[test]
    fn elimination_of_delay() {
        let v = vars(&["z", "u", "v"]);
        let gens = ps(&["u - z^2", "v - z^3"], &v);
        let gb = buchberger(&gens, &v, MonomialOrder::Elimination { front: 1 }).unwrap();
        let elim = gb.eliminated(1);
        assert_eq!(elim, ps(&["u^3 - v^2"], &v));
    }

    #[test]
    fn reduced_basis_grevlex() {
        let v = vars(&["x", "y"]);
        let gens = ps(&["x^2", "x*y + y^2"], &v);
        let gb = buchberger(&gens, &v, MonomialOrder::Grevlex).unwrap();
        let b = gb.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = s_polynomial(&b[i], &b[j], MonomialOrder::Grevlex);
                assert!(gb.normal_form(&s).unwrap().is_zero());
            }
        }
        assert!(gb.contains(&parse_poly("y^3", &v).unwrap()).unwrap());
        assert!(!gb.contains(&parse_poly("y^2", &v).unwrap()).unwrap());
    }

    #[test]
    fn unit_certificate() {
        let v = vars(&["x", "y"]);
        let gens = ps(&["x", "1 - x + y^2", "y"], &v);
        let gb = buchberger(&gens, &v, MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_unit());
        let w = gb.express(&one_over(&v)).unwrap().unwrap();
        let sum = w.iter().zip(&gens).fold(Polynomial::zero(), |a, (c, g)| a + c * g);
        assert!(sum.is_one());
    }

    #[test]
    fn proper_ideal_not_unit() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&ps(&["x", "y"], &v), &v, MonomialOrder::Grevlex).unwrap();
        assert!(!gb.is_unit());
        assert!(gb.express(&one_over(&v)).unwrap().is_none());
    }
}
