//! Ideals of a quotient ring ℚ[u₁…u_k]/R.
//!
//! Every operation runs in the ambient polynomial ring with the relation
//! generators of R adjoined. Generators returned by `colon`, `intersect` and
//! `eliminate` are normal forms modulo R with zero classes dropped.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

use super::{groebner_basis, one_over, GroebnerBasis, MonomialOrder};

/// ℚ[vars] modulo the ideal generated by `relations`.
#[derive(Debug)]
pub struct QuotientRing {
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    relation_gb: GroebnerBasis,
}

impl QuotientRing {
    pub fn new(vars: Vec<String>, relations: Vec<Polynomial>) -> Result<Arc<Self>> {
        let relations: Vec<Polynomial> = relations
            .iter()
            .map(|r| r.with_vars(&vars))
            .collect::<Result<_>>()?;
        let relation_gb = groebner_basis(&relations, &vars, MonomialOrder::Grevlex, false)?;
        if relation_gb.is_unit() {
            return Err(Error::InvalidRing("relations generate the unit ideal".into()));
        }
        Ok(Arc::new(QuotientRing { vars, relations, relation_gb }))
    }

    /// The polynomial ring itself, with no relations.
    pub fn free(vars: Vec<String>) -> Arc<Self> {
        Self::new(vars, Vec::new()).expect("empty relation set is proper")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Canonical representative of the class of `p`.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.relation_gb.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    fn fresh_var(&self) -> String {
        let mut name = "t".to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        name
    }

    fn canonical_gens(&self, polys: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
        let mut out: Vec<Polynomial> = Vec::new();
        for p in polys {
            let r = self.reduce(&p)?;
            if r.is_zero() {
                continue;
            }
            let r = r.normalize_first();
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Generators of `(⟨a⟩ + R) ∩ (⟨b⟩ + R)` in the ambient polynomial ring,
    /// via elimination of `t` from `⟨t·a, (1−t)·b⟩`. With `relations_on_b`
    /// unset the second operand is `⟨b⟩` alone, which is what a colon needs.
    fn intersect_plain(&self, a: &[Polynomial], b: &[Polynomial], relations_on_b: bool) -> Result<Vec<Polynomial>> {
        let t = self.fresh_var();
        let mut ext = vec![t.clone()];
        ext.extend(self.vars.iter().cloned());
        let tv = Polynomial::var(&t);
        let one_minus_t = Polynomial::one().sub(&tv);
        let mut gens = Vec::new();
        for g in a.iter().chain(&self.relations) {
            gens.push(tv.mul(g));
        }
        let b_rels: &[Polynomial] = if relations_on_b { &self.relations } else { &[] };
        for g in b.iter().chain(b_rels) {
            gens.push(one_minus_t.mul(g));
        }
        let gb = groebner_basis(&gens, &ext, MonomialOrder::Elimination { front: 1 }, false)?;
        gb.eliminated(1).into_iter().map(|p| p.with_vars(&self.vars)).collect()
    }
}

/// Coefficients `h_g`, one per ideal generator, with `Σ h_g·g ≡ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub coefficients: Vec<Polynomial>,
}

impl BezoutCertificate {
    /// Checks `Σ h_g·g − 1 ≡ 0` modulo the relations.
    pub fn verify(&self, ring: &QuotientRing, gens: &[Polynomial]) -> Result<bool> {
        if gens.len() != self.coefficients.len() {
            return Ok(false);
        }
        let mut acc = one_over(ring.vars()).neg();
        for (h, g) in self.coefficients.iter().zip(gens) {
            acc = acc.add(&h.mul(g));
        }
        ring.is_zero(&acc)
    }
}

/// Finitely generated ideal of a [`QuotientRing`], with a lazily computed
/// and cached cofactor-tracked Gröbner basis of generators plus relations.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<QuotientRing>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Result<GroebnerBasis>>>,
}

impl Ideal {
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let gens = gens.iter().map(|g| g.with_vars(ring.vars())).collect::<Result<_>>()?;
        Ok(Ideal { ring: ring.clone(), gens, gb: Arc::new(OnceLock::new()) })
    }

    pub fn unit(ring: &Arc<QuotientRing>) -> Self {
        Ideal::new(ring, vec![one_over(ring.vars())]).expect("constant")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Cofactor-tracked basis of `generators ∪ relations`; cofactor indices
    /// past `generators().len()` refer to the relations.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| {
                let mut all = self.gens.clone();
                all.extend(self.ring.relations.iter().cloned());
                groebner_basis(&all, &self.ring.vars, MonomialOrder::Grevlex, true)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        self.groebner()?.contains(p)
    }

    /// Coefficients expressing `p` over the generators modulo the
    /// relations, or `None` when `p` is not in the ideal.
    pub fn express(&self, p: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let w = self.groebner()?.express(p)?;
        Ok(w.map(|mut v| {
            v.truncate(self.gens.len());
            v
        }))
    }

    /// Bézout certificate for `1` when the ideal is the whole ring.
    pub fn is_unit(&self) -> Result<Option<BezoutCertificate>> {
        let gb = self.groebner()?;
        if !gb.is_unit() {
            return Ok(None);
        }
        let coefficients = self
            .express(&one_over(self.ring.vars()))?
            .ok_or_else(|| Error::internal("unit basis without expression of 1"))?;
        let cert = BezoutCertificate { coefficients };
        if !cert.verify(&self.ring, &self.gens)? {
            return Err(Error::internal("Bézout certificate failed verification"));
        }
        Ok(Some(cert))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual containment.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// `(I : f) = {g : g·f ∈ I}`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        let f = f.with_vars(self.ring.vars())?;
        if self.ring.is_zero(&f)? || self.contains(&f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.ring.intersect_plain(&self.gens, std::slice::from_ref(&f), false)?;
        let mut quotients = Vec::with_capacity(meet.len());
        for h in meet {
            quotients.push(h.divide_exact(&f).map_err(|_| {
                Error::internal("element of an intersection with ⟨f⟩ is not divisible by f")
            })?);
        }
        Ideal::new(&self.ring, self.ring.canonical_gens(quotients)?)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring.vars != other.ring.vars {
            return Err(Error::Dimension("ideals live in different rings".into()));
        }
        let meet = self.ring.intersect_plain(&self.gens, &other.gens, true)?;
        Ideal::new(&self.ring, self.ring.canonical_gens(meet)?)
    }

    /// Sum of two ideals.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Intersection with the subring in the variables not listed in
    /// `drop`, returned as an ideal of the correspondingly eliminated ring.
    pub fn eliminate(&self, drop: &[String]) -> Result<Ideal> {
        for d in drop {
            if !self.ring.vars.contains(d) {
                return Err(Error::UnknownVariable(d.clone()));
            }
        }
        let mut order_vars: Vec<String> = drop.to_vec();
        let keep: Vec<String> = self.ring.vars.iter().filter(|v| !drop.contains(v)).cloned().collect();
        order_vars.extend(keep.iter().cloned());
        let front = drop.len();
        let rel_gb = groebner_basis(&self.ring.relations, &order_vars, MonomialOrder::Elimination { front }, false)?;
        let rels: Vec<Polynomial> = rel_gb
            .eliminated(front)
            .into_iter()
            .map(|p| p.with_vars(&keep))
            .collect::<Result<_>>()?;
        let sub = QuotientRing::new(keep.clone(), rels)?;
        let mut all = self.gens.clone();
        all.extend(self.ring.relations.iter().cloned());
        let gb = groebner_basis(&all, &order_vars, MonomialOrder::Elimination { front }, false)?;
        let gens: Vec<Polynomial> = gb
            .eliminated(front)
            .into_iter()
            .map(|p| p.with_vars(&keep))
            .collect::<Result<_>>()?;
        Ideal::new(&sub, sub.canonical_gens(gens)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, v: &[String]) -> Polynomial {
        parse_poly(s, v).unwrap()
    }

    #[test]
    fn colon_examples() {
        let v = vars(&["x", "y"]);
        let r = QuotientRing::free(v.clone());
        let f = p("x^2 + y", &v);
        let i = Ideal::new(&r, vec![f.clone()]).unwrap();
        assert!(i.colon(&f).unwrap().is_unit().unwrap().is_some());

        let xy = Ideal::new(&r, vec![p("x*y", &v)]).unwrap();
        let c = xy.colon(&p("x", &v)).unwrap();
        let y = Ideal::new(&r, vec![p("y", &v)]).unwrap();
        assert!(c.equals(&y).unwrap());
    }

    #[test]
    fn colon_in_cusp_ring() {
        let v = vars(&["u", "v"]);
        let r = QuotientRing::new(v.clone(), vec![p("u^3 - v^2", &v)]).unwrap();
        let i = Ideal::new(&r, vec![p("u^3", &v)]).unwrap();
        let c = i.colon(&p("u", &v)).unwrap();
        assert!(c.contains(&p("v^2", &v)).unwrap());
        assert!(c.contains(&p("u^2", &v)).unwrap());
        assert!(!c.contains(&p("u", &v)).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let v = vars(&["x", "y"]);
        let r = QuotientRing::free(v.clone());
        let x = Ideal::new(&r, vec![p("x", &v)]).unwrap();
        let y = Ideal::new(&r, vec![p("y", &v)]).unwrap();
        let xy = Ideal::new(&r, vec![p("x*y", &v)]).unwrap();
        assert!(x.intersect(&y).unwrap().equals(&xy).unwrap());
        assert!(x.intersect(&x).unwrap().equals(&x).unwrap());
        assert!(x.intersect(&Ideal::unit(&r)).unwrap().equals(&x).unwrap());
    }

    #[test]
    fn eliminate_examples() {
        let v = vars(&["z", "u", "v"]);
        let r = QuotientRing::free(v.clone());
        let i = Ideal::new(&r, vec![p("u - z^2", &v), p("v - z^3", &v)]).unwrap();
        let e = i.eliminate(&["z".to_string()]).unwrap();
        let uv = vars(&["u", "v"]);
        assert_eq!(e.generators(), &[p("v^2 - u^3", &uv)]);

        let xy = vars(&["x", "y"]);
        let r2 = QuotientRing::free(xy.clone());
        let only_x = Ideal::new(&r2, vec![p("x", &xy)]).unwrap();
        assert_eq!(only_x.eliminate(&["y".to_string()]).unwrap().generators(), &[p("x", &vars(&["x"]))]);
        let diag = Ideal::new(&r2, vec![p("x - y", &xy)]).unwrap();
        assert!(diag.eliminate(&["x".to_string()]).unwrap().generators().is_empty());
    }

    #[test]
    fn membership_and_certificates() {
        let v = vars(&["u"]);
        let r = QuotientRing::free(v.clone());
        let i = Ideal::new(&r, vec![p("u", &v)]).unwrap();
        assert!(i.contains(&Polynomial::zero()).unwrap());
        let w = i.express(&p("u^2", &v)).unwrap().unwrap();
        assert_eq!(w, vec![p("u", &v)]);
        let unit = Ideal::unit(&r);
        let cert = unit.is_unit().unwrap().unwrap();
        assert!(cert.coefficients[0].is_one());
        let xy = vars(&["x", "y"]);
        let r2 = QuotientRing::free(xy.clone());
        let proper = Ideal::new(&r2, vec![p("x", &xy), p("y", &xy)]).unwrap();
        assert!(proper.is_unit().unwrap().is_none());
    }
}
