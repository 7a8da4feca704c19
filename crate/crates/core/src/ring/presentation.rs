//! Quotient-ring presentation ℚ[u₁…u_k]/R of a monomial subalgebra
//! ℚ[z^{e₁},…,z^{e_k}], with lifting by normal form and pushing by
//! substitution.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis, MonomialOrder, QuotientRing};
use crate::poly::Polynomial;

#[derive(Debug)]
pub struct Presentation {
    delay_var: Option<String>,
    pres_vars: Vec<String>,
    /// `z^{e_i}` for each presentation variable; identity images for a
    /// full polynomial ring.
    images: Vec<Polynomial>,
    lift_basis: Option<GroebnerBasis>,
    quotient: Arc<QuotientRing>,
}

fn pres_names(k: usize, avoid: &str) -> Vec<String> {
    let base: Vec<String> = if k <= 3 {
        ["u", "v", "w"][..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("u{i}")).collect()
    };
    base.into_iter()
        .map(|mut n| {
            while n == avoid {
                n.push('_');
            }
            n
        })
        .collect()
}

impl Presentation {
    /// Trivial presentation of the full polynomial ring over `vars`.
    pub fn identity(vars: &[String]) -> Self {
        Presentation {
            delay_var: None,
            pres_vars: vars.to_vec(),
            images: vars.iter().map(|v| Polynomial::var(v)).collect(),
            lift_basis: None,
            quotient: QuotientRing::free(vars.to_vec()),
        }
    }

    /// Presentation of ℚ[z^{e₁},…,z^{e_k}] by elimination of `z` from
    /// `⟨u_i − z^{e_i}⟩` under a block order with `z` greatest.
    pub fn monomial(delay_var: &str, exponents: &[u32]) -> Result<Self> {
        let pres_vars = pres_names(exponents.len(), delay_var);
        let mut all = vec![delay_var.to_string()];
        all.extend(pres_vars.iter().cloned());
        let images: Vec<Polynomial> = exponents
            .iter()
            .map(|&e| Polynomial::monomial_in(delay_var, e, crate::poly::rat(1)))
            .collect();
        let gens: Vec<Polynomial> = pres_vars
            .iter()
            .zip(&images)
            .map(|(u, img)| Polynomial::var(u).sub(img))
            .collect();
        let gb = groebner_basis(&gens, &all, MonomialOrder::Elimination { front: 1 }, false)?;
        let relations: Vec<Polynomial> = gb
            .eliminated(1)
            .into_iter()
            .map(|p| p.with_vars(&pres_vars).map(|q| q.normalize_first()))
            .collect::<Result<_>>()?;
        let quotient = QuotientRing::new(pres_vars.clone(), relations)?;
        Ok(Presentation {
            delay_var: Some(delay_var.to_string()),
            pres_vars,
            images,
            lift_basis: Some(gb),
            quotient,
        })
    }

    pub fn pres_vars(&self) -> &[String] {
        &self.pres_vars
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.quotient.relations()
    }

    pub fn quotient(&self) -> &Arc<QuotientRing> {
        &self.quotient
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Preimage of `a` in the presentation ring. Fails when `a` is not in
    /// the subalgebra.
    pub fn lift(&self, a: &Polynomial) -> Result<Polynomial> {
        let Some(gb) = &self.lift_basis else {
            return a.with_vars(&self.pres_vars);
        };
        let nf = gb.normal_form(a).map_err(|_| Error::NotInRing(a.to_string()))?;
        let dv = self.delay_var.as_deref().unwrap_or_default();
        if nf.degree_in(dv) > 0 {
            return Err(Error::NotInRing(a.to_string()));
        }
        nf.with_vars(&self.pres_vars)
    }

    /// Image under `u_i ↦ z^{e_i}`.
    pub fn push(&self, q: &Polynomial) -> Result<Polynomial> {
        if self.lift_basis.is_none() {
            return Ok(q.clone());
        }
        Ok(q.with_vars(&self.pres_vars)?.compose(&self.images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn cusp_relations_and_lift() {
        let p = Presentation::monomial("z", &[2, 3]).unwrap();
        let uv = vec!["u".to_string(), "v".to_string()];
        assert_eq!(p.relations(), &[parse_poly("v^2 - u^3", &uv).unwrap()]);
        let z = vec!["z".to_string()];
        let z7 = parse_poly("z^7", &z).unwrap();
        let l = p.lift(&z7).unwrap();
        assert_eq!(l, parse_poly("u^2*v", &uv).unwrap());
        assert_eq!(p.push(&l).unwrap(), z7);
        assert!(p.push(&parse_poly("u^3 - v^2", &uv).unwrap()).unwrap().is_zero());
        assert!(p.lift(&Polynomial::one()).unwrap().is_one());
        assert!(matches!(p.lift(&parse_poly("z", &z).unwrap()), Err(Error::NotInRing(_))));
    }

    #[test]
    fn other_semigroups() {
        let p = Presentation::monomial("z", &[2, 5]).unwrap();
        let uv = vec!["u".to_string(), "v".to_string()];
        assert_eq!(p.relations(), &[parse_poly("v^2 - u^5", &uv).unwrap()]);
        let full = Presentation::identity(&["x".to_string(), "y".to_string()]);
        assert!(full.relations().is_empty());
    }
}
