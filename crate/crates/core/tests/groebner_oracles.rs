//! Gröbner bases checked against an independent division and S-pair
//! criterion written here, plus cofactor bookkeeping.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use gefstab::groebner::{groebner_basis, MonomialOrder};
use gefstab::poly::{Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;

type Exps = Vec<u32>;
type Dense = BTreeMap<Exps, Rational>;

fn dense(p: &Polynomial) -> Dense {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

fn grevlex(a: &Exps, b: &Exps) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn lead(p: &Dense) -> Option<(Exps, Rational)> {
    p.iter().max_by(|a, b| grevlex(a.0, b.0)).map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub_scaled(p: &mut Dense, q: &Dense, shift: &Exps, k: &Rational) {
    for (e, c) in q {
        let ee: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = p.entry(ee.clone()).or_insert_with(Rational::zero);
        *v -= k * c;
        if v.is_zero() {
            p.remove(&ee);
        }
    }
}

/// Full multivariate division remainder.
fn remainder(mut p: Dense, basis: &[Dense]) -> Dense {
    let mut rem = Dense::new();
    while let Some((lm, lc)) = lead(&p) {
        let hit = basis.iter().find_map(|g| {
            let (gm, gc) = lead(g)?;
            divides(&gm, &lm).then_some((g, gm, gc))
        });
        match hit {
            Some((g, gm, gc)) => {
                let shift: Exps = lm.iter().zip(&gm).map(|(a, b)| a - b).collect();
                sub_scaled(&mut p, g, &shift, &(&lc / &gc));
            }
            None => {
                p.remove(&lm);
                rem.insert(lm, lc);
            }
        }
    }
    rem
}

fn s_poly(f: &Dense, g: &Dense) -> Dense {
    let (fm, fc) = lead(f).unwrap();
    let (gm, gc) = lead(g).unwrap();
    let l: Exps = fm.iter().zip(&gm).map(|(a, b)| *a.max(b)).collect();
    let sf: Exps = l.iter().zip(&fm).map(|(a, b)| a - b).collect();
    let sg: Exps = l.iter().zip(&gm).map(|(a, b)| a - b).collect();
    let mut out = Dense::new();
    sub_scaled(&mut out, f, &sf, &(-fc.recip()));
    sub_scaled(&mut out, g, &sg, &gc.recip());
    out
}

fn names(k: usize) -> Vec<String> {
    ["x", "y", "w"][..k].iter().map(|s| s.to_string()).collect()
}

fn ideal_gens() -> impl Strategy<Value = (usize, Vec<Polynomial>)> {
    (1usize..=3).prop_flat_map(|k| {
        let term = (prop::collection::vec(0u32..=2, k), -3i64..=3);
        let poly = prop::collection::vec(term, 1..=3)
            .prop_map(move |ts| Polynomial::from_terms(&names(k), ts.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into())))));
        (Just(k), prop::collection::vec(poly, 1..=3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_passes_buchberger_criterion((k, gens) in ideal_gens()) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let vars = names(k);
        let gb = groebner_basis(&gens, &vars, MonomialOrder::Grevlex, true).unwrap();
        let basis: Vec<Dense> = gb.basis().iter().map(dense).collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                prop_assert!(remainder(s_poly(&basis[i], &basis[j]), &basis).is_empty());
            }
        }
        // Every generator reduces to zero, so the ideals agree.
        for g in &gens {
            prop_assert!(remainder(dense(g), &basis).is_empty());
        }
        // Reduced: monic and no term divisible by another leading term.
        for (i, b) in basis.iter().enumerate() {
            let (_, c) = lead(b).unwrap();
            prop_assert_eq!(c, Rational::from_integer(1.into()));
            for (j, other) in basis.iter().enumerate() {
                if i != j {
                    let (om, _) = lead(other).unwrap();
                    prop_assert!(b.keys().all(|e| !divides(&om, e)));
                }
            }
        }
        // Tracked cofactors reproduce each basis element.
        for (i, b) in gb.basis().iter().enumerate() {
            let cof = gb.cofactors(i).unwrap();
            let sum = cof.iter().zip(&gens).fold(Polynomial::zero(), |acc, (h, g)| acc.add(&h.mul(g)));
            prop_assert_eq!(&sum.with_vars(&vars).unwrap(), b);
        }
    }

    #[test]
    fn membership_matches_independent_division((k, gens) in ideal_gens(), mult in -2i64..=2) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let vars = names(k);
        let gb = groebner_basis(&gens, &vars, MonomialOrder::Grevlex, false).unwrap();
        let basis: Vec<Dense> = gb.basis().iter().map(dense).collect();
        let member = gens.iter().fold(Polynomial::zero(), |acc, g| acc.add(&g.mul(&Polynomial::var("x")))).add(&gens[0].scale(&Rational::from_integer(mult.into())));
        prop_assert!(gb.contains(&member).unwrap());
        let probe = Polynomial::var("x").add(&Polynomial::from_int(1));
        let by_oracle = remainder(dense(&probe.with_vars(&vars).unwrap()), &basis).is_empty();
        prop_assert_eq!(gb.contains(&probe).unwrap(), by_oracle);
    }
}

#[test]
fn lex_and_grevlex_describe_one_ideal() {
    let vars = names(3);
    let gens: Vec<Polynomial> = ["x^2 - y", "x*y - w", "y^2 - x*w"]
        .iter()
        .map(|s| gefstab::poly::parse_poly(s, &vars).unwrap())
        .collect();
    let lex = groebner_basis(&gens, &vars, MonomialOrder::Lex, false).unwrap();
    let grev = groebner_basis(&gens, &vars, MonomialOrder::Grevlex, false).unwrap();
    for p in lex.basis() {
        assert!(grev.contains(&p).unwrap());
    }
    for p in grev.basis() {
        assert!(lex.contains(&p).unwrap());
    }
}
