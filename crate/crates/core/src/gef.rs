//! Scalar-denominator fractions of a plant and its generalized elementary
//! factors Λ_I = {λ ∈ A : λT = KΔ_I T for some K over A}.
//!
//! With `T = [N; dE_m]` and `C = T·adj(Δ_I T)`, a nonzero `δ = det(Δ_I T)`
//! gives `K = λC/δ`, so Λ_I is the intersection of the colon ideals
//! `(δA :_A c_rs)` over the entries of `C`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::matrix::{enumerate_index_sets, selection, IndexSet, Mat};
use crate::poly::{gcd_univariate, Polynomial, Rational};
use crate::ring::{Fraction, RingModel, ZMode};

/// `P = N·d⁻¹` with `N` over A, `d ∈ A∖Z`, and `T = [N; d·E_m]`.
#[derive(Clone, Debug)]
pub struct PlantFraction {
    ring: Arc<RingModel>,
    plant: Mat<Fraction>,
    num: Mat<Polynomial>,
    den: Polynomial,
    t: Mat<Polynomial>,
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let g = gcd_univariate(a, b)?;
    a.mul(b).divide_exact(&g)
}

/// Scales `(num, den)` so that `den` has constant term one when possible.
fn normalize_pair(num: Mat<Polynomial>, den: Polynomial) -> (Mat<Polynomial>, Polynomial) {
    let c = den.constant_term();
    let k = if !c.is_zero() {
        c.recip()
    } else {
        let lead = den.terms().next_back().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
        lead.recip()
    };
    if k.is_one() {
        return (num, den);
    }
    (num.map(|x| x.scale(&k)), den.scale(&k))
}

impl PlantFraction {
    /// Builds the fraction from a numerator matrix and a scalar denominator.
    pub fn from_parts(ring: &Arc<RingModel>, num: Mat<Polynomial>, den: Polynomial) -> Result<Self> {
        if !ring.is_z_unit_like(&den) {
            return Err(Error::NotCausal(format!("denominator {den} is not in A∖Z")));
        }
        for e in num.entries() {
            if !ring.contains(e) {
                return Err(Error::NotInRing(e.to_string()));
            }
        }
        let plant = num.try_map(|x| Fraction::new(x.clone(), den.clone()))?;
        let m = num.cols();
        let d_block = Mat::identity(m, &Polynomial::one()).scale(&den);
        let t = num.vstack(&d_block)?;
        Ok(PlantFraction { ring: ring.clone(), plant, num, den, t })
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    /// Number of plant inputs.
    pub fn m(&self) -> usize {
        self.num.cols()
    }

    /// Number of plant outputs.
    pub fn n(&self) -> usize {
        self.num.rows()
    }

    pub fn plant(&self) -> &Mat<Fraction> {
        &self.plant
    }

    pub fn num(&self) -> &Mat<Polynomial> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn t(&self) -> &Mat<Polynomial> {
        &self.t
    }

    /// `Δ_I T`.
    pub fn delta_t(&self, set: &IndexSet) -> Mat<Polynomial> {
        self.t.select_rows(&set.zero_based())
    }
}

/// Chooses `d ∈ A∖Z` and `N = P·d` over A.
///
/// Univariate rings start from the lcm `d₀` of the reduced denominators and
/// try the multipliers `1`, `d₀(−z)` and then the minimal-degree multiplier
/// found by the causality search. Multivariate rings use the product of the
/// distinct denominators.
pub fn scalar_denominator(plant: &Mat<Fraction>, ring: &Arc<RingModel>) -> Result<PlantFraction> {
    if plant.rows() == 0 || plant.cols() == 0 {
        return Err(Error::Dimension("plant must have at least one input and one output".into()));
    }
    for x in plant.entries() {
        if !ring.causal(x) {
            return Err(Error::NotCausal(x.to_string()));
        }
    }
    let vars = ring.ambient_vars().to_vec();
    let align = |p: &Polynomial| p.with_vars(&vars);
    if plant.is_zero() {
        let num = Mat::filled(plant.rows(), plant.cols(), &Polynomial::zero());
        return PlantFraction::from_parts(ring, num, Polynomial::one());
    }
    let Some(dv) = ring.delay_var().map(str::to_string) else {
        let mut dens: Vec<Polynomial> = Vec::new();
        for x in plant.entries() {
            if !x.den().is_constant() && !dens.contains(x.den()) {
                dens.push(x.den().clone());
            }
        }
        let d = dens.iter().fold(Polynomial::one(), |a, b| a.mul(b));
        let num = plant.try_map(|x| align(&x.num().mul(&d.divide_exact(x.den())?)))?;
        let (num, d) = normalize_pair(num, align(&d)?);
        return PlantFraction::from_parts(ring, num, d);
    };

    let mut d0 = Polynomial::one();
    for x in plant.entries() {
        d0 = lcm(&d0, x.den())?;
    }
    let n0 = plant.try_map(|x| x.num().mul(&d0.divide_exact(x.den())?).with_vars(&vars))?;
    let d0 = align(&d0)?;

    let works = |s: &Polynomial| -> bool {
        let d = d0.mul(s);
        ring.is_z_unit_like(&d) && n0.entries().all(|x| ring.contains(&x.mul(s)))
    };
    let mirrored = d0.compose(&[Polynomial::var(&dv).neg()]).with_vars(&vars)?;
    let mut candidates = vec![Polynomial::one(), mirrored];
    let mut probe: Vec<Polynomial> = vec![d0.clone()];
    probe.extend(n0.entries().cloned());
    if let Some(s) = ring.causal_multiplier(&probe) {
        candidates.push(s);
    }
    if ring.z_mode() == ZMode::ZeroIdeal {
        if let Some(sg) = ring.semigroup() {
            candidates.push(Polynomial::monomial_in(&dv, sg.conductor(), Rational::one()));
        }
    }
    for s in candidates {
        if works(&s) {
            let num = n0.map(|x| x.mul(&s));
            let (num, d) = normalize_pair(num, d0.mul(&s));
            return PlantFraction::from_parts(ring, num, d);
        }
    }
    Err(Error::NotCausal("no common denominator in A∖Z was found".into()))
}

/// Λ_I for one index set.
#[derive(Clone, Debug)]
pub struct GefEntry {
    pub index_set: IndexSet,
    /// `det(Δ_I T)`.
    pub delta: Polynomial,
    /// Generators in A, normalized so the first printed term has
    /// coefficient one. Empty for the zero ideal.
    pub generators: Vec<Polynomial>,
    pub singular: bool,
    ideal: Ideal,
}

impl GefEntry {
    /// Λ_I as an ideal of the presentation ring.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }
}

#[derive(Clone, Debug)]
pub struct GefResult {
    pub entries: Vec<GefEntry>,
}

impl GefResult {
    pub fn entry(&self, set: &IndexSet) -> Option<&GefEntry> {
        self.entries.iter().find(|e| &e.index_set == set)
    }
}

/// Ideal of A generated by `gens`, lifted into the presentation ring.
pub fn ideal_of(ring: &Arc<RingModel>, gens: &[Polynomial]) -> Result<Ideal> {
    let lifted = gens.iter().map(|g| ring.lift(g)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring.quotient(), lifted)
}

/// Whether `a ∈ A` lies in the ideal of A generated by `gens`.
pub fn ideal_contains(ring: &Arc<RingModel>, gens: &[Polynomial], a: &Polynomial) -> Result<bool> {
    ideal_of(ring, gens)?.contains(&ring.lift(a)?)
}

fn push_generators(ring: &Arc<RingModel>, ideal: &Ideal) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        let p = ring.push(g)?;
        if p.is_zero() {
            continue;
        }
        let p = p.normalize_first();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Drops generators that lie in the ideal generated by the others.
fn minimize(ring: &Arc<RingModel>, mut gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    if gens.len() > 12 {
        return Ok(gens);
    }
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        if gens.len() == 1 {
            break;
        }
        let others: Vec<Polynomial> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        if ideal_contains(ring, &others, &gens[i])? {
            gens.remove(i);
        }
    }
    Ok(gens)
}

/// `C = T·adj(Δ_I T)` and `δ = det(Δ_I T)`.
fn adjoint_data(pf: &PlantFraction, set: &IndexSet) -> Result<(Mat<Polynomial>, Polynomial)> {
    let dt = pf.delta_t(set);
    let delta = dt.det()?;
    let c = pf.t.mul(&dt.adjugate()?)?;
    Ok((c, delta))
}

/// `K = λC/δ`, or `None` when some entry is not an element of A.
fn k_matrix(pf: &PlantFraction, c: &Mat<Polynomial>, delta: &Polynomial, lambda: &Polynomial) -> Option<Mat<Polynomial>> {
    let mut rows = Vec::with_capacity(c.rows());
    for i in 0..c.rows() {
        let mut row = Vec::with_capacity(c.cols());
        for j in 0..c.cols() {
            let q = lambda.mul(c.get(i, j)).divide_exact(delta).ok()?;
            if !pf.ring.contains(&q) {
                return None;
            }
            row.push(q);
        }
        rows.push(row);
    }
    Mat::from_rows(rows).ok()
}

fn gef_entry(pf: &PlantFraction, set: &IndexSet) -> Result<GefEntry> {
    let ring = &pf.ring;
    let (c, delta) = adjoint_data(pf, set)?;
    if delta.is_zero() {
        return Ok(GefEntry {
            index_set: set.clone(),
            delta,
            generators: Vec::new(),
            singular: true,
            ideal: Ideal::new(ring.quotient(), Vec::new())?,
        });
    }
    let delta_lift = ring.lift(&delta)?;
    let principal = Ideal::new(ring.quotient(), vec![delta_lift])?;
    let mut acc: Option<Ideal> = None;
    let mut seen: Vec<Polynomial> = Vec::new();
    for entry in c.entries() {
        // Entries with c/δ ∈ A impose no constraint.
        if let Ok(q) = entry.divide_exact(&delta) {
            if ring.contains(&q) {
                continue;
            }
        }
        let normalized = entry.normalize_first();
        if seen.contains(&normalized) {
            continue;
        }
        seen.push(normalized);
        let colon = principal.colon(&ring.lift(entry)?)?;
        acc = Some(match acc {
            None => colon,
            Some(prev) => prev.intersect(&colon)?,
        });
    }
    let ideal = match acc {
        Some(i) => i,
        None => Ideal::unit(ring.quotient()),
    };
    let generators = minimize(ring, push_generators(ring, &ideal)?)?;
    for g in &generators {
        if k_matrix(pf, &c, &delta, g).is_none() {
            return Err(Error::internal(format!(
                "generator {g} of the elementary factor for {set} admits no K over A"
            )));
        }
    }
    let ideal = ideal_of(ring, &generators)?;
    Ok(GefEntry { index_set: set.clone(), delta, generators, singular: false, ideal })
}

/// Λ_I for every index set, in lexicographic order.
pub fn gef(pf: &PlantFraction) -> Result<GefResult> {
    let entries = enumerate_index_sets(pf.m(), pf.n())
        .iter()
        .map(|set| gef_entry(pf, set))
        .collect::<Result<Vec<_>>>()?;
    Ok(GefResult { entries })
}

/// Whether `λ ∈ Λ_I`, decided directly from the definition.
pub fn in_gef(pf: &PlantFraction, set: &IndexSet, lambda: &Polynomial) -> Result<bool> {
    if lambda.is_zero() {
        return Ok(true);
    }
    let (c, delta) = adjoint_data(pf, set)?;
    if delta.is_zero() {
        return Ok(false);
    }
    Ok(pf.ring.contains(lambda) && k_matrix(pf, &c, &delta, lambda).is_some())
}

/// `f^ν·T = K_f·V_f` with `V_f` nonsingular.
#[derive(Clone, Debug)]
pub struct LocalFreenessWitness {
    pub f: Polynomial,
    pub nu: u32,
    pub k_f: Mat<Polynomial>,
    pub v_f: Mat<Polynomial>,
}

impl LocalFreenessWitness {
    pub fn verify(&self, pf: &PlantFraction) -> Result<bool> {
        let lhs = pf.t.scale(&self.f.pow(self.nu));
        let rhs = self.k_f.mul(&self.v_f)?;
        Ok(lhs == rhs && !self.v_f.det()?.is_zero())
    }
}

/// Witness with `f = λ^power`, `ν = 1`, `K_f = K` and
/// `V_f = λ^{power−1}·Δ_I T`, where `λT = KΔ_I T`.
pub fn local_freeness_witness_with_power(
    pf: &PlantFraction,
    set: &IndexSet,
    lambda: &Polynomial,
    power: u32,
) -> Result<LocalFreenessWitness> {
    if lambda.is_zero() || power == 0 {
        return Err(Error::MembershipFailed);
    }
    let (c, delta) = adjoint_data(pf, set)?;
    if delta.is_zero() || !pf.ring.contains(lambda) {
        return Err(Error::MembershipFailed);
    }
    let k = k_matrix(pf, &c, &delta, lambda).ok_or(Error::MembershipFailed)?;
    let v = pf.delta_t(set).scale(&lambda.pow(power - 1));
    let w = LocalFreenessWitness { f: lambda.pow(power), nu: 1, k_f: k, v_f: v };
    if !w.verify(pf)? {
        return Err(Error::internal("local freeness witness does not satisfy f^ν T = K V"));
    }
    Ok(w)
}

/// Witness with `f = λ`, `ν = 1`, `V_f = Δ_I T`.
pub fn local_freeness_witness(pf: &PlantFraction, set: &IndexSet, lambda: &Polynomial) -> Result<LocalFreenessWitness> {
    local_freeness_witness_with_power(pf, set, lambda, 1)
}

/// `Δ_I` and `X_I` over A.
pub fn selection_matrices(pf: &PlantFraction, set: &IndexSet) -> (Mat<Polynomial>, Mat<Polynomial>) {
    selection(set, pf.m(), pf.n(), &Polynomial::one())
}
