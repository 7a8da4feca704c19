//! Stabilizability decision, local coprime factorizations and controller
//! synthesis from a partition of unity over the elementary factors.

mod verify;

pub use verify::{causality_check, closed_loop, transpose_duality_check, verify_stabilizing, CausalityReport, Verification};

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gef::{gef, in_gef, local_freeness_witness, GefResult, PlantFraction};
use crate::groebner::Ideal;
use crate::matrix::{combinations, IndexSet, Mat};
use crate::poly::{Polynomial, Rational};
use crate::ring::{Fraction, LocalElem, Locale, RingModel};

/// One term `λ_I` of a partition of unity `Σ λ_I = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpEntry {
    pub index_set: IndexSet,
    pub lambda: Polynomial,
}

#[derive(Clone, Debug)]
pub enum Stabilizability {
    Stabilizable(Vec<SharpEntry>),
    /// The elementary factors generate a proper ideal; `evidence` is its
    /// reduced Gröbner basis pushed into A.
    NotStabilizable { evidence: Vec<Polynomial> },
}

impl Stabilizability {
    pub fn is_stabilizable(&self) -> bool {
        matches!(self, Stabilizability::Stabilizable(_))
    }
}

/// Largest family of index sets searched subset by subset for a
/// certificate; beyond it all nonzero factors are used at once.
const SUBSET_SEARCH_LIMIT: usize = 8;

pub fn stabilizable(pf: &PlantFraction) -> Result<Stabilizability> {
    let g = gef(pf)?;
    stabilizable_with(pf, &g)
}

/// Decides whether the elementary factors generate A and, if they do,
/// groups a Bézout certificate by index set. The certificate comes from
/// the first (smallest, then lexicographic) family of index sets whose
/// factors already generate A.
pub fn stabilizable_with(pf: &PlantFraction, g: &GefResult) -> Result<Stabilizability> {
    let ring = pf.ring();
    let nonzero: Vec<usize> = (0..g.entries.len()).filter(|&i| !g.entries[i].generators.is_empty()).collect();
    // Generators lifted to the presentation, each tagged with its owner
    // and its value in A.
    let family_ideal = |family: &[usize]| -> Result<(Ideal, Vec<(usize, Polynomial)>)> {
        let mut gens = Vec::new();
        let mut owner = Vec::new();
        for &i in family {
            for gen in &g.entries[i].generators {
                gens.push(ring.lift(gen)?);
                owner.push((i, gen.clone()));
            }
        }
        Ok((Ideal::new(ring.quotient(), gens)?, owner))
    };
    let (all, _) = family_ideal(&nonzero)?;
    if all.is_unit()?.is_none() {
        let mut evidence = Vec::new();
        for b in all.groebner()?.basis() {
            let p = ring.push(&b)?;
            if !p.is_zero() && !evidence.contains(&p) {
                evidence.push(p);
            }
        }
        return Ok(Stabilizability::NotStabilizable { evidence });
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    if nonzero.len() <= SUBSET_SEARCH_LIMIT {
        for size in 1..=nonzero.len() {
            for c in combinations(nonzero.len(), size) {
                families.push(c.into_iter().map(|k| nonzero[k]).collect());
            }
        }
    } else {
        families.push(nonzero.clone());
    }
    for family in families {
        let (ideal, owner) = family_ideal(&family)?;
        let Some(cert) = ideal.is_unit()? else { continue };
        let mut lambdas: Vec<(usize, Polynomial)> = family.iter().map(|&i| (i, Polynomial::zero())).collect();
        for (h, (i, gen_a)) in cert.coefficients.iter().zip(&owner) {
            let term = ring.push(h)?.mul(gen_a);
            let slot = lambdas.iter_mut().find(|(k, _)| k == i).expect("owner in family");
            slot.1 = slot.1.add(&term);
        }
        let entries: Vec<SharpEntry> = lambdas
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(i, lambda)| SharpEntry { index_set: g.entries[i].index_set.clone(), lambda })
            .collect();
        let total = entries.iter().fold(Polynomial::zero(), |a, e| a.add(&e.lambda));
        if !total.is_one() {
            return Err(Error::internal("grouped certificate does not sum to one"));
        }
        for e in &entries {
            if !in_gef(pf, &e.index_set, &e.lambda)? {
                return Err(Error::internal(format!("λ for {} is not in its elementary factor", e.index_set)));
            }
        }
        return Ok(Stabilizability::Stabilizable(entries));
    }
    Err(Error::internal("unit ideal without a certificate"))
}

/// Coefficients `a_I` with `Σ a_I λ_I^ω = 1`, from the multinomial
/// expansion of `(Σ λ_I)^{s(ω−1)+1}`: each term goes to the first `I`
/// whose exponent reaches `ω`.
pub fn partition_powers(lambdas: &[Polynomial], omega: u32) -> Result<Vec<Polynomial>> {
    let s = lambdas.len();
    if s == 0 || omega == 0 {
        return Err(Error::Dimension("partition of unity needs terms and ω ≥ 1".into()));
    }
    if omega == 1 {
        return Ok(vec![Polynomial::one(); s]);
    }
    let total = s as u32 * (omega - 1) + 1;
    let mut out = vec![Polynomial::zero(); s];
    let mut exps = vec![0u32; s];
    let powers: Vec<Vec<Polynomial>> = lambdas
        .iter()
        .map(|l| {
            let mut v = vec![Polynomial::one()];
            for _ in 0..total {
                let next = v.last().unwrap().mul(l);
                v.push(next);
            }
            v
        })
        .collect();
    compositions(total, s, &mut exps, 0, &mut |e| {
        let owner = e.iter().position(|&x| x >= omega).expect("pigeonhole");
        let coeff = multinomial(total, e);
        let mut term = Polynomial::constant(coeff);
        for (j, &ej) in e.iter().enumerate() {
            let k = if j == owner { ej - omega } else { ej };
            term = term.mul(&powers[j][k as usize]);
        }
        out[owner] = out[owner].add(&term);
    });
    Ok(out)
}

fn compositions(total: u32, parts: usize, buf: &mut Vec<u32>, at: usize, f: &mut dyn FnMut(&[u32])) {
    if at + 1 == parts {
        buf[at] = total;
        f(buf);
        return;
    }
    for x in (0..=total).rev() {
        buf[at] = x;
        compositions(total - x, parts, buf, at + 1, f);
    }
}

fn multinomial(total: u32, parts: &[u32]) -> Rational {
    let fact = |n: u32| (1..=n).fold(BigUint::one(), |a, k| a * k);
    let mut v = fact(total);
    for &p in parts {
        v /= fact(p);
    }
    Rational::from_integer(v.into())
}

/// Right-coprime factorization `P = N_I D_I⁻¹` over A_λ with
/// `Ỹ_I N_I + X̃_I D_I = E_m`.
#[derive(Clone, Debug)]
pub struct LocalFactorization {
    pub index_set: IndexSet,
    pub lambda: Polynomial,
    pub locale: Arc<Locale>,
    pub k: Mat<Polynomial>,
    pub n_i: Mat<LocalElem>,
    pub d_i: Mat<LocalElem>,
    pub y_tilde: Mat<LocalElem>,
    pub x_tilde: Mat<LocalElem>,
    pub x_sel: Mat<Polynomial>,
}

fn to_local(m: &Mat<Polynomial>, loc: &Arc<Locale>) -> Result<Mat<LocalElem>> {
    m.try_map(|x| LocalElem::from_ring(x.clone(), loc))
}

impl LocalFactorization {
    /// `Ỹ N + X̃ D = E_m`.
    pub fn bezout_holds(&self) -> Result<bool> {
        let lhs = self.y_tilde.mul(&self.n_i)?.add(&self.x_tilde.mul(&self.d_i)?)?;
        let e = Mat::identity(self.d_i.rows(), &LocalElem::inv_f_power(0, &self.locale));
        Ok(lhs == e)
    }

    /// Largest power of λ left in any entry of the factors or of the
    /// products the synthesis multiplies out.
    fn max_exponent(&self) -> Result<u32> {
        let mut mx = 0;
        let mut scan = |m: &Mat<LocalElem>| {
            for e in m.entries() {
                mx = mx.max(e.exp());
            }
        };
        scan(&self.n_i);
        scan(&self.d_i);
        scan(&self.y_tilde);
        scan(&self.x_tilde);
        scan(&self.d_i.mul(&self.x_tilde)?);
        scan(&self.d_i.mul(&self.y_tilde)?);
        scan(&self.n_i.mul(&self.y_tilde)?);
        scan(&self.n_i.mul(&self.x_tilde)?);
        Ok(mx)
    }
}

pub fn local_factorization(pf: &PlantFraction, set: &IndexSet, lambda: &Polynomial) -> Result<LocalFactorization> {
    let w = local_freeness_witness(pf, set, lambda)?;
    let ring = pf.ring();
    let n = pf.n();
    let m = pf.m();
    let loc = Locale::new(lambda.clone(), ring)?;
    let lk = w.k_f.try_map(|x| LocalElem::new(x.clone(), 1, &loc))?;
    let rows_n: Vec<usize> = (0..n).collect();
    let rows_m: Vec<usize> = (n..n + m).collect();
    let n_i = lk.select_rows(&rows_n);
    let d_i = lk.select_rows(&rows_m);
    let (_, x_sel) = crate::gef::selection_matrices(pf, set);
    let big = lk.hstack(&to_local(&x_sel, &loc)?)?;
    let det = big.det()?;
    let sign = match det.to_ring() {
        Some(d) if d.is_one() => Polynomial::one(),
        Some(d) if d.neg().is_one() => Polynomial::one().neg(),
        _ => return Err(Error::internal(format!("[λ⁻¹K X] for {set} has determinant {det:?}, not ±1"))),
    };
    let inv = big.adjugate()?.scale(&LocalElem::from_ring(sign, &loc)?);
    let top: Vec<usize> = (0..m).collect();
    let cols_y: Vec<usize> = (0..n).collect();
    let cols_x: Vec<usize> = (n..n + m).collect();
    let lf = LocalFactorization {
        index_set: set.clone(),
        lambda: lambda.clone(),
        locale: loc.clone(),
        k: w.k_f,
        n_i,
        d_i,
        y_tilde: inv.submatrix(&top, &cols_y),
        x_tilde: inv.submatrix(&top, &cols_x),
        x_sel,
    };
    if !lf.bezout_holds()? {
        return Err(Error::internal(format!("local Bézout identity fails for {set}")));
    }
    // P = N_I D_I⁻¹ ⇔ d·N_I = N·D_I.
    let d = LocalElem::from_ring(pf.den().clone(), &loc)?;
    let lhs = lf.n_i.scale(&d);
    let rhs = to_local(pf.num(), &loc)?.mul(&lf.d_i)?;
    if lhs != rhs {
        return Err(Error::internal(format!("local factorization for {set} does not reproduce P")));
    }
    Ok(lf)
}

/// Result of making `A + R'B` Z-nonsingular.
#[derive(Clone, Debug)]
pub struct Repair {
    pub r_prime: Mat<Polynomial>,
    /// `det(A + R'B)`.
    pub det: Polynomial,
    /// 0-based rows of `[A; B]` forming the chosen minor.
    pub rows: Vec<usize>,
}

/// 0/1 matrix `R'` with `det(A + R'B) ∈ A∖Z`, built from the first
/// Z-nonsingular full-size minor of `[A; B]` in order of fewest B-rows,
/// then lexicographic row choice.
pub fn repair_nonsingular(ring: &Arc<RingModel>, a: &Mat<Polynomial>, b: &Mat<Polynomial>) -> Result<Repair> {
    let m = a.rows();
    let nb = b.rows();
    if !a.is_square() || b.cols() != m {
        return Err(Error::Dimension("repair needs square A and B with matching columns".into()));
    }
    let zero = Polynomial::zero();
    let det_a = a.det()?;
    if ring.is_z_unit_like(&det_a) {
        return Ok(Repair { r_prime: Mat::filled(m, nb, &zero), det: det_a, rows: (0..m).collect() });
    }
    let stack = a.vstack(b)?;
    let all_cols: Vec<usize> = (0..m).collect();
    let candidates = combinations(m + nb, m);
    for k in 1..=m.min(nb) {
        for rows in candidates.iter().filter(|r| r.iter().filter(|&&i| i >= m).count() == k) {
            let minor = stack.submatrix(rows, &all_cols).det()?;
            if !ring.is_z_unit_like(&minor) {
                continue;
            }
            let missing: Vec<usize> = (0..m).filter(|i| !rows.contains(i)).collect();
            let chosen_b: Vec<usize> = rows.iter().filter(|&&i| i >= m).map(|i| i - m).collect();
            let mut r = Mat::filled(m, nb, &zero);
            for (&i, &j) in missing.iter().zip(&chosen_b) {
                r.set(i, j, Polynomial::one());
            }
            let repaired = a.add(&r.mul(b)?)?;
            let det = repaired.det()?;
            if !ring.is_z_unit_like(&det) {
                return Err(Error::RepairImpossible(format!("det(A + R'B) = {det} lies in Z")));
            }
            return Ok(Repair { r_prime: r, det, rows: rows.clone() });
        }
    }
    Err(Error::NoNonsingularMinor)
}

/// Repair applied to the controller denominator.
#[derive(Clone, Debug)]
pub struct RepairRecord {
    pub index_set: IndexSet,
    pub a_block: Mat<Polynomial>,
    pub b_block: Mat<Polynomial>,
    pub repair: Repair,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub entries: Vec<SharpEntry>,
    pub omega: u32,
    /// `a_I`, aligned with `entries`.
    pub coefficients: Vec<Polynomial>,
}

impl Certificate {
    /// `Σ a_I λ_I^ω = 1`.
    pub fn holds(&self) -> bool {
        let s = self
            .entries
            .iter()
            .zip(&self.coefficients)
            .fold(Polynomial::zero(), |acc, (e, a)| acc.add(&a.mul(&e.lambda.pow(self.omega))));
        s.is_one()
    }
}

#[derive(Clone, Debug)]
pub struct ControllerResult {
    pub controller: Mat<Fraction>,
    pub den: Mat<Polynomial>,
    pub num: Mat<Polynomial>,
    pub h: Mat<Polynomial>,
    pub certificate: Certificate,
    pub gef: GefResult,
    pub factorizations: Vec<LocalFactorization>,
    pub repair: Option<RepairRecord>,
    pub verification: Verification,
}

/// `Σ a_I λ_I^ω D_I X̃_I` and `Σ a_I λ_I^ω D_I Ỹ_I` over A.
fn den_num(
    facts: &[LocalFactorization],
    coeffs: &[Polynomial],
    omega: u32,
    m: usize,
    n: usize,
) -> Result<(Mat<Polynomial>, Mat<Polynomial>)> {
    let zero = Polynomial::zero();
    let mut den = Mat::filled(m, m, &zero);
    let mut num = Mat::filled(m, n, &zero);
    let clear = |x: &LocalElem| {
        x.times_f_power(omega)
            .to_ring()
            .ok_or_else(|| Error::internal("λ^ω does not clear a localized entry"))
    };
    for (lf, a) in facts.iter().zip(coeffs) {
        let dx = lf.d_i.mul(&lf.x_tilde)?.try_map(clear)?;
        let dy = lf.d_i.mul(&lf.y_tilde)?.try_map(clear)?;
        den = den.add(&dx.scale(a))?;
        num = num.add(&dy.scale(a))?;
    }
    Ok((den, num))
}

fn ring_to_fraction(m: &Mat<Polynomial>) -> Mat<Fraction> {
    m.map(|x| Fraction::from_poly(x.clone()))
}

/// Builds and verifies a stabilizing controller.
pub fn synthesize(pf: &PlantFraction) -> Result<ControllerResult> {
    let ring = pf.ring().clone();
    let m = pf.m();
    let n = pf.n();
    let g = gef(pf)?;
    let sharp = match stabilizable_with(pf, &g)? {
        Stabilizability::Stabilizable(s) => s,
        Stabilizability::NotStabilizable { .. } => return Err(Error::NotStabilizable),
    };
    let mut facts = sharp
        .iter()
        .map(|e| local_factorization(pf, &e.index_set, &e.lambda))
        .collect::<Result<Vec<_>>>()?;
    let mut omega = 1;
    for lf in &facts {
        omega = omega.max(lf.max_exponent()?);
    }
    let lambdas: Vec<Polynomial> = sharp.iter().map(|e| e.lambda.clone()).collect();
    let coeffs = partition_powers(&lambdas, omega)?;
    let certificate = Certificate { entries: sharp.clone(), omega, coefficients: coeffs.clone() };
    if !certificate.holds() {
        return Err(Error::internal("Σ a_I λ_I^ω ≠ 1"));
    }
    let (mut den, mut num) = den_num(&facts, &coeffs, omega, m, n)?;
    let mut repair = None;
    if !ring.is_z_nonsingular(&den)? {
        let k0 = (0..facts.len())
            .find(|&k| !ring.in_z(&coeffs[k]) && !ring.in_z(&lambdas[k]))
            .ok_or_else(|| Error::RepairImpossible("every a_I or λ_I lies in Z".into()))?;
        let lf = &facts[k0];
        let lw = lf.lambda.pow(omega);
        let clear = |x: &LocalElem| {
            x.times_f_power(omega)
                .to_ring()
                .ok_or_else(|| Error::internal("λ^ω does not clear a factor entry"))
        };
        let d_prime = lf.d_i.try_map(clear)?;
        let n_prime = lf.n_i.try_map(clear)?;
        let adj_d = d_prime.adjugate()?;
        let det_d = d_prime.det()?;
        let n_tilde = n_prime.mul(&adj_d)?;
        let d_tilde = Mat::identity(n, &Polynomial::one()).scale(&det_d);
        let scale_b = coeffs[k0].mul(&lw).mul(&det_d).neg();
        let b_block = n_tilde.scale(&scale_b);
        let fix = repair_nonsingular(&ring, &den, &b_block)?;
        let r = adj_d.mul(&fix.r_prime)?.scale(&lw);
        let loc = lf.locale.clone();
        let r_loc = to_local(&r, &loc)?;
        let new_x = lf.x_tilde.sub(&r_loc.mul(&to_local(&n_tilde, &loc)?)?)?;
        let new_y = lf.y_tilde.add(&r_loc.mul(&to_local(&d_tilde, &loc)?)?)?;
        let expected = den.add(&fix.r_prime.mul(&b_block)?)?;
        let a_block = den.clone();
        facts[k0].x_tilde = new_x;
        facts[k0].y_tilde = new_y;
        if !facts[k0].bezout_holds()? {
            return Err(Error::internal("Bézout identity lost after repair"));
        }
        let (d2, n2) = den_num(&facts, &coeffs, omega, m, n)?;
        if d2 != expected {
            return Err(Error::internal("repaired denominator differs from A + R'B"));
        }
        if !ring.is_z_nonsingular(&d2)? {
            return Err(Error::RepairImpossible("repaired denominator is still Z-singular".into()));
        }
        den = d2;
        num = n2;
        repair = Some(RepairRecord { index_set: facts[k0].index_set.clone(), a_block, b_block, repair: fix });
    }
    let det_den = den.det()?;
    let inv_det = Fraction::new(Polynomial::one(), det_den)?;
    let controller = ring_to_fraction(&den.adjugate()?.mul(&num)?).scale(&inv_det);

    // Den + Num·P = E_m, hence (E + CP)⁻¹ = Den.
    let lhs = ring_to_fraction(&den).add(&ring_to_fraction(&num).mul(pf.plant())?)?;
    if lhs != Mat::identity(m, &Fraction::one()) {
        return Err(Error::internal("Den + Num·P ≠ E"));
    }
    let verification = verify_stabilizing(&ring, pf.plant(), &controller)?;
    if !verification.stabilizing {
        return Err(Error::internal("synthesized controller failed closed-loop verification"));
    }
    let h = verification
        .h_over_ring(&ring)
        .ok_or_else(|| Error::internal("closed loop not over A"))?;
    let rows_m: Vec<usize> = (n..n + m).collect();
    let cols_n: Vec<usize> = (0..n).collect();
    let cols_m: Vec<usize> = (n..n + m).collect();
    if h.submatrix(&rows_m, &cols_m) != den || h.submatrix(&rows_m, &cols_n) != num {
        return Err(Error::internal("closed-loop blocks disagree with Den and Num"));
    }
    Ok(ControllerResult { controller, den, num, h, certificate, gef: g, factorizations: facts, repair, verification })
}

/// `Σ a_I λ_I^ω`.
pub fn weighted_sum(lambdas: &[Polynomial], coeffs: &[Polynomial], omega: u32) -> Polynomial {
    lambdas
        .iter()
        .zip(coeffs)
        .fold(Polynomial::zero(), |acc, (l, a)| acc.add(&a.mul(&l.pow(omega))))
}
