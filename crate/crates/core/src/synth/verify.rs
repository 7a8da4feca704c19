//! Closed-loop transfer matrix H(P, C) and the checks built on it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Polynomial;
use crate::ring::{Fraction, RingModel};

fn inverse(m: &Mat<Fraction>) -> Result<(Mat<Fraction>, Fraction)> {
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::IllPosed);
    }
    let inv_det = det.inv()?;
    Ok((m.adjugate()?.scale(&inv_det), det))
}

/// `H(P, C) = [[(E+PC)⁻¹, −P(E+CP)⁻¹], [C(E+PC)⁻¹, (E+CP)⁻¹]]` together
/// with `det(E_n + PC)`.
pub fn closed_loop(p: &Mat<Fraction>, c: &Mat<Fraction>) -> Result<(Mat<Fraction>, Fraction)> {
    let n = p.rows();
    let m = p.cols();
    if c.rows() != m || c.cols() != n {
        return Err(Error::Dimension(format!(
            "controller must be {m}x{n} for a {n}x{m} plant, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let one = Fraction::one();
    let e_n = Mat::identity(n, &one);
    let e_m = Mat::identity(m, &one);
    let (h11, det) = inverse(&e_n.add(&p.mul(c)?)?)?;
    let (h22, _) = inverse(&e_m.add(&c.mul(p)?)?)?;
    let h12 = p.mul(&h22)?.neg();
    let h21 = c.mul(&h11)?;
    let top = h11.hstack(&h12)?;
    let bottom = h21.hstack(&h22)?;
    Ok((top.vstack(&bottom)?, det))
}

/// Outcome of checking that `C` stabilizes `P`.
#[derive(Clone, Debug)]
pub struct Verification {
    /// `det(E_n + PC)`, nonzero for a well-posed loop.
    pub det_e_pc: Fraction,
    pub h: Mat<Fraction>,
    /// Per-entry membership in A, row-major.
    pub in_ring: Vec<bool>,
    /// `H₁₁ + P·H₂₁ = E_n`.
    pub consistent: bool,
    pub stabilizing: bool,
}

impl Verification {
    /// H with entries in A, available when the pair is stabilizing.
    pub fn h_over_ring(&self, ring: &Arc<RingModel>) -> Option<Mat<Polynomial>> {
        if !self.stabilizing {
            return None;
        }
        self.h.try_map(|x| ring.fraction_value(x).ok_or(Error::MembershipFailed)).ok()
    }
}

pub fn verify_stabilizing(ring: &Arc<RingModel>, p: &Mat<Fraction>, c: &Mat<Fraction>) -> Result<Verification> {
    let (h, det) = closed_loop(p, c)?;
    let in_ring: Vec<bool> = h.entries().map(|x| ring.fraction_value(x).is_some()).collect();
    let n = p.rows();
    let m = p.cols();
    let rows_n: Vec<usize> = (0..n).collect();
    let rows_m: Vec<usize> = (n..n + m).collect();
    let h11 = h.submatrix(&rows_n, &rows_n);
    let h21 = h.submatrix(&rows_m, &rows_n);
    let consistent = h11.add(&p.mul(&h21)?)? == Mat::identity(n, &Fraction::one());
    let stabilizing = consistent && in_ring.iter().all(|&b| b);
    Ok(Verification { det_e_pc: det, h, in_ring, consistent, stabilizing })
}

/// `H(Pᵗ, Cᵗ)ᵗ = [[H₂₂, H₂₁], [H₁₂, H₁₁]]`, and stabilization carries over
/// to the transposed pair.
pub fn transpose_duality_check(ring: &Arc<RingModel>, p: &Mat<Fraction>, c: &Mat<Fraction>) -> Result<bool> {
    let (h, _) = closed_loop(p, c)?;
    let (ht, _) = closed_loop(&p.transpose(), &c.transpose())?;
    let n = p.rows();
    let m = p.cols();
    let perm: Vec<usize> = (n..n + m).chain(0..n).collect();
    let permuted = h.submatrix(&perm, &perm);
    if ht.transpose() != permuted {
        return Ok(false);
    }
    let forward = verify_stabilizing(ring, p, c)?.stabilizing;
    let backward = verify_stabilizing(ring, &p.transpose(), &c.transpose())?.stabilizing;
    Ok(forward == backward)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalityReport {
    /// `Some` when a denominator matrix was supplied.
    pub den_z_nonsingular: Option<bool>,
    pub controller_causal: bool,
    pub plant_strictly_causal: bool,
    pub passed: bool,
}

/// A Z-nonsingular denominator makes every controller entry causal; a
/// strictly causal plant forces every stabilizing controller to be causal.
pub fn causality_check(
    ring: &Arc<RingModel>,
    p: &Mat<Fraction>,
    c: &Mat<Fraction>,
    den: Option<&Mat<Polynomial>>,
) -> Result<CausalityReport> {
    let den_z_nonsingular = den.map(|d| ring.is_z_nonsingular(d)).transpose()?;
    let controller_causal = c.entries().all(|x| ring.causal(x));
    let plant_strictly_causal = p.entries().all(|x| ring.strictly_causal(x));
    let mut passed = true;
    if den_z_nonsingular == Some(true) && !controller_causal {
        passed = false;
    }
    if den_z_nonsingular == Some(false) {
        passed = false;
    }
    if plant_strictly_causal && !controller_causal {
        passed = false;
    }
    Ok(CausalityReport { den_z_nonsingular, controller_causal, plant_strictly_causal, passed })
}
