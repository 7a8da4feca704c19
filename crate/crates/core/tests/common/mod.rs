#![allow(dead_code)]

use std::sync::Arc;

use gefstab::gef::{scalar_denominator, PlantFraction};
use gefstab::matrix::Mat;
use gefstab::poly::Polynomial;
use gefstab::ring::{Fraction, RingModel, ZMode};

pub const ALPHA1: &str = "(1/5852)*(-4233 - 23646*z^2 - 39836*z^3 - 201780*z^4 - 113016*z^5 + 75344*z^6)";
pub const ALPHA2: &str = "(1/5852)*(10085 + 18418*z^2 + 121140*z^3 + 131852*z^4 + 113016*z^5)";
pub const LAMBDA01: &str = "(1+2*z)*(1-3*z)*(1+z+z^2)";
pub const LAMBDA02: &str = "(1+z)*(1+2*z+4*z^2)*(1-3*z+z^2)";
pub const Q3: &str = "(1+z)*(1+2*z)*(1-3*z)";
pub const Q4: &str = "(1+z)*(1+2*z)*(1-3*z+z^2)";

pub fn cusp() -> Arc<RingModel> {
    RingModel::monomial_subalgebra("z", &[2, 3], ZMode::ZeroConstantTerm).unwrap()
}

/// The two-output, one-input plant `[(1−z³)/(1−z²); (1−8z³)/(1−4z²)]`.
pub fn two_output_plant(a: &Arc<RingModel>) -> Mat<Fraction> {
    Mat::from_rows(vec![
        vec![a.parse_fraction("(1-z^3)/(1-z^2)").unwrap()],
        vec![a.parse_fraction("(1-8*z^3)/(1-4*z^2)").unwrap()],
    ])
    .unwrap()
}

pub fn two_output_fraction(a: &Arc<RingModel>) -> PlantFraction {
    scalar_denominator(&two_output_plant(a), a).unwrap()
}

pub fn siso_plant(a: &Arc<RingModel>) -> Mat<Fraction> {
    Mat::from_rows(vec![vec![a.parse_fraction("z^2/(1-z^2)").unwrap()]]).unwrap()
}

/// Expands `text` after substituting the named factors
/// `a1, a2, l1, l2, q3, q4` (λ_i = α_i·λ_0i).
pub fn expand(a: &Arc<RingModel>, text: &str) -> Polynomial {
    let l1 = format!("({ALPHA1})*({LAMBDA01})");
    let l2 = format!("({ALPHA2})*({LAMBDA02})");
    let s = text
        .replace("a1", &format!("({ALPHA1})"))
        .replace("a2", &format!("({ALPHA2})"))
        .replace("l1", &format!("({l1})"))
        .replace("l2", &format!("({l2})"))
        .replace("q3", &format!("({Q3})"))
        .replace("q4", &format!("({Q4})"));
    a.parse(&s).unwrap()
}

/// The controller `C = −1/(α₁λ₁²q₃)·[α₁q₃(1+α₁λ₁q₃), α₂q₄]`.
pub fn reference_controller(a: &Arc<RingModel>) -> Mat<Fraction> {
    let den = expand(a, "a1*l1^2*q3").neg();
    let n1 = expand(a, "a1*q3*(1 + a1*l1*q3)");
    let n2 = expand(a, "a2*q4");
    Mat::from_rows(vec![vec![Fraction::new(n1, den.clone()).unwrap(), Fraction::new(n2, den).unwrap()]]).unwrap()
}
