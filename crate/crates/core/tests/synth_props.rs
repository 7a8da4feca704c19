mod common;

use gefstab::gef::{gef, scalar_denominator};
use gefstab::matrix::Mat;
use gefstab::poly::{Polynomial, Rational};
use gefstab::ring::{Fraction, RingModel, ZMode};
use gefstab::sim::{compare_to_h, impulse_response};
use gefstab::synth::{
    closed_loop, partition_powers, synthesize, transpose_duality_check, verify_stabilizing, weighted_sum,
};
use proptest::prelude::*;

use common::*;

fn z_poly(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_terms(
        &["z".to_string()],
        coeffs.iter().enumerate().map(|(e, &c)| (vec![e as u32], Rational::from_integer(c.into()))),
    )
}

/// Coefficients of a polynomial in A = ℚ[z², z³] (no z¹ term).
fn element_coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 6).prop_map(|mut v| {
        v[1] = 0;
        v
    })
}

fn unit_coeffs() -> impl Strategy<Value = Vec<i64>> {
    element_coeffs().prop_map(|mut v| {
        v[0] = 1;
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_on_random_siso(pn in element_coeffs(), pd in unit_coeffs(), cn in element_coeffs(), cd in unit_coeffs()) {
        let a = cusp();
        let p = Mat::from_rows(vec![vec![Fraction::new(z_poly(&pn), z_poly(&pd)).unwrap()]]).unwrap();
        let c = Mat::from_rows(vec![vec![Fraction::new(z_poly(&cn), z_poly(&cd)).unwrap()]]).unwrap();
        match transpose_duality_check(&a, &p, &c) {
            Ok(ok) => prop_assert!(ok),
            Err(gefstab::Error::IllPosed) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn siso_synthesis_always_verifies(pn in element_coeffs(), pd in unit_coeffs()) {
        let a = cusp();
        let p = Mat::from_rows(vec![vec![Fraction::new(z_poly(&pn), z_poly(&pd)).unwrap()]]).unwrap();
        let pf = scalar_denominator(&p, &a).unwrap();
        let res = synthesize(&pf).unwrap();
        prop_assert!(res.certificate.holds());
        prop_assert!(verify_stabilizing(&a, &p, &res.controller).unwrap().stabilizing);
        prop_assert!(a.is_z_nonsingular(&res.den).unwrap());
        prop_assert!(compare_to_h(&p, &res.controller, 24).unwrap());
    }

    #[test]
    fn partition_of_unity_lifts_to_powers(l in element_coeffs(), omega in 1u32..=3) {
        // λ₁ = l, λ₂ = 1 − l sum to one.
        let a = cusp();
        let l1 = z_poly(&l).with_vars(a.ambient_vars()).unwrap();
        let l2 = Polynomial::one().sub(&l1);
        let coeffs = partition_powers(&[l1.clone(), l2.clone()], omega).unwrap();
        prop_assert!(weighted_sum(&[l1, l2], &coeffs, omega).is_one());
        prop_assert!(coeffs.iter().all(|c| a.contains(c)));
    }

    #[test]
    fn impulse_response_times_denominator_is_numerator(n in element_coeffs(), d in unit_coeffs()) {
        let f = Fraction::new(z_poly(&n), z_poly(&d)).unwrap();
        let steps = 16;
        let h = impulse_response(&f, steps).unwrap();
        let (_, num) = f.num().as_univariate().unwrap();
        let (_, den) = f.den().as_univariate().unwrap();
        for t in 0..steps {
            let conv: Rational = (0..=t).filter(|&k| k < den.len()).map(|k| &den[k] * &h[t - k]).sum();
            let want = num.get(t).cloned().unwrap_or_default();
            prop_assert_eq!(conv, want);
        }
    }
}

#[test]
fn hand_derived_siso_loop() {
    let a = cusp();
    let p = siso_plant(&a);
    let pf = scalar_denominator(&p, &a).unwrap();
    assert_eq!(pf.den(), &a.parse("1 - z^2").unwrap());
    let g = gef(&pf).unwrap();
    let gens: Vec<String> = g.entries.iter().map(|e| e.generators.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(gens, ["z^2", "1 - z^2"]);
    let res = synthesize(&pf).unwrap();
    assert_eq!(res.certificate.omega, 1);
    assert_eq!(res.den, Mat::from_rows(vec![vec![a.parse("1 - z^2").unwrap()]]).unwrap());
    assert_eq!(res.num, res.den);
    let want: Vec<Vec<Polynomial>> = [["1 - z^2", "-z^2"], ["1 - z^2", "1 - z^2"]]
        .iter()
        .map(|r| r.iter().map(|s| a.parse(s).unwrap()).collect())
        .collect();
    assert_eq!(res.h, Mat::from_rows(want).unwrap());
}

#[test]
fn zero_controller_rejected_for_two_output_plant() {
    let a = cusp();
    let p = two_output_plant(&a);
    let c = Mat::filled(1, 2, &Fraction::zero());
    let v = verify_stabilizing(&a, &p, &c).unwrap();
    assert!(!v.stabilizing);
    assert_eq!(v.in_ring, [true, true, false, true, true, false, true, true, true]);
}

#[test]
fn zero_plant_and_controller() {
    let a = cusp();
    let z = Mat::filled(1, 1, &Fraction::zero());
    let (h, det) = closed_loop(&z, &z).unwrap();
    assert_eq!(h, Mat::identity(2, &Fraction::one()));
    assert!(det == Fraction::one());
    assert!(verify_stabilizing(&a, &z, &z).unwrap().stabilizing);
    assert!(transpose_duality_check(&a, &z, &z).unwrap());
}

#[test]
fn ill_posed_loop_is_reported() {
    let a = cusp();
    let p = Mat::from_rows(vec![vec![a.parse_fraction("1").unwrap()]]).unwrap();
    let c = Mat::from_rows(vec![vec![a.parse_fraction("-1").unwrap()]]).unwrap();
    assert_eq!(verify_stabilizing(&a, &p, &c).unwrap_err(), gefstab::Error::IllPosed);
}

#[test]
fn corrupted_controller_is_detected_in_time_domain() {
    let a = cusp();
    let p = two_output_plant(&a);
    let res = synthesize(&two_output_fraction(&a)).unwrap();
    let c = &res.controller;
    let bumped = c.get(0, 0).num().add(&a.parse("1/1000*z^2").unwrap());
    let bad = Mat::from_rows(vec![vec![Fraction::new(bumped, c.get(0, 0).den().clone()).unwrap(), c.get(0, 1).clone()]]).unwrap();
    assert!(compare_to_h(&p, c, 50).unwrap());
    assert!(!verify_stabilizing(&a, &p, &bad).unwrap().stabilizing);
    // The simulation still tracks H(P, C_bad), so comparing against the
    // true controller's H exposes the perturbation.
    let (h_good, _) = closed_loop(&p, c).unwrap();
    let (h_bad, _) = closed_loop(&p, &bad).unwrap();
    assert_ne!(h_good, h_bad);
    assert!(compare_to_h(&p, &bad, 50).unwrap());
}

#[test]
fn not_stabilizable_over_two_variables() {
    let b = RingModel::polynomial(&["x", "y"], ZMode::ZeroIdeal).unwrap();
    let p = Mat::from_rows(vec![vec![b.parse_fraction("x/y").unwrap()]]).unwrap();
    let pf = scalar_denominator(&p, &b).unwrap();
    assert_eq!(synthesize(&pf).unwrap_err(), gefstab::Error::NotStabilizable);
}
