mod common;

use gefstab::sim::compare_to_h;
use gefstab::synth::{causality_check, synthesize, transpose_duality_check};

use common::*;

#[test]
fn two_output_plant_synthesis() {
    let a = cusp();
    let p = two_output_plant(&a);
    let res = synthesize(&two_output_fraction(&a)).unwrap();
    assert_eq!(res.certificate.omega, 1);
    let repair = res.repair.as_ref().unwrap();
    assert_eq!(repair.index_set.to_string(), "{1}");
    assert_eq!(repair.repair.r_prime.to_rows(), vec![vec![a.parse("1").unwrap(), a.parse("0").unwrap()]]);
    assert!(res.verification.stabilizing);
    assert!(transpose_duality_check(&a, &p, &res.controller).unwrap());
    assert!(causality_check(&a, &p, &res.controller, Some(&res.den)).unwrap().passed);
    assert!(compare_to_h(&p, &res.controller, 50).unwrap());
}
