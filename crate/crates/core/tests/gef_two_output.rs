mod common;

use gefstab::gef::{gef, ideal_of};

use common::*;

#[test]
fn elementary_factors_of_two_output_plant() {
    let a = cusp();
    let g = gef(&two_output_fraction(&a)).unwrap();
    let prefixes = ["(1+2*z)*(1+z+z^2)", "(1+z)*(1+2*z+4*z^2)", "(1+z)*(1+2*z)"];
    assert_eq!(g.entries.len(), 3);
    for (entry, pre) in g.entries.iter().zip(prefixes) {
        let expected: Vec<_> = ["1-3*z", "z^2", "z^3"]
            .iter()
            .map(|s| a.parse(&format!("{pre}*({s})")).unwrap())
            .collect();
        let want = ideal_of(&a, &expected).unwrap();
        assert!(entry.ideal().equals(&want).unwrap(), "mismatch at {}", entry.index_set);
    }
}
