use gefstab::matrix::{combinations, Mat};
use gefstab::poly::{Polynomial, Rational};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..=2, -3i64..=3), 0..=2).prop_map(|ts| {
        Polynomial::from_terms(&["z".to_string()], ts.into_iter().map(|(e, c)| (vec![e], Rational::from_integer(c.into()))))
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Polynomial>> {
    prop::collection::vec(entry(), rows * cols)
        .prop_map(move |v| Mat::from_rows(v.chunks(cols).map(<[Polynomial]>::to_vec).collect()).unwrap())
}

fn square() -> impl Strategy<Value = Mat<Polynomial>> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

/// Leibniz expansion over all permutations.
fn leibniz(m: &Mat<Polynomial>) -> Polynomial {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.rows();
    let mut total = Polynomial::zero();
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = Polynomial::one();
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(m.get(i, j));
        }
        total = if inversions % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_leibniz(m in square()) {
        prop_assert_eq!(m.det().unwrap(), leibniz(&m));
    }

    #[test]
    fn adjugate_identity(m in square()) {
        let one = Polynomial::one();
        let d = m.det().unwrap();
        let e = Mat::identity(m.rows(), &one).scale(&d);
        let adj = m.adjugate().unwrap();
        prop_assert_eq!(m.mul(&adj).unwrap(), e.clone());
        prop_assert_eq!(adj.mul(&m).unwrap(), e);
    }

    #[test]
    fn transpose_keeps_determinant(m in square()) {
        prop_assert_eq!(m.transpose().det().unwrap(), m.det().unwrap());
    }

    #[test]
    fn binet_cauchy((a, b) in (1usize..=2, 2usize..=4).prop_flat_map(|(k, n)| (matrix(k, n), matrix(n, k)))) {
        let k = a.rows();
        let n = a.cols();
        let rows: Vec<usize> = (0..k).collect();
        let mut sum = Polynomial::zero();
        for s in combinations(n, k) {
            let ma = a.submatrix(&rows, &s).det().unwrap();
            let mb = b.submatrix(&s, &rows).det().unwrap();
            sum = sum.add(&ma.mul(&mb));
        }
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), sum);
    }

    #[test]
    fn laplace_along_first_row(m in (2usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let n = m.rows();
        let mut sum = Polynomial::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = m.submatrix(&rows, &cols).det().unwrap();
            let term = m.get(0, j).mul(&minor);
            sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        }
        prop_assert_eq!(m.det().unwrap(), sum);
    }
}
