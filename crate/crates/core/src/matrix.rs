//! Dense matrices over a commutative scalar ring, determinants, adjugates,
//! minors, and the row-selection matrices attached to index sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Operations a matrix entry needs. `div_exact` returns `None` when the
/// scalar kind cannot divide exactly, which switches determinants to
/// cofactor expansion.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Scalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero()
    }
    fn one_like(&self) -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Polynomial::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Polynomial::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Polynomial::mul(self, o)
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.divide_exact(o).ok()
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_struct("Mat").field("rows", &self.rows).field("cols", &self.cols).field("entries", &rows).finish()
    }
}

impl<T: Scalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// `rows × cols` matrix filled with `zero`.
    pub fn filled(rows: usize, cols: usize, zero: &T) -> Self {
        Mat { rows, cols, data: vec![zero.zero_like(); rows * cols] }
    }

    pub fn identity(n: usize, one: &T) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { one.one_like() } else { one.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Scalar>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        self.map(Scalar::neg)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| k.mul(x))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let zero = self.data.first().or(o.data.first()).map(|x| x.zero_like());
        Ok(Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = zero.clone().expect("nonempty product has entries");
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    /// Block `[self other]`.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::Dimension("hstack needs equal row counts".into()));
        }
        Ok(Mat::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { o.get(i, j - self.cols).clone() }
        }))
    }

    /// Block `[self; other]`.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::Dimension("vstack needs equal column counts".into()));
        }
        Ok(Mat::from_fn(self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows { self.get(i, j).clone() } else { o.get(i - self.rows, j).clone() }
        }))
    }

    /// Submatrix with the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Err(Error::Dimension("determinant of an empty matrix needs a scalar witness".into()));
        }
        if let Some(d) = self.det_bareiss() {
            return Ok(d);
        }
        Ok(self.det_cofactor())
    }

    /// Fraction-free elimination; `None` if some division is not exact
    /// (cannot happen for a domain with working exact division).
    fn det_bareiss(&self) -> Option<T> {
        let n = self.rows;
        let mut a = self.to_rows();
        let one = a[0][0].one_like();
        let mut prev = one.clone();
        let mut sign = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let p = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match p {
                    Some(p) => {
                        a.swap(k, p);
                        sign = !sign;
                    }
                    None => return Some(one.zero_like()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num.div_exact(&prev)?;
                }
                a[i][k] = one.zero_like();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Some(if sign { d.neg() } else { d })
    }

    fn det_cofactor(&self) -> T {
        let n = self.rows;
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = self.get(0, 0).zero_like();
        let rest: Vec<usize> = (1..n).collect();
        for j in 0..n {
            let e = self.get(0, j);
            if e.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let m = self.submatrix(&rest, &cols).det_cofactor();
            let t = e.mul(&m);
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    /// Transposed cofactor matrix, so that `M·adj(M) = det(M)·E`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() || self.rows == 0 {
            return Err(Error::Dimension("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Mat::identity(1, self.get(0, 0)));
        }
        let mut out = Mat::filled(n, n, self.get(0, 0));
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.submatrix(&rows, &cols).det()?;
                out.set(j, i, if (i + j) % 2 == 0 { m } else { m.neg() });
            }
        }
        Ok(out)
    }

    /// All `size × size` minors, rows and columns in lexicographic order.
    pub fn minors(&self, size: usize) -> Result<Vec<T>> {
        if size == 0 || size > self.rows.min(self.cols) {
            return Err(Error::Dimension(format!("no minors of size {size}")));
        }
        let mut out = Vec::new();
        for rows in combinations(self.rows, size) {
            for cols in combinations(self.cols, size) {
                out.push(self.submatrix(&rows, &cols).det()?);
            }
        }
        Ok(out)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Strictly ascending, 1-based row indices `i₁ < … < i_m` into `1..=m+n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(members: Vec<usize>, m: usize, n: usize) -> Result<Self> {
        if members.len() != m
            || members.windows(2).any(|w| w[0] >= w[1])
            || members.iter().any(|&i| i == 0 || i > m + n)
        {
            return Err(Error::Dimension(format!("invalid index set {members:?} for m={m}, n={n}")));
        }
        Ok(IndexSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// 0-based row positions.
    pub fn zero_based(&self) -> Vec<usize> {
        self.members.iter().map(|i| i - 1).collect()
    }

    /// Ascending 0-based positions not in the set, out of `total`.
    pub fn complement(&self, total: usize) -> Vec<usize> {
        (0..total).filter(|i| !self.members.contains(&(i + 1))).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All index sets of size `m` in `1..=m+n`, lexicographically.
pub fn enumerate_index_sets(m: usize, n: usize) -> Vec<IndexSet> {
    combinations(m + n, m)
        .into_iter()
        .map(|c| IndexSet { members: c.into_iter().map(|i| i + 1).collect() })
        .collect()
}

/// `Δ_I` (m × (m+n), 1 at `(k, i_k)`) and `X_I` ((m+n) × n, 1 at `(ī_k, k)`
/// for the ascending complement `ī`).
pub fn selection<T: Scalar>(set: &IndexSet, m: usize, n: usize, one: &T) -> (Mat<T>, Mat<T>) {
    let total = m + n;
    let mut delta = Mat::filled(m, total, one);
    for (k, &i) in set.members.iter().enumerate() {
        delta.set(k, i - 1, one.one_like());
    }
    let mut x = Mat::filled(total, n, one);
    for (k, i) in set.complement(total).into_iter().enumerate() {
        x.set(i, k, one.one_like());
    }
    (delta, x)
}

/// Parity sign `(−1)^{Σ(i_k − k)}` of the permutation that moves the rows
/// in `set` to the top, keeping relative orders.
pub fn complementary_sign(set: &IndexSet) -> i32 {
    let s: usize = set.members.iter().enumerate().map(|(k, &i)| i - (k + 1)).sum();
    if s.is_multiple_of(2) { 1 } else { -1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn pm(rows: &[&[&str]]) -> Mat<Polynomial> {
        let v = vec!["a".to_string(), "b".to_string(), "c".to_string(), "d".to_string(), "z".to_string()];
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_poly(s, &v).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn det_adj_2x2() {
        let m = pm(&[&["a", "b"], &["c", "d"]]);
        assert_eq!(m.det().unwrap(), pm(&[&["a*d - b*c"]]).get(0, 0).clone());
        assert_eq!(m.adjugate().unwrap(), pm(&[&["d", "-b"], &["-c", "a"]]));
        let e3 = Mat::identity(3, &Polynomial::one());
        assert!(e3.det().unwrap().is_one());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = pm(&[&["1 + z", "z^2", "0"], &["z", "1", "z^3"], &["2", "z", "1 - z"]]);
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor());
        let singular = pm(&[&["z", "z^2"], &["1", "z"]]);
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn selections() {
        let one = Polynomial::one();
        let i1 = IndexSet::new(vec![1], 1, 2).unwrap();
        let (d, x) = selection(&i1, 1, 2, &one);
        assert_eq!(d, pm(&[&["1", "0", "0"]]));
        assert_eq!(x, pm(&[&["0", "1", "0"], &["0", "0", "1"]]).transpose());
        let i23 = IndexSet::new(vec![2, 3], 2, 1).unwrap();
        assert_eq!(selection(&i23, 2, 1, &one).0, pm(&[&["0", "1", "0"], &["0", "0", "1"]]));
    }

    #[test]
    fn index_set_enumeration() {
        let s: Vec<String> = enumerate_index_sets(1, 2).iter().map(|i| i.to_string()).collect();
        assert_eq!(s, ["{1}", "{2}", "{3}"]);
        let s: Vec<String> = enumerate_index_sets(2, 1).iter().map(|i| i.to_string()).collect();
        assert_eq!(s, ["{1,2}", "{1,3}", "{2,3}"]);
        assert_eq!(enumerate_index_sets(2, 2).len(), 6);
        assert!(IndexSet::new(vec![2, 1], 2, 1).is_err());
    }

    #[test]
    fn minor_lists() {
        assert_eq!(Mat::identity(2, &Polynomial::one()).minors(2).unwrap(), vec![Polynomial::one()]);
        let xy = {
            let v = vec!["x".to_string(), "y".to_string()];
            Mat::from_rows(vec![vec![parse_poly("x", &v).unwrap()], vec![parse_poly("y", &v).unwrap()]]).unwrap()
        };
        let ms = xy.minors(1).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].to_string(), "x");
        assert_eq!(ms[1].to_string(), "y");
    }
}
