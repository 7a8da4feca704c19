//! Exact discrete-time simulation of the feedback loop for univariate
//! delay rings. Signal names follow the loop
//! `e₁ = u₁ − y₂, e₂ = u₂ + y₁, y₁ = C e₁, y₂ = P e₂`.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::matrix::Mat;
use crate::poly::{format_rational, Rational};
use crate::ring::Fraction;
use crate::synth::closed_loop;

/// `y_t = (Σ n_k x_{t−k} − Σ_{k≥1} d_k y_{t−k}) / d₀` for `n(z)/d(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEq {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

/// Delay variable used by a fraction, if any, with ascending coefficient
/// lists of numerator and denominator.
fn univariate_parts(f: &Fraction) -> Result<(Option<String>, Vec<Rational>, Vec<Rational>)> {
    let (vn, num) = f.num().as_univariate().ok_or_else(|| Error::Multivariate(f.to_string()))?;
    let (vd, den) = f.den().as_univariate().ok_or_else(|| Error::Multivariate(f.to_string()))?;
    let var = match (vn, vd) {
        (Some(a), Some(b)) if a != b => return Err(Error::Multivariate(f.to_string())),
        (a, b) => a.or(b),
    };
    Ok((var, num, den))
}

impl DiffEq {
    pub fn new(num: Vec<Rational>, den: Vec<Rational>) -> Result<Self> {
        if den.first().is_none_or(|d| d.is_zero()) {
            return Err(Error::NotCausalTf("denominator has zero constant term".into()));
        }
        Ok(DiffEq { num, den })
    }

    pub fn from_fraction(f: &Fraction) -> Result<Self> {
        let (_, num, den) = univariate_parts(f)?;
        Self::new(num, den).map_err(|_| Error::NotCausalTf(f.to_string()))
    }

    pub fn num_coeffs(&self) -> &[Rational] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[Rational] {
        &self.den
    }

    /// Instantaneous gain `n₀ / d₀`.
    pub fn feedthrough(&self) -> Rational {
        self.num.first().cloned().unwrap_or_else(Rational::zero) / &self.den[0]
    }

    /// Output at step `t` minus the feedthrough term, given input history
    /// `x[..t]` and output history `y[..t]`.
    fn memory(&self, x: &[Rational], y: &[Rational], t: usize) -> Rational {
        let mut acc = Rational::zero();
        for (k, n) in self.num.iter().enumerate().skip(1) {
            if k <= t {
                acc += n * &x[t - k];
            }
        }
        for (k, d) in self.den.iter().enumerate().skip(1) {
            if k <= t {
                acc -= d * &y[t - k];
            }
        }
        acc / &self.den[0]
    }
}

/// First `steps` power-series coefficients of a causal fraction.
pub fn impulse_response(tf: &Fraction, steps: usize) -> Result<Vec<Rational>> {
    let de = DiffEq::from_fraction(tf)?;
    let mut x = vec![Rational::zero(); steps];
    if steps > 0 {
        x[0] = Rational::from_integer(1.into());
    }
    let mut y = Vec::with_capacity(steps);
    for t in 0..steps {
        let v = de.feedthrough() * &x[t] + de.memory(&x, &y, t);
        y.push(v);
    }
    Ok(y)
}

/// Per-channel sequences of the six loop signals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalTrace {
    pub u1: Vec<Vec<Rational>>,
    pub u2: Vec<Vec<Rational>>,
    pub e1: Vec<Vec<Rational>>,
    pub e2: Vec<Vec<Rational>>,
    pub y1: Vec<Vec<Rational>>,
    pub y2: Vec<Vec<Rational>>,
}

impl SignalTrace {
    pub fn steps(&self) -> usize {
        self.u1.first().or(self.u2.first()).map_or(0, Vec::len)
    }

    /// `e₁ = u₁ − y₂` and `e₂ = u₂ + y₁` at every step.
    pub fn loop_equations_hold(&self) -> bool {
        let check = |e: &[Vec<Rational>], u: &[Vec<Rational>], y: &[Vec<Rational>], sign: i64| {
            e.iter().zip(u).zip(y).all(|((ec, uc), yc)| {
                ec.iter()
                    .zip(uc)
                    .zip(yc)
                    .all(|((e, u), y)| *e == u + y * Rational::from_integer(sign.into()))
            })
        };
        check(&self.e1, &self.u1, &self.y2, -1) && check(&self.e2, &self.u2, &self.y1, 1)
    }

    /// CSV with header `step,u1_1,…,u2_1,…,e1_…,e2_…,y1_…,y2_…`.
    pub fn to_csv(&self) -> String {
        let groups: [(&str, &Vec<Vec<Rational>>); 6] = [
            ("u1", &self.u1),
            ("u2", &self.u2),
            ("e1", &self.e1),
            ("e2", &self.e2),
            ("y1", &self.y1),
            ("y2", &self.y2),
        ];
        let mut out = String::from("step");
        for (name, chans) in &groups {
            for i in 1..=chans.len() {
                let _ = write!(out, ",{name}_{i}");
            }
        }
        out.push('\n');
        for t in 0..self.steps() {
            let _ = write!(out, "{t}");
            for (_, chans) in &groups {
                for c in chans.iter() {
                    let _ = write!(out, ",{}", format_rational(&c[t]));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn diffeqs(m: &Mat<Fraction>) -> Result<Vec<Vec<DiffEq>>> {
    m.to_rows().iter().map(|r| r.iter().map(DiffEq::from_fraction).collect()).collect()
}

fn check_single_delay_var(mats: &[&Mat<Fraction>]) -> Result<()> {
    let mut seen: Option<String> = None;
    for m in mats {
        for f in m.entries() {
            if let (Some(v), _, _) = univariate_parts(f)? {
                match &seen {
                    Some(s) if *s != v => {
                        return Err(Error::Multivariate(format!("signals in both {s} and {v}")));
                    }
                    _ => seen = Some(v),
                }
            }
        }
    }
    Ok(())
}

/// Inverse of a square rational matrix, `None` when singular.
fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let k = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| Rational::from_integer(((i == j) as i64).into())));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < k || pivots[k - 1] >= k {
        return None;
    }
    Some(aug.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// Runs the loop for `steps` steps. `u1` has one sequence per plant
/// output (n), `u2` one per plant input (m); short sequences are padded
/// with zeros.
pub fn simulate_loop(
    p: &Mat<Fraction>,
    c: &Mat<Fraction>,
    u1: &[Vec<Rational>],
    u2: &[Vec<Rational>],
    steps: usize,
) -> Result<SignalTrace> {
    let n = p.rows();
    let m = p.cols();
    if c.rows() != m || c.cols() != n || u1.len() != n || u2.len() != m {
        return Err(Error::Dimension(format!(
            "plant {n}x{m}, controller {}x{}, inputs {} and {}",
            c.rows(),
            c.cols(),
            u1.len(),
            u2.len()
        )));
    }
    check_single_delay_var(&[p, c])?;
    let pd = diffeqs(p)?;
    let cd = diffeqs(c)?;
    let pad = |u: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        u.iter()
            .map(|s| (0..steps).map(|t| s.get(t).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect()
    };
    let u1 = pad(u1);
    let u2 = pad(u2);

    // Unknowns (e₁, e₂): [E_n, P(0); −C(0), E_m]·(e₁, e₂) = (u₁ − r₂, u₂ + r₁).
    let k = n + m;
    let mut sys = vec![vec![Rational::zero(); k]; k];
    for i in 0..n {
        sys[i][i] = Rational::from_integer(1.into());
        for j in 0..m {
            sys[i][n + j] = pd[i][j].feedthrough();
        }
    }
    for i in 0..m {
        sys[n + i][n + i] = Rational::from_integer(1.into());
        for j in 0..n {
            sys[n + i][j] = -cd[i][j].feedthrough();
        }
    }
    let inv = invert(&sys).ok_or(Error::AlgebraicLoopSingular(0))?;

    // Per-entry output histories; y₁ᵢ = Σⱼ C_ij e₁ⱼ, y₂ᵢ = Σⱼ P_ij e₂ⱼ.
    let mut c_out = vec![vec![Vec::with_capacity(steps); n]; m];
    let mut p_out = vec![vec![Vec::with_capacity(steps); m]; n];
    let mut e1 = vec![Vec::with_capacity(steps); n];
    let mut e2 = vec![Vec::with_capacity(steps); m];
    let mut y1 = vec![Vec::with_capacity(steps); m];
    let mut y2 = vec![Vec::with_capacity(steps); n];
    for t in 0..steps {
        let r1: Vec<Rational> = (0..m)
            .map(|i| (0..n).map(|j| cd[i][j].memory(&e1[j], &c_out[i][j], t)).sum())
            .collect();
        let r2: Vec<Rational> = (0..n)
            .map(|i| (0..m).map(|j| pd[i][j].memory(&e2[j], &p_out[i][j], t)).sum())
            .collect();
        let rhs: Vec<Rational> = (0..n)
            .map(|i| &u1[i][t] - &r2[i])
            .chain((0..m).map(|i| &u2[i][t] + &r1[i]))
            .collect();
        let sol: Vec<Rational> = inv
            .iter()
            .map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect();
        for j in 0..n {
            e1[j].push(sol[j].clone());
        }
        for j in 0..m {
            e2[j].push(sol[n + j].clone());
        }
        for i in 0..m {
            let mut total = Rational::zero();
            for j in 0..n {
                let de = &cd[i][j];
                let v = de.feedthrough() * &e1[j][t] + de.memory(&e1[j], &c_out[i][j], t);
                total += &v;
                c_out[i][j].push(v);
            }
            y1[i].push(total);
        }
        for i in 0..n {
            let mut total = Rational::zero();
            for j in 0..m {
                let de = &pd[i][j];
                let v = de.feedthrough() * &e2[j][t] + de.memory(&e2[j], &p_out[i][j], t);
                total += &v;
                p_out[i][j].push(v);
            }
            y2[i].push(total);
        }
    }
    Ok(SignalTrace { u1, u2, e1, e2, y1, y2 })
}

/// Unit impulse on input channel `channel` of the stacked input
/// `(u₁, u₂)`, zero elsewhere.
pub fn impulse_inputs(n: usize, m: usize, channel: usize, steps: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let mut all = vec![vec![Rational::zero(); steps]; n + m];
    if steps > 0 && channel < n + m {
        all[channel][0] = Rational::from_integer(1.into());
    }
    let u2 = all.split_off(n);
    (all, u2)
}

/// Drives each input channel with a unit impulse and compares the
/// resulting `(e₁, e₂)` sequences with the impulse responses of the
/// corresponding column of `H(P, C)`.
pub fn compare_to_h(p: &Mat<Fraction>, c: &Mat<Fraction>, steps: usize) -> Result<bool> {
    let n = p.rows();
    let m = p.cols();
    let (h, _) = closed_loop(p, c)?;
    for ch in 0..n + m {
        let (u1, u2) = impulse_inputs(n, m, ch, steps);
        let trace = simulate_loop(p, c, &u1, &u2, steps)?;
        let outputs = trace.e1.iter().chain(&trace.e2);
        for (r, seq) in outputs.enumerate() {
            if impulse_response(h.get(r, ch), steps)? != *seq {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn frac(s: &str) -> Fraction {
        Fraction::parse(s, &["z".to_string()]).unwrap()
    }

    fn single(f: Fraction) -> Mat<Fraction> {
        Mat::from_rows(vec![vec![f]]).unwrap()
    }

    #[test]
    fn impulse_examples() {
        let r = impulse_response(&frac("(1-z^3)/(1-z^2)"), 6).unwrap();
        assert_eq!(r, [1, 0, 1, -1, 1, -1].map(rat));
        let r = impulse_response(&frac("1 + z^2"), 5).unwrap();
        assert_eq!(r, [1, 0, 1, 0, 0].map(rat));
        assert_eq!(impulse_response(&frac("1"), 3).unwrap(), [1, 0, 0].map(rat));
        assert!(matches!(impulse_response(&frac("1/z"), 3), Err(Error::NotCausalTf(_))));
    }

    #[test]
    fn zero_loop_passes_impulse_through() {
        let p = Mat::filled(1, 1, &Fraction::zero());
        let (u1, u2) = impulse_inputs(1, 1, 0, 4);
        let t = simulate_loop(&p, &p, &u1, &u2, 4).unwrap();
        assert_eq!(t.e1[0], [1, 0, 0, 0].map(rat));
        assert!(t.e2[0].iter().chain(&t.y1[0]).chain(&t.y2[0]).all(Zero::is_zero));
        assert!(t.loop_equations_hold());
        assert!(compare_to_h(&p, &p, 5).unwrap());
    }

    #[test]
    fn singular_algebraic_loop() {
        let p = single(frac("1"));
        let c = single(frac("-1"));
        let (u1, u2) = impulse_inputs(1, 1, 0, 2);
        assert_eq!(simulate_loop(&p, &c, &u1, &u2, 2), Err(Error::AlgebraicLoopSingular(0)));
    }

    #[test]
    fn csv_layout() {
        let p = single(frac("1/2"));
        let c = Mat::filled(1, 1, &Fraction::zero());
        let (u1, u2) = impulse_inputs(1, 1, 1, 2);
        let csv = simulate_loop(&p, &c, &u1, &u2, 2).unwrap().to_csv();
        assert_eq!(csv, "step,u1_1,u2_1,e1_1,e2_1,y1_1,y2_1\n0,0,1,-1/2,1,0,1/2\n1,0,0,0,0,0,0\n");
    }
}
