//! The ring A of stable causal transfer functions, its causality ideal Z,
//! fractions over A, and localizations A_f.

mod fraction;
mod local;
mod presentation;

pub use fraction::Fraction;
pub use local::{LocalElem, Locale};
pub use presentation::Presentation;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::QuotientRing;
use crate::linalg;
use crate::matrix::Mat;
use crate::poly::{parse_poly, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// ℚ[x₁…x_k].
    Polynomial { vars: Vec<String> },
    /// ℚ[z^{e₁},…,z^{e_k}] inside ℚ[z].
    MonomialSubalgebra { var: String, generators: Vec<u32> },
}

/// Which prime ideal of A plays the role of the causality ideal Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    /// Elements with zero constant term.
    ZeroConstantTerm,
    /// The zero ideal.
    ZeroIdeal,
}

/// Numerical semigroup generated by `generators`, with a membership table
/// up to the conductor.
#[derive(Clone, Debug)]
pub struct Semigroup {
    generators: Vec<u32>,
    member: Vec<bool>,
}

impl Semigroup {
    fn new(generators: &[u32]) -> Self {
        let smallest = *generators.iter().min().expect("nonempty") as usize;
        let mut member: Vec<bool> = vec![true];
        let mut run = 1;
        let mut n = 0usize;
        // The conductor is reached once `smallest` consecutive members appear.
        while run < smallest {
            n += 1;
            let m = generators.iter().any(|&g| (g as usize) <= n && member[n - g as usize]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        // The run just found starts at the conductor.
        let conductor = member.len() - smallest;
        member.truncate(conductor);
        Semigroup { generators: generators.to_vec(), member }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Smallest `c` with every integer `≥ c` in the semigroup.
    pub fn conductor(&self) -> u32 {
        self.member.len() as u32
    }

    pub fn contains(&self, e: u32) -> bool {
        (e as usize) >= self.member.len() || self.member[e as usize]
    }

    /// Exponents missing from the semigroup.
    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor()).filter(|&e| !self.contains(e)).collect()
    }
}

#[derive(Debug)]
pub struct RingModel {
    kind: RingKind,
    z_mode: ZMode,
    ambient: Vec<String>,
    semigroup: Option<Semigroup>,
    presentation: Presentation,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingModel {
    pub fn polynomial(vars: &[&str], z_mode: ZMode) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::new(RingKind::Polynomial { vars }, z_mode)
    }

    pub fn monomial_subalgebra(var: &str, generators: &[u32], z_mode: ZMode) -> Result<Arc<Self>> {
        Self::new(RingKind::MonomialSubalgebra { var: var.to_string(), generators: generators.to_vec() }, z_mode)
    }

    pub fn new(kind: RingKind, z_mode: ZMode) -> Result<Arc<Self>> {
        match kind {
            RingKind::Polynomial { vars } => {
                if vars.is_empty() {
                    return Err(Error::InvalidRing("a polynomial ring needs at least one variable".into()));
                }
                for (i, v) in vars.iter().enumerate() {
                    if !valid_name(v) || vars[..i].contains(v) {
                        return Err(Error::InvalidRing(format!("bad or repeated variable name `{v}`")));
                    }
                }
                let presentation = Presentation::identity(&vars);
                Ok(Arc::new(RingModel {
                    kind: RingKind::Polynomial { vars: vars.clone() },
                    z_mode,
                    ambient: vars,
                    semigroup: None,
                    presentation,
                }))
            }
            RingKind::MonomialSubalgebra { var, generators } => {
                if !valid_name(&var) {
                    return Err(Error::InvalidRing(format!("bad variable name `{var}`")));
                }
                let mut gens = generators.clone();
                gens.sort_unstable();
                gens.dedup();
                if gens.is_empty() || gens[0] == 0 {
                    return Err(Error::InvalidRing("exponent generators must be positive".into()));
                }
                if gens.len() > 1 && gens[0] == 1 {
                    return Err(Error::InvalidRing("generator 1 must stand alone".into()));
                }
                let g = gens.iter().fold(0u32, |a, &b| a.gcd(&b));
                if g != 1 {
                    return Err(Error::InvalidRing(format!("exponent generators have gcd {g}")));
                }
                let semigroup = Semigroup::new(&gens);
                let ambient = vec![var.clone()];
                let presentation = if gens == [1] {
                    Presentation::identity(&ambient)
                } else {
                    Presentation::monomial(&var, &gens)?
                };
                Ok(Arc::new(RingModel {
                    kind: RingKind::MonomialSubalgebra { var, generators: gens },
                    z_mode,
                    ambient,
                    semigroup: Some(semigroup),
                    presentation,
                }))
            }
        }
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn z_mode(&self) -> ZMode {
        self.z_mode
    }

    /// Variables polynomials in A are written in.
    pub fn ambient_vars(&self) -> &[String] {
        &self.ambient
    }

    /// The delay variable when A sits inside a univariate polynomial ring.
    pub fn delay_var(&self) -> Option<&str> {
        match &self.kind {
            RingKind::MonomialSubalgebra { var, .. } => Some(var),
            RingKind::Polynomial { vars } if vars.len() == 1 => Some(&vars[0]),
            RingKind::Polynomial { .. } => None,
        }
    }

    pub fn semigroup(&self) -> Option<&Semigroup> {
        self.semigroup.as_ref()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quotient(&self) -> &Arc<QuotientRing> {
        self.presentation.quotient()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.ambient)
    }

    pub fn parse_fraction(&self, text: &str) -> Result<Fraction> {
        Fraction::parse(text, &self.ambient)
    }

    fn uses_only_ambient(&self, p: &Polynomial) -> bool {
        p.used_vars().iter().all(|v| self.ambient.contains(v))
    }

    /// Membership in A.
    pub fn contains(&self, p: &Polynomial) -> bool {
        if !self.uses_only_ambient(p) {
            return false;
        }
        match &self.semigroup {
            None => true,
            Some(sg) => {
                let var = &self.ambient[0];
                p.terms().all(|(m, _)| {
                    let e = p.vars().iter().position(|v| v == var).map_or(0, |i| m.exponents()[i]);
                    sg.contains(e)
                })
            }
        }
    }

    pub fn in_z(&self, a: &Polynomial) -> bool {
        match self.z_mode {
            ZMode::ZeroConstantTerm => a.constant_term().is_zero(),
            ZMode::ZeroIdeal => a.is_zero(),
        }
    }

    /// `a ∈ A∖Z`.
    pub fn is_z_unit_like(&self, a: &Polynomial) -> bool {
        self.contains(a) && !self.in_z(a)
    }

    /// Square matrix over A whose determinant lies in A∖Z.
    pub fn is_z_nonsingular(&self, m: &Mat<Polynomial>) -> Result<bool> {
        Ok(self.is_z_unit_like(&m.det()?))
    }

    /// Minimal-degree `s` with `s(0) = 1` and `p·s ∈ A` for every `p` in
    /// `polys`, or `None` when none exists. Only univariate rings need a
    /// search; in a full polynomial ring `s = 1`.
    ///
    /// Coefficients of `p·s` at semigroup gaps only involve coefficients of
    /// `s` below the conductor, so degrees up to `conductor − 1` suffice.
    pub fn causal_multiplier(&self, polys: &[Polynomial]) -> Option<Polynomial> {
        if polys.iter().any(|p| !self.uses_only_ambient(p)) {
            return None;
        }
        let Some(sg) = &self.semigroup else {
            return Some(Polynomial::one());
        };
        let var = self.ambient[0].clone();
        if polys.iter().all(|p| self.contains(p)) {
            return Some(Polynomial::one());
        }
        let gaps = sg.gaps();
        let coeffs: Vec<Vec<Rational>> = polys
            .iter()
            .map(|p| p.as_univariate().map(|(_, c)| c).unwrap_or_default())
            .collect();
        let at = |c: &Vec<Rational>, i: usize| c.get(i).cloned().unwrap_or_else(Rational::zero);
        for degree in 1..sg.conductor().max(1) as usize {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for c in &coeffs {
                for &g in &gaps {
                    let g = g as usize;
                    let row: Vec<Rational> = (1..=degree)
                        .map(|k| if k <= g { at(c, g - k) } else { Rational::zero() })
                        .collect();
                    rows.push(row);
                    rhs.push(-at(c, g));
                }
            }
            if let Some(x) = linalg::solve(&rows, &rhs, degree) {
                let mut s = vec![Rational::one()];
                s.extend(x);
                return Some(Polynomial::from_coeffs(&var, &s));
            }
        }
        None
    }

    /// Whether `x` admits a representation `n/d` with `n ∈ A`, `d ∈ A∖Z`.
    pub fn causal(&self, x: &Fraction) -> bool {
        if !self.uses_only_ambient(x.num()) || !self.uses_only_ambient(x.den()) {
            return false;
        }
        match self.z_mode {
            // Multiplying numerator and denominator by z^c, c the conductor,
            // lands both in A, and any nonzero denominator avoids Z = {0}.
            ZMode::ZeroIdeal => true,
            ZMode::ZeroConstantTerm => {
                if x.den().constant_term().is_zero() {
                    return false;
                }
                self.causal_multiplier(&[x.num().clone(), x.den().clone()]).is_some()
            }
        }
    }

    /// Causal with numerator in Z.
    pub fn strictly_causal(&self, x: &Fraction) -> bool {
        if !self.causal(x) {
            return false;
        }
        match self.z_mode {
            ZMode::ZeroConstantTerm => x.num().constant_term().is_zero(),
            ZMode::ZeroIdeal => x.is_zero(),
        }
    }

    /// The element of A equal to `x`, if there is one.
    pub fn fraction_value(&self, x: &Fraction) -> Option<Polynomial> {
        let p = x.as_polynomial()?;
        self.contains(&p).then_some(p)
    }

    pub fn lift(&self, a: &Polynomial) -> Result<Polynomial> {
        if !self.contains(a) {
            return Err(Error::NotInRing(a.to_string()));
        }
        self.presentation.lift(a)
    }

    pub fn push(&self, q: &Polynomial) -> Result<Polynomial> {
        self.presentation.push(q)
    }
}

impl fmt::Display for RingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Polynomial { vars } => write!(f, "Q[{}]", vars.join(",")),
            RingKind::MonomialSubalgebra { var, generators } => {
                let g: Vec<String> = generators.iter().map(|e| format!("{var}^{e}")).collect();
                write!(f, "Q[{}]", g.join(","))
            }
        }?;
        match self.z_mode {
            ZMode::ZeroConstantTerm => write!(f, ", Z = zero constant term"),
            ZMode::ZeroIdeal => write!(f, ", Z = 0"),
        }
    }
}
