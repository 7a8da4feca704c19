use std::cmp::Reverse;

use num_traits::{One, Signed};

use super::{Monomial, Polynomial, Rational};

/// `p` or `p/q`, with a leading `-` for negative values.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Terms in print order: ascending total degree, then descending lex on the
/// exponent vector so that `x^2` precedes `x*y` precedes `y^2`.
pub(crate) fn print_order(p: &Polynomial) -> Vec<(&Monomial, &Rational)> {
    let mut terms: Vec<_> = p.terms.iter().collect();
    terms.sort_by_key(|(m, _)| (m.degree(), Reverse(*m)));
    terms
}

pub(crate) fn first_term_coeff(p: &Polynomial) -> Option<Rational> {
    print_order(p).first().map(|(_, c)| (*c).clone())
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.0.iter()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

pub(crate) fn format_canonical(p: &Polynomial) -> String {
    let terms = print_order(p);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(&p.vars, m));
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&format_monomial(&p.vars, m));
        }
    }
    out
}
