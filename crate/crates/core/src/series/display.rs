//! Canonical text form.
//!
//! Terms are printed in decreasing order and joined by ` + ` / ` - `. A
//! monomial prints as `exp(g)` followed by powers of `w`, `log(w)`,
//! `log(log(w))` and `log^k(w)` for `k >= 3`; negative powers go into a
//! denominator. Non-rational exponents print as `exp(a*log_(k+1)(w))`
//! so that the output stays inside the parser's grammar.

use std::fmt;

use num_traits::{One, Signed};

use crate::constants::ConstReal;

use super::{Monomial, Term, Transseries};

fn ell_name(k: usize) -> String {
    match k {
        0 => "w".to_string(),
        1 => "log(w)".to_string(),
        2 => "log(log(w))".to_string(),
        _ => format!("log^{k}(w)"),
    }
}

fn with_power(base: String, exponent: &num_rational::BigRational) -> String {
    if exponent.is_one() {
        base
    } else if exponent.is_integer() {
        format!("{base}^{}", exponent.numer())
    } else {
        format!("{base}^({}/{})", exponent.numer(), exponent.denom())
    }
}

/// Numerator and denominator factors of a monomial.
fn monomial_parts(m: &Monomial) -> (Vec<String>, Vec<String>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    if !m.exp_arg().is_zero() {
        num.push(format!("exp({})", m.exp_arg()));
    }
    for (k, a) in m.log_powers() {
        match a.as_rational() {
            Some(q) if q.is_positive() => num.push(with_power(ell_name(*k), &q)),
            Some(q) => den.push(with_power(ell_name(*k), &-q)),
            None => {
                let coeff = if a.is_single_product() { a.to_string() } else { format!("({a})") };
                num.push(format!("exp({coeff}*{})", ell_name(k + 1)));
            }
        }
    }
    (num, den)
}

fn join_fraction(num: Vec<String>, den: Vec<String>) -> String {
    let num = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => num,
        1 => format!("{num}/{}", den[0]),
        _ => format!("{num}/({})", den.join("*")),
    }
}

/// Renders a term, returning (is_negative, magnitude text).
fn term_parts(t: &Term) -> (bool, String) {
    let (mnum, mden) = monomial_parts(&t.monomial);
    let c: &ConstReal = &t.coeff;
    if c.is_single_product() {
        let (mut num, mut den) = c.product_parts();
        num.extend(mnum);
        den.extend(mden);
        (c.single_sign_negative(), join_fraction(num, den))
    } else {
        let mut num = vec![format!("({c})")];
        num.extend(mnum);
        (false, join_fraction(num, mden))
    }
}

impl fmt::Display for Transseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let (neg, mag) = term_parts(t);
            match (i, neg) {
                (0, false) => write!(f, "{mag}")?,
                (0, true) => write!(f, "-{mag}")?,
                (_, false) => write!(f, " + {mag}")?,
                (_, true) => write!(f, " - {mag}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = monomial_parts(self);
        write!(f, "{}", join_fraction(num, den))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = term_parts(self);
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{mag}")
    }
}
