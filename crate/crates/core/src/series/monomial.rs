use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::constants::{ConstReal, Sign};
use crate::error::{Error, Result};

use super::{Term, Transseries};

#[derive(Clone, PartialEq, Eq, Hash)]
struct MonoData {
    /// `(k, a_k)` for the factor `log_k(w)^a_k`, sorted by `k`, all `a_k != 0`.
    log_powers: Vec<(usize, ConstReal)>,
    /// Purely infinite exponent of the `exp(...)` factor, in canonical form.
    exp_arg: Transseries,
}

/// A monomial `prod_k log_k(w)^(a_k) * exp(g)` with `g` purely infinite.
///
/// In canonical form the exponent `g` never contains a term `r * log_j(w)`
/// with `j >= 1`; such a term is the power `log_(j-1)(w)^r` and is stored in
/// `log_powers`. Terms `r * w` stay in the exponent. With this rule two
/// monomials are equal exactly when their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Arc<MonoData>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Arc::new(MonoData { log_powers: Vec::new(), exp_arg: Transseries::zero() }))
    }

    /// `log_k(w)^a`, with `log_0(w) = w`.
    pub fn log_power(k: usize, a: ConstReal) -> Self {
        let log_powers = if a.is_zero() { Vec::new() } else { vec![(k, a)] };
        Monomial(Arc::new(MonoData { log_powers, exp_arg: Transseries::zero() }))
    }

    /// `log_k(w)`.
    pub fn ell(k: usize) -> Self {
        Monomial::log_power(k, ConstReal::one())
    }

    pub fn omega() -> Self {
        Monomial::ell(0)
    }

    /// `w^a` for a rational `a = numer/denom`.
    pub fn omega_pow(numer: i64, denom: i64) -> Self {
        Monomial::log_power(0, ConstReal::rational(numer, denom))
    }

    /// Builds a monomial from log powers and an exponent, absorbing pure
    /// log terms of the exponent and checking that the rest is purely
    /// infinite.
    pub fn new(log_powers: Vec<(usize, ConstReal)>, exp_arg: Transseries, bits: u32) -> Result<Self> {
        let mut powers: Vec<(usize, ConstReal)> = Vec::new();
        let mut add_power = |k: usize, a: &ConstReal| {
            match powers.iter_mut().find(|(j, _)| *j == k) {
                Some(entry) => entry.1 = entry.1.add(a),
                None => powers.push((k, a.clone())),
            }
        };
        for (k, a) in &log_powers {
            add_power(*k, a);
        }
        let mut kept = Vec::with_capacity(exp_arg.len());
        for t in exp_arg.terms() {
            if let Some(j) = t.monomial.as_pure_ell().filter(|j| *j >= 1) {
                add_power(j - 1, &t.coeff);
            } else {
                if t.monomial.log_sign(bits)? != Sign::Positive {
                    return Err(Error::NotPurelyInfinite);
                }
                kept.push(t.clone());
            }
        }
        powers.retain(|(_, a)| !a.is_zero());
        powers.sort_by_key(|(k, _)| *k);
        Ok(Monomial(Arc::new(MonoData { log_powers: powers, exp_arg: Transseries::from_sorted_unchecked(kept) })))
    }

    /// `exp(g)` for a purely infinite `g`.
    pub fn exp_of(g: &Transseries, bits: u32) -> Result<Self> {
        Monomial::new(Vec::new(), g.clone(), bits)
    }

    fn from_parts_unchecked(log_powers: Vec<(usize, ConstReal)>, exp_arg: Transseries) -> Self {
        Monomial(Arc::new(MonoData { log_powers, exp_arg }))
    }

    pub fn log_powers(&self) -> &[(usize, ConstReal)] {
        &self.0.log_powers
    }

    pub fn exp_arg(&self) -> &Transseries {
        &self.0.exp_arg
    }

    pub fn is_one(&self) -> bool {
        self.0.log_powers.is_empty() && self.0.exp_arg.is_zero()
    }

    /// `Some(k)` when the monomial is exactly `log_k(w)`.
    pub fn as_pure_ell(&self) -> Option<usize> {
        match self.0.log_powers.as_slice() {
            [(k, a)] if a.is_one() && self.0.exp_arg.is_zero() => Some(*k),
            _ => None,
        }
    }

    pub fn exponent_of_ell(&self, k: usize) -> ConstReal {
        self.0.log_powers.iter().find(|(j, _)| *j == k).map(|(_, a)| a.clone()).unwrap_or_else(ConstReal::zero)
    }

    /// Largest `k` with a nonzero power of `log_k(w)`, including inside the
    /// exponent.
    pub fn log_depth(&self) -> usize {
        let own = self.0.log_powers.last().map_or(0, |(k, _)| *k);
        let inner = self.0.exp_arg.terms().iter().map(|t| t.monomial.log_depth()).max().unwrap_or(0);
        own.max(inner)
    }

    /// Nesting depth of `exp(...)` factors.
    pub fn exp_height(&self) -> usize {
        if self.0.exp_arg.is_zero() {
            0
        } else {
            1 + self.0.exp_arg.terms().iter().map(|t| t.monomial.exp_height()).max().unwrap_or(0)
        }
    }

    pub fn mul(&self, other: &Monomial, bits: u32) -> Result<Monomial> {
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let mut powers: Vec<(usize, ConstReal)> = Vec::new();
        let (a, b) = (&self.0.log_powers, &other.0.log_powers);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    powers.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1.add(&b[j].1);
                    if !s.is_zero() {
                        powers.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let exp_arg = self.0.exp_arg.add(&other.0.exp_arg, bits)?;
        Ok(Monomial::from_parts_unchecked(powers, exp_arg))
    }

    pub fn inv(&self) -> Monomial {
        Monomial::from_parts_unchecked(
            self.0.log_powers.iter().map(|(k, a)| (*k, a.neg())).collect(),
            self.0.exp_arg.neg(),
        )
    }

    pub fn div(&self, other: &Monomial, bits: u32) -> Result<Monomial> {
        self.mul(&other.inv(), bits)
    }

    /// `self^c` for a constant exponent.
    pub fn pow(&self, c: &ConstReal) -> Monomial {
        if c.is_zero() {
            return Monomial::one();
        }
        Monomial::from_parts_unchecked(
            self.0.log_powers.iter().map(|(k, a)| (*k, a.mul(c))).collect(),
            self.0.exp_arg.scale(c),
        )
    }

    pub fn powi(&self, n: i64) -> Monomial {
        self.pow(&ConstReal::from(n))
    }

    /// The logarithm `sum_k a_k log_(k+1)(w) + g`, a purely infinite series.
    pub fn formal_log(&self, bits: u32) -> Result<Transseries> {
        let mut acc = self.0.exp_arg.clone();
        for (k, a) in &self.0.log_powers {
            acc = acc.add(&Transseries::from_term(Term::new(a.clone(), Monomial::ell(k + 1))), bits)?;
        }
        Ok(acc)
    }

    /// Position of the monomial relative to 1: the sign of its formal log.
    pub fn log_sign(&self, bits: u32) -> Result<Sign> {
        compare_parts(&self.0.log_powers, &[], self.0.exp_arg.terms(), &[], bits)
    }

    /// Asymptotic order of monomials.
    pub fn compare(&self, other: &Monomial, bits: u32) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        compare_parts(&self.0.log_powers, &other.0.log_powers, self.0.exp_arg.terms(), other.0.exp_arg.terms(), bits)
            .map(Sign::to_ordering)
    }

    pub fn max<'a>(&'a self, other: &'a Monomial, bits: u32) -> Result<&'a Monomial> {
        Ok(if self.compare(other, bits)? == Ordering::Less { other } else { self })
    }

    pub fn min<'a>(&'a self, other: &'a Monomial, bits: u32) -> Result<&'a Monomial> {
        Ok(if self.compare(other, bits)? == Ordering::Greater { other } else { self })
    }
}

/// Sign of `log(m) - log(n)` where `m`, `n` have the given parts.
///
/// The leading term of the difference is either the first differing log
/// power `d_k * log_(k+1)(w)` or the leading term of `g_m - g_n`; which one
/// wins is a comparison of monomials of strictly smaller exponential height.
fn compare_parts(
    pm: &[(usize, ConstReal)],
    pn: &[(usize, ConstReal)],
    gm: &[Term],
    gn: &[Term],
    bits: u32,
) -> Result<Sign> {
    let power_diff = first_power_difference(pm, pn);
    let exp_diff = leading_difference(gm, gn, bits)?;
    match (power_diff, exp_diff) {
        (None, None) => Ok(Sign::Zero),
        (Some((_, d)), None) => d.sign(bits),
        (None, Some((_, c))) => c.sign(bits),
        (Some((k, d)), Some((g, c))) => {
            let ell = Monomial::ell(k + 1);
            match g.compare(&ell, bits)? {
                Ordering::Greater => c.sign(bits),
                Ordering::Less => d.sign(bits),
                Ordering::Equal => c.add(&d).sign(bits),
            }
        }
    }
}

fn first_power_difference(a: &[(usize, ConstReal)], b: &[(usize, ConstReal)]) -> Option<(usize, ConstReal)> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return None,
            (Some((k, x)), None) => return Some((*k, x.clone())),
            (None, Some((k, y))) => return Some((*k, y.neg())),
            (Some((k, x)), Some((l, y))) => match k.cmp(l) {
                Ordering::Less => return Some((*k, x.clone())),
                Ordering::Greater => return Some((*l, y.neg())),
                Ordering::Equal => {
                    if x != y {
                        return Some((*k, x.sub(y)));
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

/// Leading term of `x - y` for sorted term slices, without building the
/// difference.
pub(crate) fn leading_difference(x: &[Term], y: &[Term], bits: u32) -> Result<Option<(Monomial, ConstReal)>> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (x.get(i), y.get(j)) {
            (None, None) => return Ok(None),
            (Some(s), None) => return Ok(Some((s.monomial.clone(), s.coeff.clone()))),
            (None, Some(t)) => return Ok(Some((t.monomial.clone(), t.coeff.neg()))),
            (Some(s), Some(t)) => match s.monomial.compare(&t.monomial, bits)? {
                Ordering::Greater => return Ok(Some((s.monomial.clone(), s.coeff.clone()))),
                Ordering::Less => return Ok(Some((t.monomial.clone(), t.coeff.neg()))),
                Ordering::Equal => {
                    if s.coeff != t.coeff {
                        return Ok(Some((s.monomial.clone(), s.coeff.sub(&t.coeff))));
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

pub fn mono_compare(m: &Monomial, n: &Monomial, bits: u32) -> Result<Ordering> {
    m.compare(n, bits)
}

pub fn formal_log(m: &Monomial, bits: u32) -> Result<Transseries> {
    m.formal_log(bits)
}
