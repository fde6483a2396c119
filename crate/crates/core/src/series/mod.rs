//! Canonical data model: monomials, terms, finite transseries, and the
//! order-theoretic operations on them (comparison, dominance, Ressayre
//! decomposition, truncation, exponential rank).

mod display;
mod monomial;
mod transseries;

use std::cmp::Ordering;

use crate::constants::{ConstReal, Sign};
use crate::error::{Error, Result};

pub use monomial::{formal_log, mono_compare, Monomial};
pub use transseries::{Term, Transseries};

/// A transseries whose support lies entirely above 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PurelyInfinite(Transseries);

impl PurelyInfinite {
    pub fn new(x: Transseries, bits: u32) -> Result<Self> {
        for t in x.terms() {
            if t.monomial.log_sign(bits)? != Sign::Positive {
                return Err(Error::NotPurelyInfinite);
            }
        }
        Ok(PurelyInfinite(x))
    }

    pub fn zero() -> Self {
        PurelyInfinite(Transseries::zero())
    }

    pub fn as_series(&self) -> &Transseries {
        &self.0
    }

    pub fn into_series(self) -> Transseries {
        self.0
    }
}

/// `x = big + real + small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub big: PurelyInfinite,
    pub real: ConstReal,
    pub small: Transseries,
}

impl Decomposition {
    pub fn reassemble(&self, bits: u32) -> Result<Transseries> {
        self.big.as_series().add(&Transseries::constant(self.real.clone()), bits)?.add(&self.small, bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `x ≺ y`
    StrictLess,
    /// `x ≍ y`
    Comparable,
    /// `x ≻ y`
    StrictGreater,
}

pub fn ts_compare(x: &Transseries, y: &Transseries, bits: u32) -> Result<Ordering> {
    match monomial::leading_difference(x.terms(), y.terms(), bits)? {
        None => Ok(Ordering::Equal),
        Some((_, c)) => Ok(c.sign(bits)?.to_ordering()),
    }
}

/// Compares leading monomials; `y` must be nonzero. Zero is `≺` everything.
pub fn dominance(x: &Transseries, y: &Transseries, bits: u32) -> Result<Dominance> {
    let my = y.leading_monomial()?;
    let Ok(mx) = x.leading_monomial() else {
        return Ok(Dominance::StrictLess);
    };
    Ok(match mx.compare(my, bits)? {
        Ordering::Less => Dominance::StrictLess,
        Ordering::Equal => Dominance::Comparable,
        Ordering::Greater => Dominance::StrictGreater,
    })
}

/// `x ∼ y`: same leading term.
pub fn asymptotic(x: &Transseries, y: &Transseries) -> Result<bool> {
    let ty = y.leading_term()?;
    Ok(x.terms().first() == Some(ty))
}

pub fn decompose(x: &Transseries, bits: u32) -> Result<Decomposition> {
    let mut big = Vec::new();
    let mut real = ConstReal::zero();
    let mut small = Vec::new();
    for t in x.terms() {
        match t.monomial.log_sign(bits)? {
            Sign::Positive => big.push(t.clone()),
            Sign::Zero => real = t.coeff.clone(),
            Sign::Negative => small.push(t.clone()),
        }
    }
    Ok(Decomposition {
        big: PurelyInfinite(Transseries::from_sorted_unchecked(big)),
        real,
        small: Transseries::from_sorted_unchecked(small),
    })
}

/// The first `beta` terms.
pub fn truncate_at(x: &Transseries, beta: usize) -> Result<Transseries> {
    if beta > x.len() {
        return Err(Error::IndexOutOfRange { index: beta, len: x.len() });
    }
    Ok(x.truncated(beta))
}

pub fn is_truncation(y: &Transseries, x: &Transseries) -> bool {
    y.len() <= x.len() && x.terms()[..y.len()] == *y.terms()
}

/// True for `log_k(w)` itself (unit coefficient), the atoms of the rank recursion.
pub fn is_log_atom(x: &Transseries) -> bool {
    matches!(x.terms(), [t] if t.coeff.is_one() && t.monomial.as_pure_ell().is_some())
}

/// Rank of `formal_log(m)`.
fn erank_of_log(m: &Monomial) -> usize {
    // formal_log(m) is 0, log_(k+1)(w), or w (for m = exp(w)): all rank 0
    let exp_is_omega = m.log_powers().is_empty() && is_log_atom(m.exp_arg()) && m.exp_arg().terms()[0].monomial.as_pure_ell() == Some(0);
    if m.is_one() || m.as_pure_ell().is_some() || exp_is_omega {
        return 0;
    }
    // log-power terms a_k log_(k+1)(w) contribute rank 0
    let inner = m.exp_arg().terms().iter().map(|t| erank_of_log(&t.monomial)).max().unwrap_or(0);
    1 + inner
}

/// Exponential rank over the atoms `log_k(w)`: 0 for atoms and zero,
/// otherwise one more than the largest rank of the exponents `g` with
/// `exp(g)` in the support.
pub fn erank(x: &Transseries) -> usize {
    if x.is_zero() || is_log_atom(x) {
        return 0;
    }
    1 + x.terms().iter().map(|t| erank_of_log(&t.monomial)).max().unwrap_or(0)
}

pub fn leading_monomial(x: &Transseries) -> Result<Monomial> {
    x.leading_monomial().cloned()
}

pub fn leading_term(x: &Transseries) -> Result<Term> {
    x.leading_term().cloned()
}

/// `log↑(x)`: the exponent of the leading monomial, which is the purely
/// infinite part of `log(x)`.
pub fn log_up(x: &Transseries, bits: u32) -> Result<PurelyInfinite> {
    let t = x.leading_term()?;
    if t.coeff.sign(bits)? != Sign::Positive {
        return Err(Error::NonPositiveArgument);
    }
    Ok(PurelyInfinite(t.monomial.formal_log(bits)?))
}

/// Leading monomial of `|x|`, or an error for zero.
pub fn valuation(x: &Transseries) -> Result<&Monomial> {
    x.leading_monomial()
}
