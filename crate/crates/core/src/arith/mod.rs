//! Ring and field operations: exact sums, products and powers, budgeted
//! inversion and division, and evaluation and composition of power series.

mod power_series;
mod truncated;

use std::cmp::Ordering;

use crate::constants::ConstReal;
use crate::error::{Error, Result};
use crate::series::{Monomial, Term, Transseries};

pub use power_series::{compose_power_series, compose_power_series_to, eval_power_series, PowerSeries};
pub use truncated::{agree_above, max_bound, TruncatedResult, TruncationBudget};

pub fn ts_add(x: &Transseries, y: &Transseries, bits: u32) -> Result<Transseries> {
    x.add(y, bits)
}

pub fn ts_neg(x: &Transseries) -> Transseries {
    x.neg()
}

pub fn ts_mul(x: &Transseries, y: &Transseries, bits: u32) -> Result<Transseries> {
    x.mul(y, bits)
}

pub fn ts_npow(x: &Transseries, n: u32, bits: u32) -> Result<Transseries> {
    if let [t] = x.terms() {
        return Ok(Transseries::from_term(term_powi(t, i64::from(n))?));
    }
    let mut result = Transseries::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul(&base, bits)?;
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base, bits)?;
        }
    }
    Ok(result)
}

pub(crate) fn term_powi(t: &Term, n: i64) -> Result<Term> {
    Ok(Term::new(t.coeff.powi(n)?, t.monomial.powi(n)))
}

pub(crate) fn term_inverse(t: &Term) -> Result<Term> {
    Ok(Term::new(t.coeff.inv()?, t.monomial.inv()))
}

/// Splits `x = t (1 + eps)` with `t` the leading term and `eps < 1`.
pub(crate) fn split_leading(x: &Transseries, bits: u32) -> Result<(Term, Transseries)> {
    let t = x.leading_term()?.clone();
    let rest = Transseries::from_sorted_unchecked(x.terms()[1..].to_vec());
    let eps = rest.mul_term(&term_inverse(&t)?, bits)?;
    Ok((t, eps))
}

/// `shift + factor * sum_n a_n eps^n` for infinitesimal `eps`, with the
/// number of powers chosen so that the kept terms are certain.
///
/// Powers up to `K` are taken modulo monomials below `d^K`, `d` the
/// leading monomial of `eps`; the remainder is then below
/// `factor * d^K`. `K` doubles until the budget is filled.
pub(crate) fn expand_series(
    shift: &Transseries,
    factor: &Term,
    eps: &Transseries,
    coeff: impl Fn(usize) -> ConstReal,
    budget: &TruncationBudget,
) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let head = Transseries::from_term(Term::new(factor.coeff.mul(&coeff(0)), factor.monomial.clone()));
    let Ok(d) = eps.leading_monomial() else {
        return TruncatedResult::settle(shift.add(&head, bits)?, None, budget);
    };
    debug_assert_eq!(d.compare(&Monomial::one(), bits)?, Ordering::Less);
    let cap = 4 * budget.max_terms + 8;
    let mut k = 1;
    loop {
        let floor = d.powi(k as i64);
        let mut sum = Transseries::constant(coeff(0));
        let mut power = Transseries::one();
        for n in 1..=k {
            power = power.mul_at_or_above(eps, Some(&floor), bits)?;
            if power.is_zero() {
                break;
            }
            let a = coeff(n);
            if !a.is_zero() {
                sum = sum.add(&power.scale(&a), bits)?;
            }
        }
        let approx = shift.add(&sum.mul_term(factor, bits)?, bits)?;
        let below = floor.mul(&factor.monomial, bits)?;
        let result = TruncatedResult::settle(approx, Some(&below), budget)?;
        if result.value.len() >= budget.max_terms || k >= cap {
            return Ok(result);
        }
        k *= 2;
    }
}

/// `1/x`, by the geometric series in `eps` where `x = t (1 + eps)`.
pub fn ts_inverse(x: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let (t, eps) = split_leading(x, budget.const_bits)?;
    let alternating = |n: usize| if n.is_multiple_of(2) { ConstReal::one() } else { ConstReal::rational(-1, 1) };
    expand_series(&Transseries::zero(), &term_inverse(&t)?, &eps, alternating, budget)
}

/// `x / y`; the error of `1/y` is scaled by the leading monomial of `x`.
pub fn ts_div(x: &Transseries, y: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    if y.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let inv = ts_inverse(y, budget)?;
    TruncatedResult::exact(x.clone()).mul(&inv, budget)
}

/// Sum of a finite family.
pub fn sum_family(xs: &[Transseries], bits: u32) -> Result<Transseries> {
    let terms = xs.iter().flat_map(|x| x.terms().iter().cloned()).collect();
    Transseries::from_terms(terms, bits)
}
