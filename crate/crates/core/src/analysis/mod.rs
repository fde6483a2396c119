//! Exponential, logarithm and the derivation.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::arith::{expand_series, max_bound, split_leading, TruncatedResult, TruncationBudget};
use crate::constants::{ConstReal, Sign};
use crate::error::{Error, Result};
use crate::series::{decompose, Monomial, Term, Transseries};

/// `exp(x)` for `x = g + r + eps`: the monomial `exp(g)` times `e^r`
/// times the exponential series in `eps`.
pub fn ts_exp(x: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let d = decompose(x, bits)?;
    let factor = Term::new(d.real.exp(), Monomial::exp_of(d.big.as_series(), bits)?);
    expand_series(&Transseries::zero(), &factor, &d.small, inverse_factorial, budget)
}

fn inverse_factorial(n: usize) -> ConstReal {
    let mut f = BigRational::one();
    for i in 2..=n {
        f *= BigRational::from_integer(i.into());
    }
    ConstReal::from_rational(f.recip())
}

fn mercator(n: usize) -> ConstReal {
    match n {
        0 => ConstReal::zero(),
        _ if n % 2 == 1 => ConstReal::rational(1, n as i64),
        _ => ConstReal::rational(-1, n as i64),
    }
}

/// `log(x)` for `x = r m (1 + eps) > 0`: `log(m) + log(r)` plus the
/// Mercator series in `eps`.
pub fn ts_log(x: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    if x.sign(bits)? != Sign::Positive {
        return Err(Error::NonPositiveArgument);
    }
    let (t, eps) = split_leading(x, bits)?;
    let shift = t.monomial.formal_log(bits)?.add(&Transseries::constant(t.coeff.log(bits)?), bits)?;
    expand_series(&shift, &Term::constant(ConstReal::one()), &eps, mercator, budget)
}

/// `exp` of an inexact value. The error of the argument must be at most
/// of order 1, otherwise the exponent itself is unknown.
pub fn ts_exp_approx(x: &TruncatedResult, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let Some(b) = x.bound() else {
        return ts_exp(&x.value, budget);
    };
    if b.compare(&Monomial::one(), bits)? == Ordering::Greater {
        return Err(Error::BudgetExhausted(format!("exponent known only above {b}")));
    }
    let r = ts_exp(&x.value, budget)?;
    // exp(x + e) - exp(x) is of the order of exp(g) * e
    let scale = Monomial::exp_of(decompose(&x.value, bits)?.big.as_series(), bits)?;
    let below = max_bound(r.bound(), Some(&scale.mul(b, bits)?), bits)?;
    TruncatedResult::settle(r.value, below.as_ref(), budget)
}

/// `log` of an inexact positive value.
pub fn ts_log_approx(x: &TruncatedResult, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let Some(b) = x.bound() else {
        return ts_log(&x.value, budget);
    };
    let Ok(lead) = x.value.leading_monomial() else {
        return Err(Error::BudgetExhausted("logarithm of a value known only as a bound".into()));
    };
    let r = ts_log(&x.value, budget)?;
    // log(x + e) - log(x) is of the order of e / lead(x)
    let below = max_bound(r.bound(), Some(&b.div(lead, bits)?), bits)?;
    TruncatedResult::settle(r.value, below.as_ref(), budget)
}

fn is_positive_infinite(x: &Transseries, bits: u32) -> Result<bool> {
    let Ok(t) = x.leading_term() else {
        return Ok(false);
    };
    Ok(t.coeff.sign(bits)? == Sign::Positive && t.monomial.log_sign(bits)? == Sign::Positive)
}

/// `log_k(x)` for `x > R`.
pub fn iterated_log(x: &Transseries, k: usize, budget: &TruncationBudget) -> Result<TruncatedResult> {
    iterated_log_approx(&TruncatedResult::exact(x.clone()), k, budget)
}

pub fn iterated_log_approx(x: &TruncatedResult, k: usize, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let mut acc = x.clone();
    for _ in 0..k {
        if !is_positive_infinite(&acc.value, budget.const_bits)? {
            return Err(Error::NotPositiveInfinite);
        }
        acc = ts_log_approx(&acc, budget)?;
    }
    Ok(acc)
}

/// `d/dw log_k(w) = 1 / (w log(w) ... log_(k-1)(w))`.
fn derive_ell(k: usize) -> Monomial {
    let powers = (0..k).map(|i| (i, ConstReal::from(-1))).collect();
    Monomial::new(powers, Transseries::zero(), 0).expect("log powers are always canonical")
}

/// `dm = m * d(log m)`.
pub fn derive_monomial(m: &Monomial, bits: u32) -> Result<Transseries> {
    let mut terms = Vec::new();
    for (k, a) in m.log_powers() {
        terms.push(Term::new(a.clone(), derive_ell(k + 1)));
    }
    terms.extend(derive(m.exp_arg(), bits)?.into_terms());
    Transseries::from_terms(terms, bits)?.mul_monomial(m, bits)
}

pub fn derive(x: &Transseries, bits: u32) -> Result<Transseries> {
    let mut terms = Vec::new();
    for t in x.terms() {
        if t.monomial.is_one() {
            continue;
        }
        terms.extend(derive_monomial(&t.monomial, bits)?.scale(&t.coeff).into_terms());
    }
    Transseries::from_terms(terms, bits)
}

pub fn derive_n(x: &Transseries, n: usize, bits: u32) -> Result<Transseries> {
    let mut acc = x.clone();
    for _ in 0..n {
        acc = derive(&acc, bits)?;
    }
    Ok(acc)
}

/// Derivative of an inexact value. For `f < g` with `g` not of order 1
/// we have `f' < g'`, and `1/w` bounds the derivative of anything `< 1`.
pub fn derive_approx(x: &TruncatedResult, bits: u32) -> Result<TruncatedResult> {
    let value = derive(&x.value, bits)?;
    let Some(b) = x.bound() else {
        return Ok(TruncatedResult::exact(value));
    };
    let below = if b.is_one() {
        Monomial::omega_pow(-1, 1)
    } else {
        derive_monomial(b, bits)?.leading_monomial()?.clone()
    };
    let keep = TruncationBudget::new(value.len().max(1), bits);
    TruncatedResult::settle(value, Some(&below), &keep)
}
