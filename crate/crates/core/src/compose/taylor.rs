//! Taylor expansion of `f o (x + eps)` around `x`.

use std::cmp::Ordering;

use crate::analysis::derive_n;
use crate::arith::{max_bound, TruncatedResult, TruncationBudget};
use crate::constants::ConstReal;
use crate::error::{Error, Result};
use crate::series::{Monomial, Term, Transseries};

use super::compose;

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorExpansion {
    pub center: Transseries,
    /// `f^(n)(x) / n!` for `n = 0..=order`.
    pub coefficients: Vec<TruncatedResult>,
    pub order: usize,
}

/// Both sides of `f(x + eps) = sum c_n eps^n + R`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorComparison {
    pub lhs: TruncatedResult,
    pub rhs: TruncatedResult,
    /// Leading monomial of the first omitted term, `None` when it vanishes.
    pub remainder_bound: Option<Monomial>,
}

pub fn taylor_expand(f: &Transseries, x: &Transseries, order: usize, budget: &TruncationBudget) -> Result<TaylorExpansion> {
    let bits = budget.const_bits;
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut fact = ConstReal::one();
    for n in 0..=order {
        if n > 1 {
            fact = fact.mul(&ConstReal::from(n as i64));
        }
        let c = compose(&derive_n(f, n, bits)?, x, budget)?;
        coefficients.push(c.mul_term(&Term::constant(fact.inv()?), bits)?);
    }
    Ok(TaylorExpansion { center: x.clone(), coefficients, order })
}

impl TaylorExpansion {
    /// `sum c_n eps^n`.
    pub fn evaluate(&self, eps: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
        let e = TruncatedResult::exact(eps.clone());
        let mut power = TruncatedResult::exact(Transseries::one());
        let mut acc = TruncatedResult::exact(Transseries::zero());
        for (n, c) in self.coefficients.iter().enumerate() {
            if n > 0 {
                power = power.mul(&e, budget)?;
            }
            acc = acc.add(&c.mul(&power, budget)?, budget)?;
        }
        Ok(acc)
    }
}

pub fn taylor_compare(
    f: &Transseries,
    x: &Transseries,
    eps: &Transseries,
    order: usize,
    budget: &TruncationBudget,
) -> Result<TaylorComparison> {
    let bits = budget.const_bits;
    let expansion = taylor_expand(f, x, order + 1, budget)?;
    if let Ok(d) = eps.leading_monomial() {
        for c in &expansion.coefficients[..=order] {
            for t in c.value.terms() {
                if d.compare(&t.monomial, bits)? != Ordering::Less {
                    return Err(Error::EpsilonTooLarge);
                }
            }
        }
    }
    let next = &expansion.coefficients[order + 1];
    let remainder_bound = match (next.value.leading_monomial(), eps.leading_monomial()) {
        (Ok(c), Ok(d)) => Some(c.mul(&d.powi(order as i64 + 1), bits)?),
        _ => None,
    };
    let truncated = TaylorExpansion {
        center: expansion.center,
        coefficients: expansion.coefficients[..=order].to_vec(),
        order,
    };
    let rhs = truncated.evaluate(eps, budget)?;
    let lhs = compose(f, &x.add(eps, bits)?, budget)?;
    Ok(TaylorComparison { lhs, rhs, remainder_bound })
}

impl TaylorComparison {
    /// Both sides agree above the truncation bounds, or their difference
    /// is of the order of the first omitted term.
    pub fn holds(&self, bits: u32) -> Result<bool> {
        let diff = self.lhs.value.sub(&self.rhs.value, bits)?;
        let Ok(lead) = diff.leading_monomial() else {
            return Ok(true);
        };
        if let Some(b) = max_bound(self.lhs.bound(), self.rhs.bound(), bits)? {
            if lead.compare(&b, bits)? == Ordering::Less {
                return Ok(true);
            }
        }
        match &self.remainder_bound {
            Some(r) => Ok(lead.compare(r, bits)? != Ordering::Greater),
            None => Ok(false),
        }
    }
}

pub fn taylor_check(
    f: &Transseries,
    x: &Transseries,
    eps: &Transseries,
    order: usize,
    budget: &TruncationBudget,
) -> Result<bool> {
    taylor_compare(f, x, eps, order, budget)?.holds(budget.const_bits)
}
