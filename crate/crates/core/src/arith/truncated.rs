use std::cmp::Ordering;

use crate::constants::DEFAULT_CONST_BITS;
use crate::error::Result;
use crate::series::{Monomial, Term, Transseries};

/// Limits applied to every inexact computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBudget {
    /// Number of leading terms kept, at least 1.
    pub max_terms: usize,
    /// Precision cutoff for sign queries.
    pub const_bits: u32,
}

impl TruncationBudget {
    pub fn new(max_terms: usize, const_bits: u32) -> Self {
        assert!(max_terms >= 1, "a truncation budget keeps at least one term");
        TruncationBudget { max_terms, const_bits }
    }

    pub fn with_terms(max_terms: usize) -> Self {
        TruncationBudget::new(max_terms, DEFAULT_CONST_BITS)
    }
}

impl Default for TruncationBudget {
    fn default() -> Self {
        TruncationBudget::new(16, DEFAULT_CONST_BITS)
    }
}

/// A value together with a certificate for what was dropped.
///
/// When `exact` is false, every monomial of `true value - value` is
/// strictly below `error_bound`, and `error_bound` is at most the smallest
/// monomial of `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedResult {
    pub value: Transseries,
    pub exact: bool,
    pub error_bound: Option<Monomial>,
}

impl TruncatedResult {
    pub fn exact(value: Transseries) -> Self {
        TruncatedResult { value, exact: true, error_bound: None }
    }

    /// `approx` is known to agree with the true value on every monomial
    /// `>= below` (everywhere if `below` is `None`). Keeps those terms,
    /// at most `max_terms` of them.
    pub fn settle(approx: Transseries, below: Option<&Monomial>, budget: &TruncationBudget) -> Result<Self> {
        let kept = match below {
            Some(b) => approx.at_or_above(b, budget.const_bits)?,
            None => approx,
        };
        if kept.len() > budget.max_terms {
            let value = kept.truncated(budget.max_terms);
            let bound = value.smallest_monomial().cloned();
            return Ok(TruncatedResult { value, exact: false, error_bound: bound });
        }
        Ok(match below {
            None => TruncatedResult::exact(kept),
            Some(b) => TruncatedResult { value: kept, exact: false, error_bound: Some(b.clone()) },
        })
    }

    /// Re-truncates to a (possibly smaller) budget.
    pub fn resettle(self, budget: &TruncationBudget) -> Result<Self> {
        TruncatedResult::settle(self.value, self.error_bound.as_ref(), budget)
    }

    pub fn bound(&self) -> Option<&Monomial> {
        self.error_bound.as_ref()
    }

    pub fn neg(&self) -> Self {
        TruncatedResult { value: self.value.neg(), exact: self.exact, error_bound: self.error_bound.clone() }
    }

    pub fn mul_term(&self, t: &Term, bits: u32) -> Result<Self> {
        if t.coeff.is_zero() {
            return Ok(TruncatedResult::exact(Transseries::zero()));
        }
        let bound = match &self.error_bound {
            Some(b) => Some(b.mul(&t.monomial, bits)?),
            None => None,
        };
        Ok(TruncatedResult { value: self.value.mul_term(t, bits)?, exact: self.exact, error_bound: bound })
    }

    pub fn add(&self, other: &TruncatedResult, budget: &TruncationBudget) -> Result<Self> {
        let bits = budget.const_bits;
        let below = max_bound(self.bound(), other.bound(), bits)?;
        TruncatedResult::settle(self.value.add(&other.value, bits)?, below.as_ref(), budget)
    }

    pub fn sub(&self, other: &TruncatedResult, budget: &TruncationBudget) -> Result<Self> {
        self.add(&other.neg(), budget)
    }

    /// Product; the error is bounded by `max(lead(x) * B_y, B_x * lead(y), B_x * B_y)`.
    pub fn mul(&self, other: &TruncatedResult, budget: &TruncationBudget) -> Result<Self> {
        let bits = budget.const_bits;
        let mut below: Option<Monomial> = None;
        let mut widen = |m: Monomial| -> Result<()> {
            below = max_bound(below.as_ref(), Some(&m), bits)?;
            Ok(())
        };
        if let Some(by) = other.bound() {
            if let Ok(lx) = self.value.leading_monomial() {
                widen(lx.mul(by, bits)?)?;
            }
        }
        if let Some(bx) = self.bound() {
            if let Ok(ly) = other.value.leading_monomial() {
                widen(bx.mul(ly, bits)?)?;
            }
            if let Some(by) = other.bound() {
                widen(bx.mul(by, bits)?)?;
            }
        }
        TruncatedResult::settle(self.value.mul_at_or_above(&other.value, below.as_ref(), bits)?, below.as_ref(), budget)
    }

    /// Whether `x` is consistent with this result.
    pub fn admits(&self, x: &Transseries, bits: u32) -> Result<bool> {
        agree_above(&self.value, x, self.bound(), bits)
    }

    /// Whether two results can describe the same value: their difference
    /// lies below the larger of the two bounds.
    pub fn agrees_with(&self, other: &TruncatedResult, bits: u32) -> Result<bool> {
        let b = max_bound(self.bound(), other.bound(), bits)?;
        agree_above(&self.value, &other.value, b.as_ref(), bits)
    }
}

/// The larger bound; `None` means no error and is the smallest.
pub fn max_bound(a: Option<&Monomial>, b: Option<&Monomial>, bits: u32) -> Result<Option<Monomial>> {
    Ok(match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.max(y, bits)?.clone()),
    })
}

/// True iff every monomial of `x - y` is strictly below `bound`
/// (or `x == y` when there is no bound).
pub fn agree_above(x: &Transseries, y: &Transseries, bound: Option<&Monomial>, bits: u32) -> Result<bool> {
    let diff = x.sub(y, bits)?;
    match (bound, diff.leading_monomial()) {
        (_, Err(_)) => Ok(true),
        (None, Ok(_)) => Ok(false),
        (Some(b), Ok(m)) => Ok(m.compare(b, bits)? == Ordering::Less),
    }
}
