//! Composition `f o g` for `g > R`: the recursive substitution rules, an
//! admissible-tree oracle used to cross-check them, and Taylor expansion.

mod taylor;
mod tree;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::RwLock;

use crate::analysis::{ts_exp_approx, ts_log_approx};
use crate::arith::{TruncatedResult, TruncationBudget};
use crate::constants::{ConstReal, Sign, DEFAULT_CONST_BITS};
use crate::error::{Error, Result};
use crate::series::{Monomial, Term, Transseries};

pub use taylor::{taylor_check, taylor_compare, taylor_expand, TaylorComparison, TaylorExpansion};
pub use tree::{
    contribution, enumerate_admissible_trees, tree_oracle_compose, tree_oracle_compose_roots, AdmissibleTree, TreeRoot,
};

/// Largest integer exponent expanded by repeated multiplication.
const MAX_INTEGER_POWER: i64 = 64;

/// The target `g` of a composition together with the values `log_k(g)`.
pub struct Substitution {
    target: Transseries,
    budget: TruncationBudget,
    base_values: RwLock<Vec<TruncatedResult>>,
    /// `m o g` for the monomials met so far; terms of one series often
    /// share their exponential part.
    monomials: RwLock<HashMap<Monomial, TruncatedResult>>,
    powers: RwLock<HashMap<(usize, ConstReal), TruncatedResult>>,
    /// Set when an exponent looks like it has infinitely many infinite terms.
    stalled: AtomicBool,
}

impl Substitution {
    pub fn new(target: &Transseries, budget: TruncationBudget) -> Result<Self> {
        let bits = budget.const_bits;
        let lead = target.leading_term().map_err(|_| Error::TargetNotPositiveInfinite)?;
        if lead.coeff.sign(bits)? != Sign::Positive || lead.monomial.log_sign(bits)? != Sign::Positive {
            return Err(Error::TargetNotPositiveInfinite);
        }
        Ok(Substitution {
            target: target.clone(),
            budget,
            base_values: RwLock::new(vec![TruncatedResult::exact(target.clone())]),
            monomials: RwLock::new(HashMap::new()),
            powers: RwLock::new(HashMap::new()),
            stalled: AtomicBool::new(false),
        })
    }

    pub fn target(&self) -> &Transseries {
        &self.target
    }

    pub fn budget(&self) -> &TruncationBudget {
        &self.budget
    }

    /// `log_k(w) o g = log_k(g)`.
    pub fn base_value(&self, k: usize) -> Result<TruncatedResult> {
        if let Some(v) = self.base_values.read().expect("cache lock").get(k) {
            return Ok(v.clone());
        }
        let mut cache = self.base_values.write().expect("cache lock");
        while cache.len() <= k {
            let last = cache.last().expect("cache starts with g");
            let next = ts_log_approx(last, &self.budget)?;
            cache.push(next);
        }
        Ok(cache[k].clone())
    }

    /// `log_k(g)^a`.
    fn base_power(&self, k: usize, a: &ConstReal) -> Result<TruncatedResult> {
        let key = (k, a.clone());
        if let Some(v) = self.powers.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = match a.as_integer() {
            Some(n) if (1..=MAX_INTEGER_POWER).contains(&n) => power(&self.base_value(k)?, n as u32, &self.budget),
            _ => {
                let scaled = self.base_value(k + 1)?.mul_term(&Term::constant(a.clone()), self.budget.const_bits)?;
                ts_exp_approx(&scaled, &self.budget)
            }
        }?;
        self.powers.write().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// `f o g` at the substitution's own budget.
    pub fn apply(&self, f: &Transseries) -> Result<TruncatedResult> {
        let mut acc = TruncatedResult::exact(Transseries::zero());
        for t in f.terms() {
            acc = acc.add(&self.apply_term(t)?, &self.budget)?;
        }
        Ok(acc)
    }

    fn apply_term(&self, t: &Term) -> Result<TruncatedResult> {
        self.apply_monomial(&t.monomial)?.mul_term(&Term::constant(t.coeff.clone()), self.budget.const_bits)
    }

    fn apply_monomial(&self, m: &Monomial) -> Result<TruncatedResult> {
        if let Some(v) = self.monomials.read().expect("cache lock").get(m) {
            return Ok(v.clone());
        }
        let mut acc = self.apply_exp(m.exp_arg())?;
        for (k, a) in m.log_powers() {
            acc = acc.mul(&self.base_power(*k, a)?, &self.budget)?;
        }
        self.monomials.write().expect("cache lock").insert(m.clone(), acc.clone());
        Ok(acc)
    }

    /// `exp(x o g)`, shared by all monomials with exponential part `exp(x)`.
    fn apply_exp(&self, x: &Transseries) -> Result<TruncatedResult> {
        if x.is_zero() {
            return Ok(TruncatedResult::exact(Transseries::one()));
        }
        let e = Monomial::exp_of(x, self.budget.const_bits)?;
        if let Some(v) = self.monomials.read().expect("cache lock").get(&e) {
            return Ok(v.clone());
        }
        let inner = self.apply(x)?;
        if stalls(&inner, self.budget.const_bits)? {
            self.stalled.store(true, AtomicOrdering::Relaxed);
        }
        let v = ts_exp_approx(&inner, &self.budget)?;
        self.monomials.write().expect("cache lock").insert(e, v.clone());
        Ok(v)
    }
}

/// Whether an exponent known only above an infinite bound decays too slowly
/// for more terms to help: the ratio of its smallest kept term to its
/// leading term has a logarithm negligible against that of the former.
fn stalls(x: &TruncatedResult, bits: u32) -> Result<bool> {
    let Some(b) = x.bound() else {
        return Ok(false);
    };
    let terms = x.value.terms();
    if b.log_sign(bits)? != Sign::Positive || terms.len() < 2 {
        return Ok(false);
    }
    let s = &terms[terms.len() - 1].monomial;
    let ratio = s.div(&terms[0].monomial, bits)?;
    let (Ok(step), Ok(size)) = (ratio.formal_log(bits)?.leading_monomial().cloned(), s.formal_log(bits)?.leading_monomial().cloned()) else {
        return Ok(false);
    };
    Ok(step.compare(&size, bits)? == Ordering::Less)
}

fn power(x: &TruncatedResult, n: u32, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let mut result = TruncatedResult::exact(Transseries::one());
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul(&base, budget)?;
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base, budget)?;
        }
    }
    Ok(result)
}

/// `f o g` for `g > R`.
///
/// Intermediate values are kept at a working precision that starts at the
/// budget and doubles while an exponent is not known to within `O(1)` or
/// the result is short of the requested number of terms. It gives up
/// after one doubling when an exponent's terms decay too slowly for any
/// precision to pin it down.
pub fn compose(f: &Transseries, g: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let base = budget.max_terms.max(4);
    let cap = 4 * base;
    let mut work = base;
    loop {
        let sub = Substitution::new(g, TruncationBudget::new(work, budget.const_bits))?;
        match sub.apply(f) {
            Ok(r) => {
                let r = r.resettle(budget)?;
                if r.exact || r.value.len() >= budget.max_terms || work >= cap {
                    return Ok(r);
                }
            }
            Err(Error::BudgetExhausted(msg)) if work >= cap || (work > base && sub.stalled.load(AtomicOrdering::Relaxed)) => {
                return Err(Error::BudgetExhausted(msg))
            }
            Err(Error::BudgetExhausted(_)) => {}
            Err(e) => return Err(e),
        }
        work *= 2;
    }
}

/// Whether `f o w` returns `f` exactly.
pub fn compose_right_identity_check(f: &Transseries) -> bool {
    let budget = TruncationBudget::new(f.len().max(1), DEFAULT_CONST_BITS);
    match compose(f, &Transseries::omega(), &budget) {
        Ok(r) => r.exact && &r.value == f,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests;
