//! Bottom-up evaluation of parsed expressions.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::analysis::{ts_exp_approx, ts_log_approx};
use crate::arith::{max_bound, ts_inverse, TruncatedResult, TruncationBudget};
use crate::constants::{ConstReal, Sign};
use crate::error::{Error, Result};
use crate::series::{Term, Transseries};

use super::parser::Expr;

/// Outcome of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub normal_form: String,
    pub exact: bool,
    pub error_bound: Option<String>,
    /// Term budget the value was computed with.
    pub budget_used: usize,
    pub result: TruncatedResult,
}

impl EvalReport {
    pub fn new(result: TruncatedResult, budget: &TruncationBudget) -> Self {
        EvalReport {
            normal_form: result.value.to_string(),
            exact: result.exact,
            error_bound: result.bound().map(|m| m.to_string()),
            budget_used: budget.max_terms,
            result,
        }
    }

    /// Normal form followed by ` (+ o(bound))` when inexact.
    pub fn rendered(&self) -> String {
        render_result(&self.result)
    }
}

pub fn render_result(r: &TruncatedResult) -> String {
    match r.bound() {
        Some(b) => format!("{} (+ o({b}))", r.value),
        None => r.value.to_string(),
    }
}

pub fn evaluate(e: &Expr, budget: &TruncationBudget) -> Result<EvalReport> {
    Ok(EvalReport::new(eval(e, budget)?, budget))
}

/// `1/x` for an inexact `x`: the error moves by `e / lead(x)^2`.
pub fn inverse_approx(x: &TruncatedResult, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let Some(b) = x.bound() else {
        return ts_inverse(&x.value, budget);
    };
    let lead = match x.value.leading_monomial() {
        Ok(m) if m.compare(b, bits)? == Ordering::Greater => m.clone(),
        _ => return Err(Error::BudgetExhausted("divisor known only up to its leading order".into())),
    };
    let r = ts_inverse(&x.value, budget)?;
    let carried = b.div(&lead.mul(&lead, bits)?, bits)?;
    let below = max_bound(r.bound(), Some(&carried), bits)?;
    TruncatedResult::settle(r.value, below.as_ref(), budget)
}

fn power_int(x: &TruncatedResult, n: u64, budget: &TruncationBudget) -> Result<TruncatedResult> {
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

fn power(x: &TruncatedResult, q: &BigRational, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    if q.is_integer() {
        let n = q.numer().abs().to_u64().ok_or_else(|| Error::BudgetExhausted("exponent too large".into()))?;
        let base = if q.is_negative() { inverse_approx(x, budget)? } else { x.clone() };
        return power_int(&base, n, budget);
    }
    let c = ConstReal::from(q.clone());
    if x.exact && x.value.len() == 1 {
        let t = &x.value.terms()[0];
        if t.coeff.sign(bits)? != Sign::Positive {
            return Err(Error::NonPositiveArgument);
        }
        let coeff = t.coeff.log(bits)?.mul(&c).exp();
        return Ok(TruncatedResult::exact(Transseries::from_term(Term::new(coeff, t.monomial.pow(&c)))));
    }
    let l = ts_log_approx(x, budget)?.mul_term(&Term::constant(c), bits)?;
    ts_exp_approx(&l, budget)
}

fn eval(e: &Expr, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let exact = |x: Transseries| Ok(TruncatedResult::exact(x));
    match e {
        Expr::Num(q) => exact(Transseries::constant(ConstReal::from(q.clone()))),
        Expr::Omega => exact(Transseries::omega()),
        Expr::Neg(a) => Ok(eval(a, budget)?.neg()),
        Expr::Add(a, b) => eval(a, budget)?.add(&eval(b, budget)?, budget),
        Expr::Sub(a, b) => eval(a, budget)?.sub(&eval(b, budget)?, budget),
        Expr::Mul(a, b) => eval(a, budget)?.mul(&eval(b, budget)?, budget),
        Expr::Div(a, b) => {
            let num = eval(a, budget)?;
            let den = eval(b, budget)?;
            if den.exact && den.value.is_zero() {
                return Err(Error::ZeroArgument);
            }
            num.mul(&inverse_approx(&den, budget)?, budget)
        }
        Expr::Pow(a, q) => power(&eval(a, budget)?, q, budget),
        Expr::Exp(a) => ts_exp_approx(&eval(a, budget)?, budget),
        Expr::Log(k, a) => {
            let mut x = eval(a, budget)?;
            for _ in 0..*k {
                x = ts_log_approx(&x, budget)?;
            }
            Ok(x)
        }
    }
}
