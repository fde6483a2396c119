use std::cmp::Ordering;

use crate::constants::ConstReal;
use crate::error::{Error, Result};
use crate::series::{Monomial, Transseries};

use super::{TruncatedResult, TruncationBudget};

/// A polynomial prefix `a_0 + a_1 X + ... + a_d X^d` of a formal power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<ConstReal>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<ConstReal>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn from_rationals(coeffs: &[(i64, i64)]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&(n, d)| ConstReal::rational(n, d)).collect())
    }

    /// Index of the last stored coefficient (0 for the empty series).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> ConstReal {
        self.coeffs.get(i).cloned().unwrap_or_else(ConstReal::zero)
    }

    fn mul_to(&self, other: &PowerSeries, max_degree: usize) -> PowerSeries {
        let len = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(max_degree + 1);
        let mut out = vec![ConstReal::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        PowerSeries::new(out)
    }
}

/// `P(eps) = sum_i a_i eps^i`.
///
/// With `full_series` the coefficients are read as the prefix of an
/// infinite series: `eps` must then be infinitesimal and the result is
/// exact only for `eps = 0`.
pub fn eval_power_series(
    p: &PowerSeries,
    eps: &Transseries,
    budget: &TruncationBudget,
    full_series: bool,
) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let lead = eps.leading_monomial().ok();
    if full_series {
        if let Some(d) = lead {
            if d.compare(&Monomial::one(), bits)? != Ordering::Less {
                return Err(Error::NotInfinitesimal);
            }
        }
    }
    let floor = match (full_series, lead) {
        (true, Some(d)) => Some(d.powi(p.degree() as i64)),
        _ => None,
    };
    let mut sum = Transseries::zero();
    let mut power = Transseries::one();
    for (i, a) in p.coeffs.iter().enumerate() {
        if i > 0 {
            power = power.mul(eps, bits)?;
            if let Some(f) = &floor {
                power = power.at_or_above(f, bits)?;
            }
            if power.is_zero() {
                break;
            }
        }
        if !a.is_zero() {
            sum = sum.add(&power.scale(a), bits)?;
        }
    }
    TruncatedResult::settle(sum, floor.as_ref(), budget)
}

/// `P o Q` up to degree `deg P * deg Q`.
pub fn compose_power_series(p: &PowerSeries, q: &PowerSeries) -> Result<PowerSeries> {
    compose_power_series_to(p, q, p.degree() * q.degree())
}

/// Coefficients `c_0 = a_0` and
/// `c_k = sum_{n=1..k} a_n sum_{m_1+...+m_n=k} b_{m_1}...b_{m_n}` for `k <= max_degree`.
pub fn compose_power_series_to(p: &PowerSeries, q: &PowerSeries, max_degree: usize) -> Result<PowerSeries> {
    if !q.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = vec![ConstReal::zero(); max_degree + 1];
    out[0] = p.coeff(0);
    // q_pow holds Q^n truncated at max_degree
    let mut q_pow = PowerSeries::new(vec![ConstReal::one()]);
    for n in 1..=p.degree().min(max_degree) {
        q_pow = q_pow.mul_to(q, max_degree);
        let a = p.coeff(n);
        if a.is_zero() {
            continue;
        }
        for (k, b) in q_pow.coeffs.iter().enumerate() {
            out[k] = out[k].add(&a.mul(b));
        }
    }
    Ok(PowerSeries::new(out))
}
