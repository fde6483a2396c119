use std::cmp::Ordering;
use std::fmt;

use crate::constants::{ConstReal, Sign};
use crate::error::{Error, Result};

use super::Monomial;

/// A term `r * m` with `r != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: ConstReal,
    pub monomial: Monomial,
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", Transseries::from_term(self.clone()))
    }
}

impl Term {
    pub fn new(coeff: ConstReal, monomial: Monomial) -> Self {
        Term { coeff, monomial }
    }

    pub fn constant(c: ConstReal) -> Self {
        Term::new(c, Monomial::one())
    }

    pub fn mul(&self, other: &Term, bits: u32) -> Result<Term> {
        Ok(Term::new(self.coeff.mul(&other.coeff), self.monomial.mul(&other.monomial, bits)?))
    }
}

/// A finite transseries: terms in strictly decreasing monomial order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Transseries {
    terms: Vec<Term>,
}

impl fmt::Debug for Transseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transseries({self})")
    }
}

impl Transseries {
    pub fn zero() -> Self {
        Transseries { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Transseries::constant(ConstReal::one())
    }

    pub fn constant(c: ConstReal) -> Self {
        Transseries::from_term(Term::constant(c))
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        Transseries::constant(ConstReal::rational(numer, denom))
    }

    /// The series `w`.
    pub fn omega() -> Self {
        Transseries::monomial(Monomial::omega())
    }

    /// `log_k(w)`.
    pub fn ell(k: usize) -> Self {
        Transseries::monomial(Monomial::ell(k))
    }

    pub fn monomial(m: Monomial) -> Self {
        Transseries::from_term(Term::new(ConstReal::one(), m))
    }

    pub fn from_term(t: Term) -> Self {
        if t.coeff.is_zero() {
            return Transseries::zero();
        }
        Transseries { terms: vec![t] }
    }

    /// Caller guarantees strictly decreasing monomials and nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Transseries { terms }
    }

    /// Sorts and combines an arbitrary list of terms.
    pub fn from_terms(terms: Vec<Term>, bits: u32) -> Result<Self> {
        let runs: Vec<Vec<Term>> = terms.into_iter().filter(|t| !t.coeff.is_zero()).map(|t| vec![t]).collect();
        Ok(Transseries { terms: merge_all(runs, bits)? })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, when the series is a constant (or zero).
    pub fn as_constant(&self) -> Option<ConstReal> {
        match self.terms.as_slice() {
            [] => Some(ConstReal::zero()),
            [t] if t.monomial.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroArgument)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(&self.leading_term()?.monomial)
    }

    pub fn smallest_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.monomial)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff_of(&self, m: &Monomial) -> ConstReal {
        self.terms.iter().find(|t| &t.monomial == m).map(|t| t.coeff.clone()).unwrap_or_else(ConstReal::zero)
    }

    pub fn sign(&self, bits: u32) -> Result<Sign> {
        match self.terms.first() {
            None => Ok(Sign::Zero),
            Some(t) => t.coeff.sign(bits),
        }
    }

    pub fn neg(&self) -> Transseries {
        Transseries { terms: self.terms.iter().map(|t| Term::new(t.coeff.neg(), t.monomial.clone())).collect() }
    }

    pub fn scale(&self, c: &ConstReal) -> Transseries {
        if c.is_zero() {
            return Transseries::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff.mul(c), t.monomial.clone()))
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Transseries { terms }
    }

    pub fn add(&self, other: &Transseries, bits: u32) -> Result<Transseries> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Ok(Transseries { terms: merge(&self.terms, &other.terms, bits)? })
    }

    pub fn sub(&self, other: &Transseries, bits: u32) -> Result<Transseries> {
        self.add(&other.neg(), bits)
    }

    /// Multiplication by a single term, which preserves the order.
    pub fn mul_term(&self, t: &Term, bits: u32) -> Result<Transseries> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for s in &self.terms {
            let p = s.mul(t, bits)?;
            if !p.coeff.is_zero() {
                terms.push(p);
            }
        }
        Ok(Transseries { terms })
    }

    pub fn mul_monomial(&self, m: &Monomial, bits: u32) -> Result<Transseries> {
        self.mul_term(&Term::new(ConstReal::one(), m.clone()), bits)
    }

    /// Convolution product.
    pub fn mul(&self, other: &Transseries, bits: u32) -> Result<Transseries> {
        if self.is_zero() || other.is_zero() {
            return Ok(Transseries::zero());
        }
        let (short, long) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut runs = Vec::with_capacity(short.len());
        for t in &short.terms {
            runs.push(long.mul_term(t, bits)?.terms);
        }
        Ok(Transseries { terms: merge_all(runs, bits)? })
    }

    /// `(self * other).at_or_above(floor)`, without forming the products
    /// that fall below `floor`.
    pub fn mul_at_or_above(&self, other: &Transseries, floor: Option<&Monomial>, bits: u32) -> Result<Transseries> {
        let Some(floor) = floor else {
            return self.mul(other, bits);
        };
        let mut runs = Vec::with_capacity(self.len());
        for s in &self.terms {
            let mut run = Vec::new();
            // rows are decreasing, so stop at the first product below the floor
            for t in &other.terms {
                let m = s.monomial.mul(&t.monomial, bits)?;
                if m.compare(floor, bits)? == Ordering::Less {
                    break;
                }
                let c = s.coeff.mul(&t.coeff);
                if !c.is_zero() {
                    run.push(Term::new(c, m));
                }
            }
            runs.push(run);
        }
        Ok(Transseries { terms: merge_all(runs, bits)? })
    }

    /// Terms whose monomial satisfies `keep(ordering of monomial vs bound)`.
    pub fn filter_by_bound(&self, bound: &Monomial, bits: u32, keep: impl Fn(Ordering) -> bool) -> Result<Transseries> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if keep(t.monomial.compare(bound, bits)?) {
                terms.push(t.clone());
            }
        }
        Ok(Transseries { terms })
    }

    /// Keeps the terms with monomial `>= bound`.
    pub fn at_or_above(&self, bound: &Monomial, bits: u32) -> Result<Transseries> {
        // terms are sorted, so stop at the first one below the bound
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.monomial.compare(bound, bits)? == Ordering::Less {
                break;
            }
            terms.push(t.clone());
        }
        Ok(Transseries { terms })
    }

    pub fn truncated(&self, n: usize) -> Transseries {
        Transseries { terms: self.terms.iter().take(n).cloned().collect() }
    }
}

fn merge(a: &[Term], b: &[Term], bits: u32) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].monomial.compare(&b[j].monomial, bits)? {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].coeff.add(&b[j].coeff);
                if !c.is_zero() {
                    out.push(Term::new(c, a[i].monomial.clone()));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Ok(out)
}

fn merge_all(mut runs: Vec<Vec<Term>>, bits: u32) -> Result<Vec<Term>> {
    if runs.is_empty() {
        return Ok(Vec::new());
    }
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(&a, &b, bits)?),
                None => next.push(a),
            }
        }
        runs = next;
    }
    Ok(runs.pop().unwrap_or_default())
}
