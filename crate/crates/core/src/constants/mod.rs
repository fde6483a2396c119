//! Exact constants: the closure of the rationals under the field
//! operations, `exp` and `log`.
//!
//! A [`ConstReal`] is kept in a normal form: a finite sum of rational
//! multiples of products of atoms, where an atom is `exp(a)`, `log(a)` or
//! `1/s` for a sum `s` with at least two terms. Normalization applies
//!
//! * `exp(0) = 1`, `log(1) = 0`, `log(exp(a)) = a`, `exp(log(a)) = a`,
//! * `exp(a) * exp(b) = exp(a + b)` (at most one `exp` atom per product),
//! * `exp(n * log(c)) = c^n` for integers `n`,
//! * `log(p/q)` splits over the small prime factors of `p` and `q`.
//!
//! Two constants are equal when their normal forms are identical. Signs of
//! nonzero normal forms are found by refining an interval enclosure, which
//! is a semidecision: it gives up with [`Error::SignUndecided`] once the
//! precision budget is exhausted.

pub mod interval;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use interval::Interval;

/// Default precision cutoff, in bits, for sign queries.
pub const DEFAULT_CONST_BITS: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Atom {
    Exp(ConstReal),
    Log(ConstReal),
    Inv(ConstReal),
}

/// Product of atoms with nonzero integer exponents, sorted by atom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Product(Vec<(Atom, i32)>);

impl Product {
    pub(crate) fn factors(&self) -> &[(Atom, i32)] {
        &self.0
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn exp_arg(&self) -> Option<&ConstReal> {
        self.0.iter().find_map(|(a, _)| match a {
            Atom::Exp(x) => Some(x),
            _ => None,
        })
    }

    fn without_exp(&self) -> Product {
        Product(self.0.iter().filter(|(a, _)| !matches!(a, Atom::Exp(_))).cloned().collect())
    }

    fn merge(&self, other: &Product) -> Product {
        let mut out: Vec<(Atom, i32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let k = self.0[i].1 + other.0[j].1;
                    if k != 0 {
                        out.push((self.0[i].0.clone(), k));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Product(out)
    }
}

struct Node {
    terms: Vec<(Product, BigRational)>,
    enclosure: Mutex<Option<(u32, Interval)>>,
}

/// An exact real constant in normal form.
#[derive(Clone)]
pub struct ConstReal(Arc<Node>);

impl PartialEq for ConstReal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.terms == other.0.terms
    }
}

impl Eq for ConstReal {}

impl PartialOrd for ConstReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on normal forms; unrelated to the numeric order.
impl Ord for ConstReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.terms.cmp(&other.0.terms)
    }
}

impl Hash for ConstReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.terms.hash(state);
    }
}

impl fmt::Debug for ConstReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstReal({self})")
    }
}

impl From<i64> for ConstReal {
    fn from(n: i64) -> Self {
        ConstReal::from_rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for ConstReal {
    fn from(q: BigRational) -> Self {
        ConstReal::from_rational(q)
    }
}

impl ConstReal {
    fn from_normalized(terms: Vec<(Product, BigRational)>) -> Self {
        ConstReal(Arc::new(Node { terms, enclosure: Mutex::new(None) }))
    }

    fn from_terms(mut terms: Vec<(Product, BigRational)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Product, BigRational)> = Vec::with_capacity(terms.len());
        for (p, q) in terms {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 += q,
                _ => out.push((p, q)),
            }
        }
        out.retain(|(_, q)| !q.is_zero());
        ConstReal::from_normalized(out)
    }

    fn single(product: Product, q: BigRational) -> Self {
        if q.is_zero() {
            return ConstReal::zero();
        }
        ConstReal::from_normalized(vec![(product, q)])
    }

    pub fn from_rational(q: BigRational) -> Self {
        ConstReal::single(Product::default(), q)
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        ConstReal::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        ConstReal::from_normalized(Vec::new())
    }

    pub fn one() -> Self {
        ConstReal::from(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, when the normal form is a rational literal.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.0.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(p, q)] if p.is_empty() => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Integer value, when the constant is an integer literal that fits in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
    }

    pub fn add(&self, other: &ConstReal) -> ConstReal {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // both sides are sorted by product, so a merge suffices
        let (a, b) = (&self.0.terms, &other.0.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let q = &a[i].1 + &b[j].1;
                    if !q.is_zero() {
                        out.push((a[i].0.clone(), q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ConstReal::from_normalized(out)
    }

    pub fn neg(&self) -> ConstReal {
        ConstReal::from_normalized(self.0.terms.iter().map(|(p, q)| (p.clone(), -q)).collect())
    }

    pub fn sub(&self, other: &ConstReal) -> ConstReal {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> ConstReal {
        if q.is_zero() {
            return ConstReal::zero();
        }
        ConstReal::from_normalized(self.0.terms.iter().map(|(p, c)| (p.clone(), c * q)).collect())
    }

    /// Leading coefficient and `self / coefficient`, so that the second
    /// component's first term has coefficient 1.
    fn split_content(&self) -> (BigRational, ConstReal) {
        let c = self.0.terms[0].1.clone();
        (c.clone(), self.scale(&c.recip()))
    }

    fn single_term(&self) -> Option<(&Product, &BigRational)> {
        match self.0.terms.as_slice() {
            [(p, q)] => Some((p, q)),
            _ => None,
        }
    }

    pub fn mul(&self, other: &ConstReal) -> ConstReal {
        if self.is_zero() || other.is_zero() {
            return ConstReal::zero();
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        if let Some(c) = cancel_inverse(self, other).or_else(|| cancel_inverse(other, self)) {
            return c;
        }
        let mut acc = ConstReal::zero();
        for (p1, q1) in &self.0.terms {
            for (p2, q2) in &other.0.terms {
                acc = acc.add(&mul_terms(p1, q1, p2, q2));
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<ConstReal> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((p, q)) = self.single_term() {
            return Ok(invert_product(p).scale(&q.recip()));
        }
        let (c, monic) = self.split_content();
        Ok(ConstReal::single(Product(vec![(Atom::Inv(monic), 1)]), c.recip()))
    }

    pub fn div(&self, other: &ConstReal) -> Result<ConstReal> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, k: i64) -> Result<ConstReal> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ConstReal::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn exp(&self) -> ConstReal {
        let mut arg = Vec::new();
        let mut factor = ConstReal::one();
        for (p, q) in &self.0.terms {
            // exp(q log c) = c^floor(q) exp(frac(q) log c); c > 0 since log(c) exists
            if let [(Atom::Log(c), 1)] = p.0.as_slice() {
                let n = q.floor();
                if let Some(power) = n.to_integer().to_i64().and_then(|n| c.powi(n).ok()) {
                    factor = factor.mul(&power);
                    if q != &n {
                        arg.push((p.clone(), q - &n));
                    }
                    continue;
                }
            }
            arg.push((p.clone(), q.clone()));
        }
        let arg = ConstReal::from_normalized(arg);
        if arg.is_zero() {
            return factor;
        }
        factor.mul(&ConstReal::single(Product(vec![(Atom::Exp(arg), 1)]), BigRational::one()))
    }

    /// Natural logarithm; requires `self > 0`, checked with `bits` of precision.
    pub fn log(&self, bits: u32) -> Result<ConstReal> {
        match self.sign(bits)? {
            Sign::Positive => {}
            _ => return Err(Error::LogNonPositive),
        }
        if self.is_one() {
            return Ok(ConstReal::zero());
        }
        if let Some((p, q)) = self.single_term() {
            let mut acc = log_rational(&q.abs());
            if let Some(e) = p.exp_arg() {
                acc = acc.add(e);
            }
            let rest = p.without_exp();
            if !rest.is_empty() {
                let inner = ConstReal::single(rest, if q.is_negative() { -BigRational::one() } else { BigRational::one() });
                acc = acc.add(&ConstReal::single(Product(vec![(Atom::Log(inner), 1)]), BigRational::one()));
            }
            return Ok(acc);
        }
        let (c, monic) = self.split_content();
        let c = c.abs();
        let monic = if monic.sign(bits)? == Sign::Negative { monic.neg() } else { monic };
        Ok(log_rational(&c).add(&ConstReal::single(Product(vec![(Atom::Log(monic), 1)]), BigRational::one())))
    }

    /// Enclosure at roughly `prec` bits, or `None` if a subterm could not
    /// be bounded away from a singularity at this precision.
    pub fn enclosure(&self, prec: u32) -> Option<Interval> {
        if let Ok(guard) = self.0.enclosure.lock() {
            if let Some((p, iv)) = guard.as_ref() {
                if *p >= prec {
                    return Some(iv.clone());
                }
            }
        }
        let iv = self.compute_enclosure(prec)?;
        if let Ok(mut guard) = self.0.enclosure.lock() {
            let better = guard.as_ref().is_none_or(|(p, _)| *p < prec);
            if better {
                *guard = Some((prec, iv.clone()));
            }
        }
        Some(iv)
    }

    fn compute_enclosure(&self, prec: u32) -> Option<Interval> {
        let wp = prec + 8;
        let mut sum = Interval::point(BigRational::zero());
        for (p, q) in &self.0.terms {
            let mut prod = Interval::point(q.clone());
            for (atom, k) in &p.0 {
                let base = match atom {
                    Atom::Exp(a) => a.enclosure(wp)?.exp(wp),
                    Atom::Log(a) => a.enclosure(wp)?.log(wp)?,
                    Atom::Inv(a) => a.enclosure(wp)?.inv(wp)?,
                };
                prod = prod.mul(&base.powi(*k, wp)?, wp);
            }
            sum = sum.add(&prod, wp);
        }
        Some(sum)
    }

    /// Sign of the constant, refining the enclosure up to `max_bits`.
    pub fn sign(&self, max_bits: u32) -> Result<Sign> {
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_zero() {
                Sign::Zero
            } else if q.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        let mut prec = 48u32.min(max_bits.max(1));
        loop {
            if let Some(iv) = self.enclosure(prec) {
                if iv.is_positive() {
                    return Ok(Sign::Positive);
                }
                if iv.is_negative() {
                    return Ok(Sign::Negative);
                }
            }
            if prec >= max_bits {
                return Err(Error::SignUndecided { bits: max_bits });
            }
            prec = (prec * 2).min(max_bits);
        }
    }

    /// Numeric comparison.
    pub fn compare(&self, other: &ConstReal, bits: u32) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        Ok(self.sub(other).sign(bits)?.to_ordering())
    }

    /// Rough floating-point value, for diagnostics only.
    pub fn to_f64(&self) -> Option<f64> {
        let iv = self.enclosure(64)?;
        Some((iv.lo.to_f64()? + iv.hi.to_f64()?) / 2.0)
    }

    /// True when every term has a negative rational coefficient, which is how
    /// the printer decides between `+` and `-`.
    pub fn looks_negative(&self) -> bool {
        !self.0.terms.is_empty() && self.0.terms.iter().all(|(_, q)| q.is_negative())
    }

    pub(crate) fn terms(&self) -> &[(Product, BigRational)] {
        &self.0.terms
    }
}

/// If `a` is a sum `c * s` and `b` is a single term containing `1/s`,
/// returns the cancelled product.
fn cancel_inverse(a: &ConstReal, b: &ConstReal) -> Option<ConstReal> {
    if a.0.terms.len() < 2 {
        return None;
    }
    let (p, q) = b.single_term()?;
    let (c, monic) = a.split_content();
    let pos = p.0.iter().position(|(atom, k)| *k >= 1 && matches!(atom, Atom::Inv(s) if *s == monic))?;
    let mut atoms = p.0.clone();
    atoms[pos].1 -= 1;
    if atoms[pos].1 == 0 {
        atoms.remove(pos);
    }
    Some(ConstReal::single(Product(atoms), q * c))
}

fn mul_terms(p1: &Product, q1: &BigRational, p2: &Product, q2: &BigRational) -> ConstReal {
    let q = q1 * q2;
    match (p1.exp_arg(), p2.exp_arg()) {
        (Some(a), Some(b)) => {
            let rest = p1.without_exp().merge(&p2.without_exp());
            let e = a.add(b).exp();
            ConstReal::single(rest, q).mul(&e)
        }
        _ => expand_inverse_powers(p1.merge(p2), q),
    }
}

/// Replaces negative powers of `1/s` atoms by positive powers of `s`.
fn expand_inverse_powers(p: Product, q: BigRational) -> ConstReal {
    if !p.0.iter().any(|(a, k)| *k < 0 && matches!(a, Atom::Inv(_))) {
        return ConstReal::single(p, q);
    }
    let mut kept = Vec::new();
    let mut factor = ConstReal::one();
    for (atom, k) in p.0 {
        match atom {
            Atom::Inv(s) if k < 0 => {
                for _ in 0..(-k) {
                    factor = factor.mul(&s);
                }
            }
            other => kept.push((other, k)),
        }
    }
    ConstReal::single(Product(kept), q).mul(&factor)
}

fn invert_product(p: &Product) -> ConstReal {
    let atoms: Vec<(Atom, i32)> = p
        .0
        .iter()
        .map(|(a, k)| match a {
            Atom::Exp(x) => (Atom::Exp(x.neg()), *k),
            other => (other.clone(), -k),
        })
        .collect();
    let mut sorted = atoms;
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    expand_inverse_powers(Product(sorted), BigRational::one())
}

const TRIAL_DIVISION_LIMIT: u64 = 1000;

/// Splits `n > 0` into (prime, multiplicity) pairs found by trial division,
/// with any remaining cofactor returned as a final factor.
fn factor_integer(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && BigInt::from(d * d) <= n {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn log_rational(q: &BigRational) -> ConstReal {
    debug_assert!(q.is_positive());
    let mut terms = Vec::new();
    for (p, e) in factor_integer(q.numer()) {
        terms.push((Product(vec![(Atom::Log(ConstReal::from_rational(p.into())), 1)]), BigRational::from_integer(e.into())));
    }
    for (p, e) in factor_integer(q.denom()) {
        terms.push((Product(vec![(Atom::Log(ConstReal::from_rational(p.into())), 1)]), BigRational::from_integer((-e).into())));
    }
    ConstReal::from_terms(terms)
}

// ---------------------------------------------------------------------------
// Free-function surface

pub fn const_add(a: &ConstReal, b: &ConstReal) -> ConstReal {
    a.add(b)
}

pub fn const_mul(a: &ConstReal, b: &ConstReal) -> ConstReal {
    a.mul(b)
}

pub fn const_inv(a: &ConstReal) -> Result<ConstReal> {
    a.inv()
}

pub fn const_exp(a: &ConstReal) -> ConstReal {
    a.exp()
}

pub fn const_log(a: &ConstReal, bits: u32) -> Result<ConstReal> {
    a.log(bits)
}

pub fn const_sign(a: &ConstReal, max_bits: u32) -> Result<Sign> {
    a.sign(max_bits)
}

// ---------------------------------------------------------------------------
// Text rendering

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Exp(a) => write!(f, "exp({a})"),
            Atom::Log(a) => write!(f, "log({a})"),
            Atom::Inv(a) => write!(f, "({a})"),
        }
    }
}

fn power_factor(base: String, k: u32) -> String {
    if k == 1 {
        base
    } else {
        format!("{base}^{k}")
    }
}

/// Renders `|q| * product` as `num/den`.
fn fmt_term_magnitude(p: &Product, q: &BigRational) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    let n = q.numer().abs();
    let d = q.denom().clone();
    let mut factors_num = Vec::new();
    for (atom, k) in &p.0 {
        match atom {
            Atom::Inv(_) => den.push(power_factor(atom.to_string(), k.unsigned_abs())),
            _ if *k > 0 => factors_num.push(power_factor(atom.to_string(), k.unsigned_abs())),
            _ => den.push(power_factor(atom.to_string(), k.unsigned_abs())),
        }
    }
    if !n.is_one() || factors_num.is_empty() {
        num.push(n.to_string());
    }
    num.extend(factors_num);
    if !d.is_one() {
        den.insert(0, d.to_string());
    }
    let num = num.join("*");
    match den.len() {
        0 => num,
        1 => format!("{num}/{}", den[0]),
        _ => format!("{num}/({})", den.join("*")),
    }
}

impl fmt::Display for ConstReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&q));
        }
        // non-rational products first, rational constant last
        let mut order: Vec<&(Product, BigRational)> = self.0.terms.iter().filter(|(p, _)| !p.is_empty()).collect();
        order.extend(self.0.terms.iter().filter(|(p, _)| p.is_empty()));
        for (i, (p, q)) in order.into_iter().enumerate() {
            let mag = fmt_term_magnitude(p, q);
            match (i, q.is_negative()) {
                (0, false) => write!(f, "{mag}")?,
                (0, true) => write!(f, "-{mag}")?,
                (_, false) => write!(f, " + {mag}")?,
                (_, true) => write!(f, " - {mag}")?,
            }
        }
        Ok(())
    }
}

impl ConstReal {
    /// True when the rendering is a single product (no top-level `+`/`-`
    /// between terms), so it can be used as a factor without parentheses.
    pub fn is_single_product(&self) -> bool {
        self.0.terms.len() <= 1
    }

    /// Numerator/denominator split used when printing `coeff * monomial`:
    /// returns (numerator factors, denominator factors) as strings, with the
    /// sign dropped. Only meaningful for single-product constants.
    pub(crate) fn product_parts(&self) -> (Vec<String>, Vec<String>) {
        let (p, q) = match self.single_term() {
            Some(t) => t,
            None => return (vec![format!("({self})")], Vec::new()),
        };
        let mut num = Vec::new();
        let mut den = Vec::new();
        if !q.numer().abs().is_one() {
            num.push(q.numer().abs().to_string());
        }
        if !q.denom().is_one() {
            den.push(q.denom().to_string());
        }
        for (atom, k) in &p.0 {
            match atom {
                Atom::Inv(_) => den.push(power_factor(atom.to_string(), k.unsigned_abs())),
                _ if *k > 0 => num.push(power_factor(atom.to_string(), k.unsigned_abs())),
                _ => den.push(power_factor(atom.to_string(), k.unsigned_abs())),
            }
        }
        (num, den)
    }

    /// Whether a single-product constant carries a negative coefficient.
    pub(crate) fn single_sign_negative(&self) -> bool {
        self.single_term().is_some_and(|(_, q)| q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ConstReal {
        ConstReal::rational(n, d)
    }

    #[test]
    fn rational_folding() {
        assert_eq!(r(1, 2).add(&r(1, 3)), r(5, 6));
        assert_eq!(r(7, 3).add(&ConstReal::zero()), r(7, 3));
        assert_eq!(r(2, 1).inv().unwrap(), r(1, 2));
        assert_eq!(ConstReal::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn exp_log_normalization() {
        assert_eq!(ConstReal::zero().exp(), ConstReal::one());
        assert_eq!(ConstReal::one().log(64).unwrap(), ConstReal::zero());
        assert_eq!(r(3, 1).exp().log(64).unwrap(), r(3, 1));
        let two = r(2, 1);
        assert_eq!(two.log(64).unwrap().exp(), two);
        // exp(a) * exp(b) = exp(a + b)
        let e = ConstReal::one().exp();
        assert_eq!(e.mul(&e), r(2, 1).exp());
        // log(4) = 2 log(2)
        assert_eq!(r(4, 1).log(64).unwrap(), two.log(64).unwrap().scale(&BigRational::from_integer(2.into())));
        assert_eq!(r(-1, 1).log(64), Err(Error::LogNonPositive));
        assert_eq!(ConstReal::zero().log(64), Err(Error::LogNonPositive));
    }

    #[test]
    fn two_e_enclosure() {
        let e = ConstReal::one().exp();
        let s = e.add(&e);
        assert_eq!(s, e.scale(&BigRational::from_integer(2.into())));
        let iv = s.enclosure(20).unwrap();
        assert!(iv.lo > BigRational::new(543.into(), 100.into()));
        assert!(iv.hi < BigRational::new(544.into(), 100.into()));
    }

    #[test]
    fn signs() {
        assert_eq!(r(-3, 4).sign(8).unwrap(), Sign::Negative);
        let e_minus_2 = ConstReal::one().exp().sub(&r(2, 1));
        assert_eq!(e_minus_2.sign(16).unwrap(), Sign::Positive);
        let zero = r(5, 1).exp().log(8).unwrap().sub(&r(5, 1));
        assert_eq!(zero.sign(8).unwrap(), Sign::Zero);
        // exp(1/1000000) - 1 is positive but tiny
        let tiny = r(1, 1_000_000).exp().sub(&ConstReal::one());
        assert_eq!(tiny.sign(256).unwrap(), Sign::Positive);
    }

    #[test]
    fn undecided_sign_is_reported() {
        // log(3)/log(2) - 1.58496250072115618145373894394781650875981440769248106045550 (a
        // rational within 2^-190 of the true value) cannot be separated at 64 bits
        let ratio = r(3, 1).log(64).unwrap().div(&r(2, 1).log(64).unwrap()).unwrap();
        let close = BigRational::new(
            "158496250072115618145373894394781650875981440769248106045550".parse().unwrap(),
            BigInt::from(10).pow(59),
        );
        let diff = ratio.sub(&ConstReal::from_rational(close));
        assert_eq!(diff.sign(64), Err(Error::SignUndecided { bits: 64 }));
    }

    #[test]
    fn inverse_cancellation() {
        let s = r(2, 1).log(64).unwrap().add(&ConstReal::one());
        let inv = s.inv().unwrap();
        assert_eq!(s.mul(&inv), ConstReal::one());
        assert_eq!(inv.inv().unwrap(), s);
    }

    #[test]
    fn rendering() {
        assert_eq!(r(5, 6).to_string(), "5/6");
        assert_eq!(ConstReal::one().exp().to_string(), "exp(1)");
        let l2 = r(2, 1).log(64).unwrap();
        assert_eq!(l2.add(&ConstReal::one()).to_string(), "log(2) + 1");
        assert_eq!(l2.scale(&BigRational::new((-1).into(), 2.into())).to_string(), "-log(2)/2");
        assert_eq!(l2.inv().unwrap().to_string(), "1/log(2)");
    }
}
