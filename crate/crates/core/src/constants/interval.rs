//! Closed intervals with dyadic-rounded rational endpoints.
//!
//! Every operation rounds outward, so an interval computed from enclosures
//! of its inputs always encloses the exact result.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(BigInt::one() << (exp as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-exp) as usize))
    }
}

/// Approximate `floor(log2 |q|)`, exact up to one unit.
fn log2_approx(q: &BigRational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

fn needs_rounding(q: &BigRational, prec: u32) -> bool {
    q.numer().bits() + q.denom().bits() > 2 * u64::from(prec) + 16
}

pub fn round_down(q: &BigRational, prec: u32) -> BigRational {
    if q.is_zero() || !needs_rounding(q, prec) {
        return q.clone();
    }
    let shift = i64::from(prec) - log2_approx(q);
    let scale = pow2(shift);
    (q * &scale).floor() / scale
}

pub fn round_up(q: &BigRational, prec: u32) -> BigRational {
    if q.is_zero() || !needs_rounding(q, prec) {
        return q.clone();
    }
    let shift = i64::from(prec) - log2_approx(q);
    let scale = pow2(shift);
    (q * &scale).ceil() / scale
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    fn rounded(lo: BigRational, hi: BigRational, prec: u32) -> Self {
        Interval { lo: round_down(&lo, prec), hi: round_up(&hi, prec) }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval::rounded(&self.lo + &other.lo, &self.hi + &other.hi, prec)
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, q: &BigRational, prec: u32) -> Interval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            Interval::rounded(b, a, prec)
        } else {
            Interval::rounded(a, b, prec)
        }
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Interval::rounded(lo, hi, prec)
    }

    /// `None` when the interval contains zero.
    pub fn inv(&self, prec: u32) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::rounded(self.hi.recip(), self.lo.recip(), prec))
    }

    pub fn powi(&self, k: i32, prec: u32) -> Option<Interval> {
        let base = if k < 0 { self.inv(prec)? } else { self.clone() };
        let mut acc = Interval::point(BigRational::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base, prec);
        }
        Some(acc)
    }

    pub fn exp(&self, prec: u32) -> Interval {
        Interval { lo: exp_enclosure(&self.lo, prec).lo, hi: exp_enclosure(&self.hi, prec).hi }
    }

    /// `None` unless the interval is strictly positive.
    pub fn log(&self, prec: u32) -> Option<Interval> {
        if !self.is_positive() {
            return None;
        }
        Some(Interval { lo: log_enclosure(&self.lo, prec).lo, hi: log_enclosure(&self.hi, prec).hi })
    }
}

/// Enclosure of `e^q` for a rational `q`.
pub fn exp_enclosure(q: &BigRational, prec: u32) -> Interval {
    if q.is_zero() {
        return Interval::point(BigRational::one());
    }
    if q.is_negative() {
        let pos = exp_enclosure(&-q, prec + 2);
        return Interval::rounded(pos.hi.recip(), pos.lo.recip(), prec);
    }
    let halvings = (log2_approx(q) + 2).max(0);
    let wp = prec + halvings as u32 + 16;
    let y = q / pow2(halvings);
    let y_lo = round_down(&y, wp);
    let y_hi = round_up(&y, wp);
    let eps = pow2(-i64::from(wp));

    let mut lo = BigRational::one();
    let mut term = BigRational::one();
    let mut k = 1u32;
    loop {
        term = round_down(&(&term * &y_lo / BigRational::from_integer(k.into())), wp);
        lo += &term;
        if term < eps {
            break;
        }
        k += 1;
    }
    let mut hi = BigRational::one();
    let mut term = BigRational::one();
    let mut k = 1u32;
    loop {
        term = round_up(&(&term * &y_hi / BigRational::from_integer(k.into())), wp);
        hi += &term;
        if term < eps {
            // y <= 1/2, so the remaining tail is bounded by the last term
            hi += &term;
            break;
        }
        k += 1;
    }
    for _ in 0..halvings {
        lo = round_down(&(&lo * &lo), wp);
        hi = round_up(&(&hi * &hi), wp);
    }
    Interval::rounded(lo, hi, prec)
}

/// Enclosure of `atanh(z)` for rational `|z| <= 1/3`.
fn atanh_enclosure(z: &BigRational, wp: u32) -> Interval {
    if z.is_negative() {
        return atanh_enclosure(&-z, wp).neg();
    }
    if z.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let eps = pow2(-i64::from(wp));
    let series = |z: &BigRational, upward: bool| -> BigRational {
        let round = |q: &BigRational| if upward { round_up(q, wp) } else { round_down(q, wp) };
        let z2 = round(&(z * z));
        let mut power = z.clone();
        let mut sum = BigRational::zero();
        let mut j = 0u32;
        loop {
            let term = round(&(&power / BigRational::from_integer((2 * j + 1).into())));
            sum += &term;
            power = round(&(&power * &z2));
            if term < eps {
                if upward {
                    // tail <= z^(2j+3) / (1 - z^2) <= 9/8 z^(2j+3)
                    sum += round_up(&(&power * BigRational::new(9.into(), 8.into())), wp);
                }
                break;
            }
            j += 1;
        }
        sum
    };
    Interval::new(series(&round_down(z, wp), false), series(&round_up(z, wp), true))
}

fn ln2_enclosure(wp: u32) -> Interval {
    let third = BigRational::new(1.into(), 3.into());
    let a = atanh_enclosure(&third, wp);
    Interval::new(&a.lo * BigRational::from_integer(2.into()), &a.hi * BigRational::from_integer(2.into()))
}

/// Enclosure of `ln q` for a rational `q > 0`.
pub fn log_enclosure(q: &BigRational, prec: u32) -> Interval {
    assert!(q.is_positive(), "log_enclosure of non-positive rational");
    if q.is_one() {
        return Interval::point(BigRational::zero());
    }
    let two = BigRational::from_integer(2.into());
    let mut k = log2_approx(q);
    let mut m = q / pow2(k);
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    if m > BigRational::new(3.into(), 2.into()) {
        m /= &two;
        k += 1;
    }
    let wp = prec + 16 + (64 - k.unsigned_abs().leading_zeros());
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let log_m = atanh_enclosure(&z, wp).scale(&two, wp);
    let result = if k == 0 {
        log_m
    } else {
        ln2_enclosure(wp).scale(&BigRational::from_integer(k.into()), wp).add(&log_m, wp)
    };
    Interval::rounded(result.lo, result.hi, prec)
}
