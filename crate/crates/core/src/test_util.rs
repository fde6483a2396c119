//! Small constructors shared by the unit tests.

#[path = "../tests/common/gen.rs"]
pub mod gen;

use crate::constants::{ConstReal, DEFAULT_CONST_BITS};
use crate::series::{Monomial, Term, Transseries};

pub const BITS: u32 = DEFAULT_CONST_BITS;

pub fn q(n: i64, d: i64) -> ConstReal {
    ConstReal::rational(n, d)
}

/// `w^(n/d)`.
pub fn wp(n: i64, d: i64) -> Monomial {
    Monomial::omega_pow(n, d)
}

/// `log_k(w)^(n/d)`.
pub fn lp(k: usize, n: i64, d: i64) -> Monomial {
    Monomial::log_power(k, q(n, d))
}

pub fn ell(k: usize) -> Monomial {
    Monomial::ell(k)
}

pub fn exp_m(g: &Transseries) -> Monomial {
    Monomial::exp_of(g, BITS).expect("purely infinite exponent")
}

pub fn mul_m(a: &Monomial, b: &Monomial) -> Monomial {
    a.mul(b, BITS).unwrap()
}

/// Series from (coefficient, monomial) pairs in any order.
pub fn ts(terms: &[(ConstReal, Monomial)]) -> Transseries {
    Transseries::from_terms(terms.iter().map(|(c, m)| Term::new(c.clone(), m.clone())).collect(), BITS).unwrap()
}

pub fn mono(m: Monomial) -> Transseries {
    Transseries::monomial(m)
}

pub fn int(n: i64) -> ConstReal {
    ConstReal::from(n)
}
