//! Exact symbolic arithmetic on a computable fragment of the field of
//! omega-series: finitely generated transseries in `w` and its iterated
//! logarithms, closed under the field operations, `exp`, `log`, the
//! derivation and composition.

pub mod analysis;
pub mod arith;
pub mod compose;
pub mod constants;
pub mod error;
pub mod frontend;
pub mod series;

pub use arith::{PowerSeries, TruncatedResult, TruncationBudget};
pub use constants::{ConstReal, Sign, DEFAULT_CONST_BITS};
pub use error::{Error, Result};
pub use series::{Decomposition, Dominance, Monomial, PurelyInfinite, Term, Transseries};

#[cfg(test)]
extern crate self as omega_series;

#[cfg(test)]
mod test_util;
