//! Structured documents for transseries, versioned by a `schema` field.
//!
//! The layout mirrors the value: a series is a list of terms, a term pairs
//! a constant with a monomial, a monomial holds its `log_k(w)` exponents
//! and the series under `exp`, and a constant is a sum of rationals times
//! products of `exp`, `log` and reciprocal atoms.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constants::{Atom, ConstReal};
use crate::error::{Error, Result};
use crate::series::{Monomial, Term, Transseries};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub value: SeriesDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: ConstDoc,
    pub monomial: MonomialDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub log_powers: Vec<LogPowerDoc>,
    pub exp_arg: SeriesDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogPowerDoc {
    pub k: usize,
    pub exponent: ConstDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstDoc {
    pub terms: Vec<ConstTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstTermDoc {
    /// `p/q` or `p`.
    pub rational: String,
    pub factors: Vec<FactorDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub atom: AtomDoc,
    pub power: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomDoc {
    Exp(ConstDoc),
    Log(ConstDoc),
    Inv(ConstDoc),
}

fn const_doc(c: &ConstReal) -> ConstDoc {
    let terms = c
        .terms()
        .iter()
        .map(|(p, q)| ConstTermDoc {
            rational: q.to_string(),
            factors: p
                .factors()
                .iter()
                .map(|(a, power)| FactorDoc {
                    atom: match a {
                        Atom::Exp(x) => AtomDoc::Exp(const_doc(x)),
                        Atom::Log(x) => AtomDoc::Log(const_doc(x)),
                        Atom::Inv(x) => AtomDoc::Inv(const_doc(x)),
                    },
                    power: *power,
                })
                .collect(),
        })
        .collect();
    ConstDoc { terms }
}

fn series_doc(x: &Transseries) -> SeriesDoc {
    let terms = x
        .terms()
        .iter()
        .map(|t| TermDoc {
            coeff: const_doc(&t.coeff),
            monomial: MonomialDoc {
                log_powers: t
                    .monomial
                    .log_powers()
                    .iter()
                    .map(|(k, a)| LogPowerDoc { k: *k, exponent: const_doc(a) })
                    .collect(),
                exp_arg: series_doc(t.monomial.exp_arg()),
            },
        })
        .collect();
    SeriesDoc { terms }
}

pub fn to_document(x: &Transseries) -> Document {
    Document { schema: SCHEMA, value: series_doc(x) }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDocument(msg.into())
}

fn read_const(d: &ConstDoc, bits: u32) -> Result<ConstReal> {
    let mut sum = ConstReal::zero();
    for t in &d.terms {
        let q: BigRational = t.rational.parse().map_err(|_| malformed(format!("bad rational '{}'", t.rational)))?;
        let mut c = ConstReal::from(q);
        for f in &t.factors {
            let base = match &f.atom {
                AtomDoc::Exp(x) => read_const(x, bits)?.exp(),
                AtomDoc::Log(x) => read_const(x, bits)?.log(bits).map_err(|e| malformed(format!("log atom: {e}")))?,
                AtomDoc::Inv(x) => read_const(x, bits)?.inv().map_err(|e| malformed(format!("reciprocal atom: {e}")))?,
            };
            c = c.mul(&base.powi(f.power.into()).map_err(|e| malformed(format!("atom power: {e}")))?);
        }
        sum = sum.add(&c);
    }
    Ok(sum)
}

fn read_series(d: &SeriesDoc, bits: u32) -> Result<Transseries> {
    let mut terms = Vec::with_capacity(d.terms.len());
    for t in &d.terms {
        let coeff = read_const(&t.coeff, bits)?;
        if coeff.is_zero() {
            return Err(malformed("zero coefficient"));
        }
        let powers = t
            .monomial
            .log_powers
            .iter()
            .map(|p| Ok((p.k, read_const(&p.exponent, bits)?)))
            .collect::<Result<Vec<_>>>()?;
        let exp_arg = read_series(&t.monomial.exp_arg, bits)?;
        let m = Monomial::new(powers, exp_arg, bits).map_err(|e| malformed(format!("monomial: {e}")))?;
        terms.push(Term::new(coeff, m));
    }
    let x = Transseries::from_terms(terms, bits).map_err(|e| malformed(format!("series: {e}")))?;
    if x.len() != d.terms.len() {
        return Err(malformed("repeated monomial"));
    }
    Ok(x)
}

pub fn from_document(doc: &Document, bits: u32) -> Result<Transseries> {
    if doc.schema != SCHEMA {
        return Err(malformed(format!("unsupported schema {}", doc.schema)));
    }
    read_series(&doc.value, bits)
}

pub fn serialize(x: &Transseries) -> String {
    serde_json::to_string(&to_document(x)).expect("documents always serialize")
}

pub fn deserialize(text: &str, bits: u32) -> Result<Transseries> {
    let doc: Document = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    from_document(&doc, bits)
}
