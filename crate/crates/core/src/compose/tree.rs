//! Admissible trees and their contributions.
//!
//! A tree with root `r e^g` has children that are trees of terms of `g`
//! whose contributions are infinitesimal, and contributes
//! `r e^(c(g)^=) / n! * prod(children)`, where `c(g)^=` is the sum of the
//! contributions of the trees of `g` that are not infinitesimal. A root
//! `log_k(w)` is a leaf carrying one term of `log_k(g)`. Summing all
//! contributions gives `f o g`.
//!
//! The enumeration keeps only trees whose contribution is at least a
//! cutoff monomial. Every child multiplies the contribution by an
//! infinitesimal, so this set is finite.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use crate::constants::ConstReal;
use crate::error::{Error, Result};
use crate::series::{decompose, Monomial, Term, Transseries};

use super::Substitution;

/// Size limit used when a contribution is evaluated on its own.
const CONTRIBUTION_MAX_SIZE: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeRoot {
    /// `log_k(w)`, with `log_0(w) = w`.
    Atom(usize),
    /// `coeff * exp(exponent)`. The exponent need not be purely infinite,
    /// which allows roots such as `exp(log(w) + 1/w)`.
    Exp { coeff: ConstReal, exponent: Transseries },
}

impl TreeRoot {
    pub fn exp(coeff: ConstReal, exponent: Transseries) -> Self {
        TreeRoot::Exp { coeff, exponent }
    }

    pub fn from_term(t: &Term, bits: u32) -> Result<Self> {
        if t.coeff.is_one() {
            if let Some(k) = t.monomial.as_pure_ell() {
                return Ok(TreeRoot::Atom(k));
            }
        }
        Ok(TreeRoot::Exp { coeff: t.coeff.clone(), exponent: t.monomial.formal_log(bits)? })
    }

    pub fn roots_of(x: &Transseries, bits: u32) -> Result<Vec<TreeRoot>> {
        x.terms().iter().map(|t| TreeRoot::from_term(t, bits)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleTree {
    Leaf { atom: usize, value: Term },
    Node { coeff: ConstReal, exponent: Transseries, children: Vec<AdmissibleTree> },
}

impl AdmissibleTree {
    pub fn root(&self) -> TreeRoot {
        match self {
            AdmissibleTree::Leaf { atom, .. } => TreeRoot::Atom(*atom),
            AdmissibleTree::Node { coeff, exponent, .. } => TreeRoot::exp(coeff.clone(), exponent.clone()),
        }
    }

    pub fn children(&self) -> &[AdmissibleTree] {
        match self {
            AdmissibleTree::Leaf { .. } => &[],
            AdmissibleTree::Node { children, .. } => children,
        }
    }

    /// Number of descendants, the tree itself included.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(AdmissibleTree::size).sum::<usize>()
    }
}

fn factorial_inverse(n: usize) -> ConstReal {
    let mut f = BigRational::one();
    for i in 2..=n {
        f *= BigRational::from_integer(i.into());
    }
    ConstReal::from_rational(f.recip())
}

fn too_large(max_size: usize) -> Error {
    Error::BudgetExhausted(format!("an admissible tree above the cutoff has more than {max_size} nodes"))
}

struct Oracle<'a> {
    sub: &'a Substitution,
    max_size: usize,
    bits: u32,
    /// `exp(c(g)^=)` by exponent `g`.
    heads: RefCell<HashMap<Transseries, Term>>,
}

impl<'a> Oracle<'a> {
    fn new(sub: &'a Substitution, max_size: usize) -> Self {
        Oracle { sub, max_size, bits: sub.budget().const_bits, heads: RefCell::new(HashMap::new()) }
    }

    fn at_least(&self, m: &Monomial, cutoff: &Monomial) -> Result<bool> {
        Ok(m.compare(cutoff, self.bits)? != Ordering::Less)
    }

    fn is_small(&self, m: &Monomial) -> Result<bool> {
        Ok(m.log_sign(self.bits)? == crate::constants::Sign::Negative)
    }

    /// Terms of `log_k(g)` at or above the cutoff; all of them must be known.
    fn leaf_values(&self, k: usize, cutoff: &Monomial) -> Result<Vec<Term>> {
        let base = self.sub.base_value(k)?;
        if let Some(b) = base.bound() {
            if cutoff.compare(b, self.bits)? == Ordering::Less {
                return Err(Error::BudgetExhausted(format!("log_{k} of the target is known only above {b}")));
            }
        }
        let mut out = Vec::new();
        for t in base.value.terms() {
            if !self.at_least(&t.monomial, cutoff)? {
                break;
            }
            out.push(t.clone());
        }
        Ok(out)
    }

    /// `coeff * exp(c(exponent)^=)`.
    fn head(&self, coeff: &ConstReal, exponent: &Transseries) -> Result<Term> {
        let cached = self.heads.borrow().get(exponent).cloned();
        let unit = match cached {
            Some(h) => h,
            None => {
                let mut terms = Vec::new();
                for root in TreeRoot::roots_of(exponent, self.bits)? {
                    terms.extend(self.grouped(&root, &Monomial::one())?.into_iter().map(|(t, _)| t));
                }
                let up = Transseries::from_terms(terms, self.bits)?;
                let d = decompose(&up, self.bits)?;
                let h = Term::new(d.real.exp(), Monomial::exp_of(d.big.as_series(), self.bits)?);
                self.heads.borrow_mut().insert(exponent.clone(), h.clone());
                h
            }
        };
        Ok(Term::new(coeff.mul(&unit.coeff), unit.monomial))
    }

    /// Contributions at or above `cutoff` of the trees with the given root,
    /// grouped: each entry is the total contribution of a class of trees
    /// sharing one contribution monomial and one size.
    fn grouped(&self, root: &TreeRoot, cutoff: &Monomial) -> Result<Vec<(Term, usize)>> {
        match root {
            TreeRoot::Atom(k) => Ok(self.leaf_values(*k, cutoff)?.into_iter().map(|t| (t, 1)).collect()),
            TreeRoot::Exp { coeff, exponent } => {
                let head = self.head(coeff, exponent)?;
                let mut out = Vec::new();
                if !self.at_least(&head.monomial, cutoff)? {
                    return Ok(out);
                }
                let rel = cutoff.div(&head.monomial, self.bits)?;
                let candidates = self.child_candidates(exponent, &rel, |r, c| self.grouped(r, c))?;
                // multisets of candidates, weighted by 1/prod(m_i!)
                let mut stack = vec![(0usize, head.clone(), 1usize, Vec::<usize>::new())];
                while let Some((start, acc, size, picks)) = stack.pop() {
                    if size > self.max_size {
                        return Err(too_large(self.max_size));
                    }
                    out.push((acc.clone(), size));
                    for (i, (c, csize)) in candidates.iter().enumerate().skip(start) {
                        let m = acc.monomial.mul(&c.monomial, self.bits)?;
                        if !self.at_least(&m, cutoff)? {
                            continue;
                        }
                        // picking i again after a run of j copies divides by j + 1
                        let repeat = picks.iter().rev().take_while(|&&p| p == i).count();
                        let weight = ConstReal::rational(1, repeat as i64 + 1);
                        let next = Term::new(acc.coeff.mul(&c.coeff).mul(&weight), m);
                        let mut next_picks = picks.clone();
                        next_picks.push(i);
                        stack.push((i, next, size + csize, next_picks));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Child trees of a root with the given exponent: trees of its terms
    /// with infinitesimal contribution at or above `rel`.
    fn child_candidates<T>(
        &self,
        exponent: &Transseries,
        rel: &Monomial,
        expand: impl Fn(&TreeRoot, &Monomial) -> Result<Vec<T>>,
    ) -> Result<Vec<T>>
    where
        T: HasContribution,
    {
        let mut out = Vec::new();
        if rel.log_sign(self.bits)? != crate::constants::Sign::Negative {
            return Ok(out);
        }
        for root in TreeRoot::roots_of(exponent, self.bits)? {
            for entry in expand(&root, rel)? {
                if self.is_small(&entry.contribution().monomial)? {
                    out.push(entry);
                }
            }
        }
        Ok(out)
    }

    /// Every admissible tree with the given root and contribution at or
    /// above `cutoff`, children in every order.
    fn trees(&self, root: &TreeRoot, cutoff: &Monomial) -> Result<Vec<(AdmissibleTree, Term)>> {
        match root {
            TreeRoot::Atom(k) => Ok(self
                .leaf_values(*k, cutoff)?
                .into_iter()
                .map(|t| (AdmissibleTree::Leaf { atom: *k, value: t.clone() }, t))
                .collect()),
            TreeRoot::Exp { coeff, exponent } => {
                let head = self.head(coeff, exponent)?;
                let mut out = Vec::new();
                if !self.at_least(&head.monomial, cutoff)? {
                    return Ok(out);
                }
                let rel = cutoff.div(&head.monomial, self.bits)?;
                let candidates = self.child_candidates(exponent, &rel, |r, c| self.trees(r, c))?;
                let mut stack: Vec<(Vec<usize>, Term)> = vec![(Vec::new(), Term::constant(ConstReal::one()))];
                while let Some((picks, product)) = stack.pop() {
                    let children: Vec<AdmissibleTree> = picks.iter().map(|&i| candidates[i].0.clone()).collect();
                    let size = 1 + children.iter().map(AdmissibleTree::size).sum::<usize>();
                    if size > self.max_size {
                        return Err(too_large(self.max_size));
                    }
                    let c = Term::new(
                        head.coeff.mul(&product.coeff).mul(&factorial_inverse(picks.len())),
                        head.monomial.mul(&product.monomial, self.bits)?,
                    );
                    for (i, (_, cc)) in candidates.iter().enumerate() {
                        let p = product.mul(cc, self.bits)?;
                        if self.at_least(&p.monomial, &rel)? {
                            let mut next = picks.clone();
                            next.push(i);
                            stack.push((next, p));
                        }
                    }
                    let tree = AdmissibleTree::Node { coeff: coeff.clone(), exponent: exponent.clone(), children };
                    out.push((tree, c));
                }
                Ok(out)
            }
        }
    }

    fn contribution(&self, tree: &AdmissibleTree) -> Result<Term> {
        match tree {
            AdmissibleTree::Leaf { value, .. } => Ok(value.clone()),
            AdmissibleTree::Node { coeff, exponent, children } => {
                let mut acc = self.head(coeff, exponent)?;
                for c in children {
                    acc = acc.mul(&self.contribution(c)?, self.bits)?;
                }
                Ok(Term::new(acc.coeff.mul(&factorial_inverse(children.len())), acc.monomial))
            }
        }
    }
}

trait HasContribution {
    fn contribution(&self) -> &Term;
}

impl HasContribution for (Term, usize) {
    fn contribution(&self) -> &Term {
        &self.0
    }
}

impl HasContribution for (AdmissibleTree, Term) {
    fn contribution(&self) -> &Term {
        &self.1
    }
}

/// All admissible trees with the given root whose contribution is at
/// least `cutoff`.
pub fn enumerate_admissible_trees(
    root: &TreeRoot,
    sub: &Substitution,
    cutoff: &Monomial,
    max_size: usize,
) -> Result<Vec<AdmissibleTree>> {
    let oracle = Oracle::new(sub, max_size);
    Ok(oracle.trees(root, cutoff)?.into_iter().map(|(t, _)| t).collect())
}

pub fn contribution(tree: &AdmissibleTree, sub: &Substitution) -> Result<Term> {
    Oracle::new(sub, CONTRIBUTION_MAX_SIZE).contribution(tree)
}

/// Sum of the contributions at or above `cutoff` of the trees of `f`.
pub fn tree_oracle_compose(f: &Transseries, sub: &Substitution, cutoff: &Monomial, max_size: usize) -> Result<Transseries> {
    let roots = TreeRoot::roots_of(f, sub.budget().const_bits)?;
    tree_oracle_compose_roots(&roots, sub, cutoff, max_size)
}

/// As [`tree_oracle_compose`], for a sum of possibly generalized roots.
pub fn tree_oracle_compose_roots(
    roots: &[TreeRoot],
    sub: &Substitution,
    cutoff: &Monomial,
    max_size: usize,
) -> Result<Transseries> {
    let oracle = Oracle::new(sub, max_size);
    let mut terms = Vec::new();
    for root in roots {
        terms.extend(oracle.grouped(root, cutoff)?.into_iter().map(|(t, _)| t));
    }
    Transseries::from_terms(terms, oracle.bits)
}
