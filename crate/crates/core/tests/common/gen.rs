//! Seeded random generation of transseries in the finite fragment, shared
//! by the unit tests and the integration suites.

#![allow(dead_code)]

use omega_series::constants::DEFAULT_CONST_BITS;
use omega_series::{ConstReal, Monomial, Sign, Term, Transseries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BITS: u32 = DEFAULT_CONST_BITS;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Nonzero rational with numerator in `[-max, max]` and denominator in `dens`.
    pub fn rational(&mut self, max: i64, dens: &[i64]) -> ConstReal {
        loop {
            let n = self.rng.gen_range(-max..=max);
            if n != 0 {
                let d = dens[self.below(dens.len())];
                return ConstReal::rational(n, d);
            }
        }
    }

    pub fn positive_rational(&mut self, max: i64, dens: &[i64]) -> ConstReal {
        let n = self.rng.gen_range(1..=max);
        let d = dens[self.below(dens.len())];
        ConstReal::rational(n, d)
    }

    /// `prod_{k <= depth} log_k(w)^(a_k)` with small rational exponents.
    pub fn log_monomial(&mut self, depth: usize) -> Monomial {
        let mut m = Monomial::one();
        for k in 0..=depth {
            if self.chance(0.5) {
                let a = self.rational(3, &[1, 1, 2]);
                m = m.mul(&Monomial::log_power(k, a), BITS).unwrap();
            }
        }
        m
    }

    /// A log monomial strictly above 1.
    pub fn infinite_log_monomial(&mut self, depth: usize) -> Monomial {
        loop {
            let m = self.log_monomial(depth);
            if m.log_sign(BITS).unwrap() == Sign::Positive {
                return m;
            }
        }
    }

    /// A purely infinite series of exponential height at most `height`.
    pub fn purely_infinite(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        let n = 1 + self.below(max_terms);
        let mut terms = Vec::new();
        for _ in 0..n {
            let m = self.infinite_monomial(depth, height);
            terms.push(Term::new(self.rational(4, &[1, 1, 2, 3]), m));
        }
        Transseries::from_terms(terms, BITS).unwrap()
    }

    /// A monomial strictly above 1 of exponential height at most `height`.
    pub fn infinite_monomial(&mut self, depth: usize, height: usize) -> Monomial {
        loop {
            let m = self.monomial(depth, height);
            if m.log_sign(BITS).unwrap() == Sign::Positive {
                return m;
            }
        }
    }

    /// Any monomial of log depth `<= depth` and exponential height `<= height`.
    pub fn monomial(&mut self, depth: usize, height: usize) -> Monomial {
        let base = self.log_monomial(depth);
        if height == 0 || !self.chance(0.4) {
            return base;
        }
        let g = self.purely_infinite(depth, height - 1, 2);
        let e = Monomial::exp_of(&g, BITS).unwrap();
        base.mul(&e, BITS).unwrap()
    }

    /// A series with rational coefficients and up to `max_terms` terms.
    pub fn series(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        let n = self.below(max_terms + 1);
        let terms = (0..n).map(|_| Term::new(self.rational(5, &[1, 1, 2, 3]), self.monomial(depth, height))).collect();
        Transseries::from_terms(terms, BITS).unwrap()
    }

    pub fn nonzero_series(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        loop {
            let x = self.series(depth, height, max_terms.max(1));
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A series with positive leading coefficient.
    pub fn positive_series(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        let x = self.nonzero_series(depth, height, max_terms);
        if x.sign(BITS).unwrap() == Sign::Negative {
            x.neg()
        } else {
            x
        }
    }

    /// A series greater than every constant.
    pub fn positive_infinite(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        loop {
            let x = self.positive_series(depth, height, max_terms);
            if x.leading_monomial().unwrap().log_sign(BITS).unwrap() == Sign::Positive {
                return x;
            }
        }
    }

    /// An infinitesimal series.
    pub fn infinitesimal(&mut self, depth: usize, height: usize, max_terms: usize) -> Transseries {
        let n = 1 + self.below(max_terms);
        let terms = (0..n)
            .map(|_| {
                let m = self.infinite_monomial(depth, height).inv();
                Term::new(self.rational(5, &[1, 1, 2, 3]), m)
            })
            .collect();
        Transseries::from_terms(terms, BITS).unwrap()
    }

    /// A positive infinite target for composition. Lower terms are a
    /// constant and, when `tail` is set, terms at most `lead / w`, which
    /// keeps the infinite part of every exponent met during composition finite.
    pub fn target(&mut self, height: usize, tail: bool) -> Transseries {
        let lead = if height == 0 { self.infinite_log_monomial(1) } else { self.infinite_monomial(1, height) };
        let mut terms = vec![Term::new(self.positive_rational(3, &[1, 2]), lead.clone())];
        if self.chance(0.5) {
            terms.push(Term::new(self.rational(3, &[1, 2]), Monomial::one()));
        }
        if tail {
            for _ in 0..self.below(3) {
                let j = 1 + self.below(2) as i64;
                let b = self.below(3) as i64 - 1;
                let shift = Monomial::omega_pow(-j, 1).mul(&Monomial::log_power(1, ConstReal::from(b)), BITS).unwrap();
                let m = lead.mul(&shift, BITS).unwrap();
                terms.push(Term::new(self.rational(3, &[1, 2]), m));
            }
        }
        Transseries::from_terms(terms, BITS).unwrap()
    }

    /// `w^a (1 + o(1))` with lower terms at most `w^(a-1)`. Its logarithm is
    /// `a log(w)` plus an infinitesimal, so exponents involving powers of
    /// `log(w)` stay finite above 1 after substitution.
    pub fn plain_target(&mut self, tail: bool) -> Transseries {
        let a = self.positive_rational(4, &[2]);
        let lead = Monomial::log_power(0, a);
        let mut terms = vec![Term::new(ConstReal::one(), lead.clone())];
        if self.chance(0.5) {
            terms.push(Term::new(self.rational(3, &[1, 2]), Monomial::one()));
        }
        if tail {
            for _ in 0..self.below(3) {
                let j = 1 + self.below(2) as i64;
                let b = self.below(3) as i64 - 1;
                let shift = Monomial::omega_pow(-j, 1).mul(&Monomial::log_power(1, ConstReal::from(b)), BITS).unwrap();
                terms.push(Term::new(self.rational(3, &[1, 2]), lead.mul(&shift, BITS).unwrap()));
            }
        }
        Transseries::from_terms(terms, BITS).unwrap()
    }
}
