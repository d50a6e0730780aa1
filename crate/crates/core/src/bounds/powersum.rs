//! Finite sums `Σ c_k q^{e_k/4}` with rational `c_k` and integer `e_k`.
//!
//! Exponents can be far too large to expand (`q^{-N}` with `N` in the
//! hundreds of millions), so the sign is found from the leading terms: the
//! terms within a window below the top exponent are evaluated exactly in
//! `Q(q^{1/4})`, and everything below is bounded by
//! `(Σ |c_k|) · q^{e_max/4}`. The window grows until the head dominates.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::surd::{QuarticSurd, Sign};
use crate::error::{Error, Result};

/// Initial head window, in quarter exponents.
const INITIAL_WINDOW: i64 = 256;
/// Largest head window before giving up.
const MAX_WINDOW: i64 = 1 << 16;
/// Cap on the exponent used for the tail bound.
const TAIL_EXPONENT_CAP: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSum {
    q: u64,
    /// Quarter exponent → nonzero coefficient.
    terms: BTreeMap<i64, BigRational>,
}

fn pow_q(q: u64, e: i64) -> BigRational {
    let base = BigInt::from(q);
    if e >= 0 {
        BigRational::from_integer(num_traits::pow(base, e as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(base, (-e) as usize))
    }
}

impl PowerSum {
    pub fn new(q: u64) -> Self {
        PowerSum { q, terms: BTreeMap::new() }
    }

    /// `c · q^{e4/4}`.
    pub fn term(q: u64, e4: i64, c: BigRational) -> Self {
        let mut s = Self::new(q);
        s.add_term(e4, c);
        s
    }

    pub fn constant(q: u64, c: BigRational) -> Self {
        Self::term(q, 0, c)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e4: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e4).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e4);
        }
    }

    pub fn add(&self, other: &PowerSum) -> PowerSum {
        debug_assert_eq!(self.q, other.q);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> PowerSum {
        PowerSum { q: self.q, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &PowerSum) -> PowerSum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PowerSum) -> PowerSum {
        debug_assert_eq!(self.q, other.q);
        let mut out = PowerSum::new(self.q);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> PowerSum {
        let mut out = PowerSum::new(self.q);
        for (e, x) in &self.terms {
            out.add_term(*e, x * c);
        }
        out
    }

    /// Multiplies by `q^{e4/4}`.
    pub fn shift(&self, e4: i64) -> PowerSum {
        PowerSum { q: self.q, terms: self.terms.iter().map(|(e, c)| (e + e4, c.clone())).collect() }
    }

    /// Exact value, when the exponents are small enough to expand.
    pub fn evaluate(&self) -> Option<QuarticSurd> {
        if self.terms.keys().any(|e| e.abs() > 4 * TAIL_EXPONENT_CAP) {
            return None;
        }
        let mut out = QuarticSurd::zero(self.q);
        for (e, c) in &self.terms {
            let k = e.rem_euclid(4);
            out.add_scaled(k as usize, &(c * pow_q(self.q, (e - k) / 4)));
        }
        Some(out)
    }

    /// Exact value when every exponent is a whole power of `q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.terms.keys().any(|e| e % 4 != 0) {
            return None;
        }
        self.evaluate()?.to_rational()
    }

    /// Exact sign. A head that sums to exactly zero is dropped and the
    /// search restarts on the remaining terms.
    pub fn sign(&self) -> Result<Sign> {
        let mut rest = self.terms.clone();
        'outer: loop {
            let Some(&top) = rest.keys().next_back() else {
                return Ok(Sign::Zero);
            };
            let mut window = INITIAL_WINDOW;
            loop {
                let limit = top - window;
                let base = *rest.range(limit..).next().expect("top term is in the head").0;
                let mut h = QuarticSurd::zero(self.q);
                for (e, c) in rest.range(limit..) {
                    let off = e - base;
                    h.add_scaled((off % 4) as usize, &(c * pow_q(self.q, off / 4)));
                }
                let sh = h.sign();
                let Some(tail_top) = rest.range(..limit).next_back().map(|(e, _)| *e) else {
                    return Ok(sh);
                };
                if sh == Sign::Zero {
                    // keep only the terms below the head
                    rest.split_off(&limit);
                    continue 'outer;
                }
                let tail_total: BigRational = rest.range(..limit).map(|(_, c)| c.abs()).sum();
                let k = ((base - tail_top) / 4).min(TAIL_EXPONENT_CAP);
                let mut margin = h;
                if sh == Sign::Negative {
                    for c in margin.c.iter_mut() {
                        *c = -c.clone();
                    }
                }
                margin.add_scaled(0, &-(tail_total * pow_q(self.q, -k)));
                if margin.sign() == Sign::Positive {
                    return Ok(sh);
                }
                if window >= MAX_WINDOW {
                    return Err(Error::RangeError("sign of power sum not resolved within the window limit"));
                }
                window = (window * 4).min(MAX_WINDOW);
            }
        }
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if e % 4 == 0 {
                write!(f, "({c})·{}^{}", self.q, e / 4)?;
            } else {
                write!(f, "({c})·{}^({e}/4)", self.q)?;
            }
        }
        Ok(())
    }
}
