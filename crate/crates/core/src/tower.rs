//! Finite-field towers `F_p = L_0 ⊂ L_1 ⊂ … ⊂ L_t`.
//!
//! Level `i >= 1` is `L_{i-1}[a_i] / (μ_i(a_i))` for a monic irreducible
//! modulus `μ_i` of degree `k_i` over `L_{i-1}`. An element of level `i` is
//! stored as its flat vector of `F_p` digits in the induced product power
//! basis: the vector is the concatenation of the `k_i` coefficients
//! (constant first) over `L_{i-1}`, each itself flattened the same way.
//! Coordinates over a lower level are therefore consecutive chunks,
//! ordered lexicographically in (outer exponent, …, inner exponent).
//!
//! Element indices (used for enumeration and for table-backed views) read
//! the digit vector as a base-`p` number with digit 0 least significant.
//! A lower-level element embeds with the same index.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_factors, FiniteField};
use crate::poly;

/// Largest supported characteristic; keeps products of digits in `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// Modulus of one extension level, given by coefficient indices over the
/// level below (constant first, leading coefficient `1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSpec {
    pub degree: usize,
    pub modulus: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ExtensionLevel {
    degree: usize,
    /// Coefficients over the previous level as digit vectors, constant first.
    modulus: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u64,
    levels: Vec<ExtensionLevel>,
    abs_degree: Vec<usize>,
    order: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    level: usize,
    digits: Vec<u64>,
}

impl FieldElement {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Flat `F_p` digits in the product power basis.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

impl FieldTower {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, &[])
    }

    /// Builds and validates a tower. Every modulus must be monic of the
    /// stated degree with coefficients in the previous level, and
    /// irreducible over it.
    pub fn new(p: u64, specs: &[LevelSpec]) -> Result<Self> {
        if !is_prime(p) || p >= MAX_CHARACTERISTIC {
            return Err(Error::NotPrime(p));
        }
        let mut tower = FieldTower { p, levels: Vec::new(), abs_degree: vec![1], order: vec![p as u128] };
        for (i, spec) in specs.iter().enumerate() {
            tower.push_level(i + 1, spec)?;
        }
        Ok(tower)
    }

    fn push_level(&mut self, level: usize, spec: &LevelSpec) -> Result<()> {
        if spec.degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        if spec.modulus.len() != spec.degree + 1 {
            return Err(Error::DegreeMismatch { expected: spec.degree + 1, found: spec.modulus.len() });
        }
        let below = level - 1;
        let below_order = self.order[below];
        if spec.modulus.iter().any(|&c| c >= below_order) {
            return Err(Error::RangeError("modulus coefficient outside the level below"));
        }
        if spec.modulus[spec.degree] != 1 {
            return Err(Error::RangeError("modulus must be monic"));
        }
        let abs = self.abs_degree[below]
            .checked_mul(spec.degree)
            .ok_or(Error::FieldTooLarge { order: u128::MAX })?;
        let order = (self.p as u128)
            .checked_pow(abs as u32)
            .filter(|_| abs <= u32::MAX as usize)
            .ok_or(Error::FieldTooLarge { order: u128::MAX })?;

        let view = self.view(below);
        let coeffs: Vec<FieldElement> = spec.modulus.iter().map(|&c| view.element(c)).collect();
        if !poly::is_irreducible(&view, &coeffs) {
            return Err(Error::ModulusNotIrreducible { level });
        }
        self.levels.push(ExtensionLevel {
            degree: spec.degree,
            modulus: coeffs.into_iter().map(|c| c.digits).collect(),
        });
        self.abs_degree.push(abs);
        self.order.push(order);
        Ok(())
    }

    /// Tower for `F_q`, `q = p^k`: the prime field alone, or one level of
    /// degree `k` with the first irreducible modulus (see [`Self::extend`]).
    pub fn for_order(q: u128) -> Result<Self> {
        let factors = prime_factors(q);
        if factors.len() != 1 || q < 2 {
            return Err(Error::NotPrime(q as u64));
        }
        let p = factors[0];
        let mut k = 0usize;
        let mut t = q;
        while t > 1 {
            t /= p;
            k += 1;
        }
        let tower = FieldTower::prime(p as u64)?;
        if k == 1 {
            Ok(tower)
        } else {
            tower.extend(k)
        }
    }

    /// Adds a level of the given degree over the current top. The modulus is
    /// the first monic irreducible polynomial when the non-leading
    /// coefficient indices are read as a base-`Q` number (constant term
    /// least significant) and counted upward from zero.
    pub fn extend(&self, degree: usize) -> Result<Self> {
        self.extend_where(degree, |_| true)
    }

    /// Like [`Self::extend`], skipping moduli whose root does not generate
    /// the multiplicative group of the new level.
    pub fn extend_primitive(&self, degree: usize) -> Result<Self> {
        self.extend_where(degree, |t| {
            let top = t.top_level();
            let order = t.order[top] - 1;
            let a = t.generator(top);
            prime_factors(order).into_iter().all(|l| t.pow(&a, order / l) != t.one(top))
        })
    }

    fn extend_where(&self, degree: usize, accept: impl Fn(&FieldTower) -> bool) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let top = self.top_level();
        let q = self.order[top];
        let view = self.view(top);
        let mut candidate = 0u128;
        loop {
            let mut modulus = Vec::with_capacity(degree + 1);
            let mut c = candidate;
            for _ in 0..degree {
                modulus.push(c % q);
                c /= q;
            }
            if c > 0 {
                // every candidate failed; impossible over a finite field
                return Err(Error::ModulusNotIrreducible { level: top + 1 });
            }
            modulus.push(1);
            let coeffs: Vec<FieldElement> = modulus.iter().map(|&i| view.element(i)).collect();
            if poly::is_irreducible(&view, &coeffs) {
                let mut specs = self.specs();
                specs.push(LevelSpec { degree, modulus });
                let t = FieldTower::new(self.p, &specs)?;
                if accept(&t) {
                    return Ok(t);
                }
            }
            candidate += 1;
        }
    }

    pub fn specs(&self) -> Vec<LevelSpec> {
        (1..=self.levels.len())
            .map(|l| LevelSpec {
                degree: self.levels[l - 1].degree,
                modulus: self.levels[l - 1].modulus.iter().map(|d| self.digits_index(d)).collect(),
            })
            .collect()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn top_level(&self) -> usize {
        self.levels.len()
    }

    /// Degree of `level` over `level - 1`; `1` for the prime field.
    pub fn degree(&self, level: usize) -> usize {
        if level == 0 {
            1
        } else {
            self.levels[level - 1].degree
        }
    }

    /// Degree of `level` over `F_p`.
    pub fn abs_degree(&self, level: usize) -> usize {
        self.abs_degree[level]
    }

    pub fn order(&self, level: usize) -> u128 {
        self.order[level]
    }

    /// `[level : base]`.
    pub fn relative_degree(&self, level: usize, base: usize) -> Result<usize> {
        if base > level || level > self.top_level() {
            return Err(Error::TowerMismatch);
        }
        Ok(self.abs_degree[level] / self.abs_degree[base])
    }

    pub fn view(&self, level: usize) -> LevelView<'_> {
        assert!(level <= self.top_level(), "level {level} out of range");
        LevelView { tower: self, level }
    }

    /// Modulus of `level` as elements of `level - 1`, constant first.
    pub fn modulus(&self, level: usize) -> Vec<FieldElement> {
        self.levels[level - 1]
            .modulus
            .iter()
            .map(|d| FieldElement { level: level - 1, digits: d.clone() })
            .collect()
    }

    pub fn zero(&self, level: usize) -> FieldElement {
        FieldElement { level, digits: vec![0; self.abs_degree[level]] }
    }

    pub fn one(&self, level: usize) -> FieldElement {
        let mut z = self.zero(level);
        z.digits[0] = 1;
        z
    }

    /// Embeds an integer through `Z -> F_p -> level`.
    pub fn from_int(&self, level: usize, v: i64) -> FieldElement {
        let mut z = self.zero(level);
        z.digits[0] = v.rem_euclid(self.p as i64) as u64;
        z
    }

    /// The class of the adjoined variable `a_level`.
    pub fn generator(&self, level: usize) -> FieldElement {
        if level == 0 {
            return self.one(0);
        }
        let below = self.abs_degree[level - 1];
        if self.levels[level - 1].degree == 1 {
            // a + c = 0
            let c = FieldElement { level: level - 1, digits: self.levels[level - 1].modulus[0].clone() };
            let neg = self.neg_digits(&c.digits);
            return self.embed_unchecked(&FieldElement { level: level - 1, digits: neg }, level);
        }
        let mut z = self.zero(level);
        z.digits[below] = 1;
        z
    }

    pub fn element(&self, level: usize, mut index: u128) -> FieldElement {
        let mut z = self.zero(level);
        for d in z.digits.iter_mut() {
            *d = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        z
    }

    pub fn index_of(&self, x: &FieldElement) -> u128 {
        self.digits_index(&x.digits)
    }

    fn digits_index(&self, digits: &[u64]) -> u128 {
        digits.iter().rev().fold(0u128, |acc, &d| acc * self.p as u128 + d as u128)
    }

    /// Element of `level` from coefficients over `level - 1`.
    pub fn from_coeffs(&self, level: usize, coeffs: &[FieldElement]) -> Result<FieldElement> {
        if level == 0 || coeffs.len() != self.degree(level) || coeffs.iter().any(|c| c.level != level - 1) {
            return Err(Error::TowerMismatch);
        }
        let digits = coeffs.iter().flat_map(|c| c.digits.iter().copied()).collect();
        Ok(FieldElement { level, digits })
    }

    /// Coefficients over the level immediately below.
    pub fn coeffs(&self, x: &FieldElement) -> Vec<FieldElement> {
        if x.level == 0 {
            return vec![x.clone()];
        }
        let s = self.abs_degree[x.level - 1];
        x.digits.chunks(s).map(|c| FieldElement { level: x.level - 1, digits: c.to_vec() }).collect()
    }

    fn check_same(&self, x: &FieldElement, y: &FieldElement) -> Result<()> {
        if x.level != y.level || x.level > self.top_level() || x.digits.len() != self.abs_degree[x.level] {
            return Err(Error::TowerMismatch);
        }
        if y.digits.len() != x.digits.len() {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check_same(x, y)?;
        Ok(FieldElement { level: x.level, digits: self.add_digits(&x.digits, &y.digits) })
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check_same(x, y)?;
        let ny = self.neg_digits(&y.digits);
        Ok(FieldElement { level: x.level, digits: self.add_digits(&x.digits, &ny) })
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement { level: x.level, digits: self.neg_digits(&x.digits) }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check_same(x, y)?;
        Ok(FieldElement { level: x.level, digits: self.mul_digits(x.level, &x.digits, &y.digits) })
    }

    pub fn pow(&self, x: &FieldElement, e: u128) -> FieldElement {
        self.view(x.level).pow(x, e)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.order[x.level] - 2))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        let yi = self.inv(y)?;
        self.mul(x, &yi)
    }

    /// Lifts `x` to a higher level (lower elements sit in the constant
    /// coordinate, so this pads with zero digits).
    pub fn embed(&self, x: &FieldElement, level: usize) -> Result<FieldElement> {
        if level < x.level || level > self.top_level() {
            return Err(Error::TowerMismatch);
        }
        Ok(self.embed_unchecked(x, level))
    }

    fn embed_unchecked(&self, x: &FieldElement, level: usize) -> FieldElement {
        let mut digits = x.digits.clone();
        digits.resize(self.abs_degree[level], 0);
        FieldElement { level, digits }
    }

    /// `x ↦ x^Q` with `Q = |base_level|`.
    pub fn frobenius(&self, x: &FieldElement, base_level: usize) -> Result<FieldElement> {
        if base_level > x.level {
            return Err(Error::TowerMismatch);
        }
        Ok(self.pow(x, self.order[base_level]))
    }

    /// Coordinates of `x` over `base_level` in the product power basis.
    pub fn coords_over(&self, x: &FieldElement, base_level: usize) -> Result<Vec<FieldElement>> {
        if base_level > x.level {
            return Err(Error::TowerMismatch);
        }
        let s = self.abs_degree[base_level];
        Ok(x.digits.chunks(s).map(|c| FieldElement { level: base_level, digits: c.to_vec() }).collect())
    }

    /// Inverse of [`Self::coords_over`].
    pub fn from_coords(&self, coords: &[FieldElement], base_level: usize, level: usize) -> Result<FieldElement> {
        let k = self.relative_degree(level, base_level)?;
        if coords.len() != k || coords.iter().any(|c| c.level != base_level) {
            return Err(Error::TowerMismatch);
        }
        let digits = coords.iter().flat_map(|c| c.digits.iter().copied()).collect();
        Ok(FieldElement { level, digits })
    }

    /// Degree of the minimal polynomial of `x` over `base_level`: the least
    /// `k >= 1` with `x^(Q^k) = x`.
    pub fn element_degree(&self, x: &FieldElement, base_level: usize) -> Result<usize> {
        let bound = self.relative_degree(x.level, base_level)?;
        let mut y = self.frobenius(x, base_level)?;
        let mut k = 1;
        while y != *x {
            y = self.frobenius(&y, base_level)?;
            k += 1;
            debug_assert!(k <= bound);
        }
        Ok(k)
    }

    fn add_digits(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect()
    }

    fn neg_digits(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect()
    }

    fn mul_digits(&self, level: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        if level == 0 {
            return vec![a[0] * b[0] % p];
        }
        let ext = &self.levels[level - 1];
        let k = ext.degree;
        let s = self.abs_degree[level - 1];
        if s == 1 {
            let mut prod = vec![0u64; 2 * k - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for t in (k..2 * k - 1).rev() {
                let c = prod[t];
                if c == 0 {
                    continue;
                }
                prod[t] = 0;
                let nc = p - c;
                for (j, m) in ext.modulus[..k].iter().enumerate() {
                    prod[t - k + j] = (prod[t - k + j] + nc * m[0]) % p;
                }
            }
            prod.truncate(k);
            return prod;
        }
        let zero = vec![0u64; s];
        let mut prod: Vec<Vec<u64>> = vec![zero.clone(); 2 * k - 1];
        let achunks: Vec<&[u64]> = a.chunks(s).collect();
        let bchunks: Vec<&[u64]> = b.chunks(s).collect();
        for (i, x) in achunks.iter().enumerate() {
            if x.iter().all(|&d| d == 0) {
                continue;
            }
            for (j, y) in bchunks.iter().enumerate() {
                if y.iter().all(|&d| d == 0) {
                    continue;
                }
                let t = self.mul_digits(level - 1, x, y);
                prod[i + j] = self.add_digits(&prod[i + j], &t);
            }
        }
        for t in (k..2 * k - 1).rev() {
            let c = core::mem::replace(&mut prod[t], zero.clone());
            if c.iter().all(|&d| d == 0) {
                continue;
            }
            let nc = self.neg_digits(&c);
            for j in 0..k {
                let term = self.mul_digits(level - 1, &nc, &ext.modulus[j]);
                prod[t - k + j] = self.add_digits(&prod[t - k + j], &term);
            }
        }
        prod.truncate(k);
        prod.concat()
    }
}

/// One level of a tower seen as a [`FiniteField`].
#[derive(Clone, Copy, Debug)]
pub struct LevelView<'a> {
    tower: &'a FieldTower,
    level: usize,
}

impl<'a> LevelView<'a> {
    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

impl FiniteField for LevelView<'_> {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.tower.p
    }

    fn order(&self) -> u128 {
        self.tower.order[self.level]
    }

    fn zero(&self) -> FieldElement {
        self.tower.zero(self.level)
    }

    fn one(&self) -> FieldElement {
        self.tower.one(self.level)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.level == self.level && b.level == self.level);
        FieldElement { level: self.level, digits: self.tower.add_digits(&a.digits, &b.digits) }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.tower.neg(a)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(a.level == self.level && b.level == self.level);
        FieldElement { level: self.level, digits: self.tower.mul_digits(self.level, &a.digits, &b.digits) }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    fn element(&self, index: u128) -> FieldElement {
        self.tower.element(self.level, index)
    }

    fn index_of(&self, a: &FieldElement) -> u128 {
        self.tower.index_of(a)
    }
}
