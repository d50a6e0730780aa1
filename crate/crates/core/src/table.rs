//! Table-backed arithmetic for small tower levels.
//!
//! A [`SmallField`] is built exhaustively from one level of a
//! [`FieldTower`] and uses the tower's element indices as its elements, so
//! converting between the two is the identity on indices and a lower level
//! of the same tower embeds into a higher one without any translation.
//! Multiplication goes through discrete log/antilog tables; addition
//! through a full table for orders up to [`ADD_TABLE_LIMIT`] and through
//! base-`p` digits above that.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{prime_factors, FiniteField};
use crate::tower::FieldTower;

pub const MAX_TABLE_ORDER: u128 = 1 << 20;
pub const ADD_TABLE_LIMIT: u32 = 1 << 10;

#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    order: u32,
    digits: usize,
    /// `exp[i] = g^i` for `i < 2(order - 1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` unused.
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
    generator: u32,
}

impl SmallField {
    pub fn from_tower(tower: &FieldTower, level: usize) -> Result<Self> {
        let order = tower.order(level);
        if order > MAX_TABLE_ORDER {
            return Err(Error::FieldTooLarge { order });
        }
        let view = tower.view(level);
        let p = tower.characteristic() as u32;
        let group = order - 1;
        let factors = prime_factors(group);
        let one = view.one();
        let generator = (1..order)
            .find(|&i| {
                let g = view.element(i);
                factors.iter().all(|&r| view.pow(&g, group / r) != one)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let n = order as usize;
        let mut exp = vec![0u32; 2 * (n - 1)];
        let mut log = vec![0u32; n];
        let g = view.element(generator);
        let mut x = view.one();
        for i in 0..n - 1 {
            let idx = view.index_of(&x) as u32;
            exp[i] = idx;
            exp[i + n - 1] = idx;
            log[idx as usize] = i as u32;
            x = view.mul(&x, &g);
        }
        debug_assert!(x == one);

        let digits = tower.abs_degree(level);
        let mut field = SmallField {
            p,
            order: order as u32,
            digits,
            exp,
            log,
            add_table: None,
            neg: Vec::new(),
            generator: generator as u32,
        };
        field.neg = (0..order as u32).map(|a| field.neg_digits(a)).collect();
        if field.order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = field.add_digits(a as u32, b as u32);
                }
            }
            field.add_table = Some(t);
        }
        Ok(field)
    }

    /// Primitive element used for the log tables.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn size(&self) -> u32 {
        self.order
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.digits {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * scale;
            scale = scale.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.digits {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * scale;
            scale = scale.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    /// Discrete logarithm to the table generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
}

impl FiniteField for SmallField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn order(&self) -> u128 {
        self.order as u128
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.add_table {
            Some(t) => t[*a as usize * self.order as usize + *b as usize],
            None => self.add_digits(*a, *b),
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            0
        } else {
            self.exp[(self.log[*a as usize] + self.log[*b as usize]) as usize]
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            let l = self.log[*a as usize];
            Some(self.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
        }
    }

    fn element(&self, index: u128) -> u32 {
        debug_assert!(index < self.order as u128);
        index as u32
    }

    fn index_of(&self, a: &u32) -> u128 {
        *a as u128
    }

    fn pow(&self, a: &u32, e: u128) -> u32 {
        if *a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let g = (self.order - 1) as u128;
        let l = (self.log[*a as usize] as u128 * (e % g)) % g;
        self.exp[l as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::LevelSpec;

    fn check_against_tower(tower: &FieldTower, level: usize) {
        let f = SmallField::from_tower(tower, level).unwrap();
        let v = tower.view(level);
        let q = tower.order(level) as u32;
        for a in 0..q {
            let ea = v.element(a as u128);
            for b in 0..q {
                let eb = v.element(b as u128);
                assert_eq!(f.add(&a, &b) as u128, v.index_of(&v.add(&ea, &eb)));
                assert_eq!(f.mul(&a, &b) as u128, v.index_of(&v.mul(&ea, &eb)));
            }
            assert_eq!(f.neg(&a) as u128, v.index_of(&v.neg(&ea)));
        }
    }

    #[test]
    fn matches_dense_arithmetic() {
        check_against_tower(&FieldTower::prime(7).unwrap(), 0);
        let f9 = FieldTower::new(3, &[LevelSpec { degree: 2, modulus: vec![1, 0, 1] }]).unwrap();
        check_against_tower(&f9, 1);
        let f16 = FieldTower::for_order(4).unwrap().extend(2).unwrap();
        check_against_tower(&f16, 1);
        check_against_tower(&f16, 2);
    }

    #[test]
    fn digit_addition_above_table_limit() {
        let t = FieldTower::for_order(3).unwrap().extend(7).unwrap();
        let f = SmallField::from_tower(&t, 1).unwrap();
        assert!(f.add_table.is_none());
        let v = t.view(1);
        for (a, b) in [(5u32, 2000u32), (2186, 1), (1234, 953)] {
            let s = v.add(&v.element(a as u128), &v.element(b as u128));
            assert_eq!(f.add(&a, &b) as u128, v.index_of(&s));
        }
    }

    #[test]
    fn subfield_indices_embed() {
        let t = FieldTower::for_order(3).unwrap().extend(3).unwrap();
        let base = SmallField::from_tower(&t, 0).unwrap();
        let ext = SmallField::from_tower(&t, 1).unwrap();
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(base.mul(&a, &b), ext.mul(&a, &b));
                assert_eq!(base.add(&a, &b), ext.add(&a, &b));
            }
        }
    }
}
