//! Dense univariate polynomials over a [`FiniteField`], constant term first.
//!
//! Only what the tower needs: modular reduction, modular powering, gcd and
//! Rabin's irreducibility criterion.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{prime_factors, FiniteField};

pub type Poly<E> = Vec<E>;

pub fn trim<F: FiniteField>(field: &F, a: &mut Poly<F::Elem>) {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree<E>(a: &Poly<E>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn sub<F: FiniteField>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
        out.push(field.sub(&x, &y));
    }
    trim(field, &mut out);
    out
}

pub fn mul<F: FiniteField>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.mul_add(x, y, &out[i + j]);
        }
    }
    trim(field, &mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem<F: FiniteField>(field: &F, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut r = a.clone();
    trim(field, &mut r);
    let dm = degree(m).expect("modulus must be nonzero");
    let lead_inv = field.inv(&m[dm]).expect("leading coefficient is nonzero");
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - dm;
        for (j, mj) in m.iter().enumerate() {
            let t = field.mul(&c, mj);
            r[shift + j] = field.sub(&r[shift + j], &t);
        }
        trim(field, &mut r);
    }
    r
}

pub fn mul_mod<F: FiniteField>(
    field: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
    m: &Poly<F::Elem>,
) -> Poly<F::Elem> {
    rem(field, &mul(field, a, b), m)
}

pub fn pow_mod<F: FiniteField>(
    field: &F,
    a: &Poly<F::Elem>,
    mut e: u128,
    m: &Poly<F::Elem>,
) -> Poly<F::Elem> {
    let mut base = rem(field, a, m);
    let mut acc = rem(field, &vec![field.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(field, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(field, &base, &base, m);
        }
    }
    acc
}

pub fn gcd<F: FiniteField>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(field, &mut a);
    trim(field, &mut b);
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// `x^(Q^k) mod m` where `Q` is the field order, by `k` successive
/// `Q`-th powers.
fn frobenius_power_of_x<F: FiniteField>(field: &F, m: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
    let x = vec![field.zero(), field.one()];
    let mut y = rem(field, &x, m);
    for _ in 0..k {
        y = pow_mod(field, &y, field.order(), m);
    }
    y
}

/// Rabin's criterion: a polynomial `f` of degree `k >= 1` over `F_Q` is
/// irreducible iff `x^(Q^k) = x mod f` and `gcd(x^(Q^(k/r)) - x, f) = 1`
/// for every prime `r | k`.
pub fn is_irreducible<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> bool {
    let mut f = f.clone();
    trim(field, &mut f);
    let k = match degree(&f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let x = rem(field, &vec![field.zero(), field.one()], &f);
    if frobenius_power_of_x(field, &f, k) != x {
        return false;
    }
    for r in prime_factors(k as u128) {
        let y = frobenius_power_of_x(field, &f, k / r as usize);
        let g = gcd(field, &sub(field, &y, &x), &f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
