//! Homogeneous forms, monomials and projective points.
//!
//! Monomials of a fixed degree in `x_0, …, x_n` are ordered lexicographically
//! with `x_0 > x_1 > … > x_n` (for a single degree this is graded-lex), so
//! `x_0^d` comes first and `x_n^d` last. A form is its coefficient vector in
//! that order.
//!
//! Scalar classes of nonzero forms are represented by the form whose first
//! nonzero coefficient is `1`. Classes and points are numbered: first by the
//! position of the leading `1`, then by the remaining coefficient indices
//! read big-endian (last coordinate least significant).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::binomial_usize;
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Parameters `(n, d, q)` with `m = C(n+d, n)` and `r = C(n+d-1, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    pub n: usize,
    pub d: usize,
    pub q: u128,
    pub m: usize,
    pub r: usize,
}

impl ParamSet {
    pub fn new(n: usize, d: usize, q: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::RangeError("ambient dimension n must be at least 1"));
        }
        if d == 0 {
            return Err(Error::DegreeTooSmall { d });
        }
        let m = binomial_usize(n + d, n)?;
        let r = binomial_usize(n + d - 1, n)?;
        Ok(ParamSet { n, d, q, m, r })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Number of monomials of degree `t` in `v` variables.
fn compositions(t: usize, v: usize) -> usize {
    if v == 0 {
        return usize::from(t == 0);
    }
    binomial_usize(t + v - 1, v - 1).expect("monomial count fits usize")
}

fn push_monomials(prefix: &mut Vec<u32>, remaining: u32, vars_left: usize, out: &mut Vec<Monomial>) {
    if vars_left == 1 {
        prefix.push(remaining);
        out.push(Monomial { exps: prefix.clone() });
        prefix.pop();
        return;
    }
    for e in (0..=remaining).rev() {
        prefix.push(e);
        push_monomials(prefix, remaining - e, vars_left - 1, out);
        prefix.pop();
    }
}

/// All degree-`d` monomials in `x_0, …, x_n`, in canonical order.
pub fn enumerate_monomials(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(compositions(d, n + 1));
    push_monomials(&mut Vec::with_capacity(n + 1), d as u32, n + 1, &mut out);
    out
}

/// Position of an exponent vector in the canonical order of its degree.
pub fn monomial_rank(exps: &[u32]) -> usize {
    let v = exps.len();
    let mut rem: usize = exps.iter().map(|&e| e as usize).sum();
    let mut rank = 0;
    for (pos, &e) in exps.iter().enumerate().take(v.saturating_sub(1)) {
        let e = e as usize;
        // monomials with a larger exponent in this position come first
        if rem > e {
            rank += compositions(rem - e - 1, v - pos);
        }
        rem -= e;
    }
    rank
}

/// Monomial lists and multiplication tables for degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    n: usize,
    max_degree: usize,
    by_degree: Vec<Vec<Monomial>>,
    /// `products[a][b - a]` is the `m_a × m_b` table of product indices, `a <= b`.
    products: Vec<Vec<Vec<u32>>>,
}

impl MonomialIndex {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let by_degree: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| enumerate_monomials(n, d)).collect();
        let mut products = Vec::with_capacity(max_degree + 1);
        for a in 0..=max_degree {
            let mut row = Vec::new();
            for b in a..=max_degree - a {
                let mut table = Vec::with_capacity(by_degree[a].len() * by_degree[b].len());
                for ma in &by_degree[a] {
                    for mb in &by_degree[b] {
                        let exps: Vec<u32> = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
                        table.push(monomial_rank(&exps) as u32);
                    }
                }
                row.push(table);
            }
            products.push(row);
        }
        MonomialIndex { n, max_degree, by_degree, products }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn monomials(&self, d: usize) -> &[Monomial] {
        &self.by_degree[d]
    }

    pub fn count(&self, d: usize) -> usize {
        self.by_degree[d].len()
    }

    /// Index of `M_i * M_j` for `M_i` of degree `a` and `M_j` of degree `b`.
    #[inline]
    pub fn product(&self, a: usize, i: usize, b: usize, j: usize) -> usize {
        if a <= b {
            self.products[a][b - a][i * self.by_degree[b].len() + j] as usize
        } else {
            self.products[b][a - b][j * self.by_degree[a].len() + i] as usize
        }
    }

    /// Index of `M_k / M_l` (degrees `a >= b`) when the quotient is a monomial.
    pub fn quotient(&self, a: usize, k: usize, b: usize, l: usize) -> Option<usize> {
        let num = &self.by_degree[a][k].exps;
        let den = &self.by_degree[b][l].exps;
        let mut exps = Vec::with_capacity(num.len());
        for (x, y) in num.iter().zip(den) {
            exps.push(x.checked_sub(*y)?);
        }
        Some(monomial_rank(&exps))
    }
}

/// A homogeneous form of degree `d` in `n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form<E> {
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<E>,
}

impl<E: Clone> Form<E> {
    pub fn new(n: usize, d: usize, coeffs: Vec<E>) -> Result<Self> {
        let m = binomial_usize(n + d, n)?;
        if coeffs.len() != m {
            return Err(Error::DegreeMismatch { expected: m, found: coeffs.len() });
        }
        Ok(Form { n, d, coeffs })
    }

    pub fn zero<F: FiniteField<Elem = E>>(field: &F, n: usize, d: usize) -> Self {
        let m = binomial_usize(n + d, n).expect("monomial count fits usize");
        Form { n, d, coeffs: vec![field.zero(); m] }
    }

    /// The single monomial `M_index` with coefficient one.
    pub fn monomial<F: FiniteField<Elem = E>>(field: &F, n: usize, d: usize, index: usize) -> Self {
        let mut f = Self::zero(field, n, d);
        f.coeffs[index] = field.one();
        f
    }

    pub fn is_zero<F: FiniteField<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Position of the first nonzero coefficient.
    pub fn leading_index<F: FiniteField<Elem = E>>(&self, field: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !field.is_zero(c))
    }

    pub fn scale<F: FiniteField<Elem = E>>(&self, field: &F, s: &E) -> Self {
        Form { n: self.n, d: self.d, coeffs: self.coeffs.iter().map(|c| field.mul(c, s)).collect() }
    }

    /// Representative of the scalar class (leading coefficient `1`).
    pub fn normalized<F: FiniteField<Elem = E>>(&self, field: &F) -> Self {
        match self.leading_index(field) {
            None => self.clone(),
            Some(i) => {
                let inv = field.inv(&self.coeffs[i]).expect("leading coefficient is nonzero");
                self.scale(field, &inv)
            }
        }
    }

    pub fn add<F: FiniteField<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        debug_assert_eq!((self.n, self.d), (other.n, other.d));
        Form {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect(),
        }
    }

    pub fn map<T, G: Fn(&E) -> T>(&self, g: G) -> Form<T> {
        Form { n: self.n, d: self.d, coeffs: self.coeffs.iter().map(g).collect() }
    }
}

/// `f * g`.
pub fn mul_forms<F: FiniteField>(field: &F, index: &MonomialIndex, f: &Form<F::Elem>, g: &Form<F::Elem>) -> Form<F::Elem> {
    let d = f.d + g.d;
    let mut out = Form::zero(field, f.n, d);
    for (i, a) in f.coeffs.iter().enumerate() {
        if field.is_zero(a) {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            if field.is_zero(b) {
                continue;
            }
            let k = index.product(f.d, i, g.d, j);
            out.coeffs[k] = field.mul_add(a, b, &out.coeffs[k]);
        }
    }
    out
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
///
/// Single-divisor division in lex order: the remainder's leading monomial
/// must stay divisible by the leading monomial of `g`, otherwise `g ∤ f`.
pub fn div_exact<F: FiniteField>(
    field: &F,
    index: &MonomialIndex,
    f: &Form<F::Elem>,
    g: &Form<F::Elem>,
) -> Option<Form<F::Elem>> {
    if g.d > f.d {
        return None;
    }
    let lg = g.leading_index(field)?;
    let lead_inv = field.inv(&g.coeffs[lg]).expect("leading coefficient is nonzero");
    let qd = f.d - g.d;
    let mut rem = f.coeffs.clone();
    let mut quot = Form::zero(field, f.n, qd);
    let support: Vec<(usize, F::Elem)> = g
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect();
    for k in 0..rem.len() {
        if field.is_zero(&rem[k]) {
            continue;
        }
        let j = index.quotient(f.d, k, g.d, lg)?;
        let c = field.mul(&rem[k], &lead_inv);
        let nc = field.neg(&c);
        for (s, gs) in &support {
            let t = index.product(g.d, *s, qd, j);
            rem[t] = field.mul_add(&nc, gs, &rem[t]);
        }
        debug_assert!(field.is_zero(&rem[k]));
        quot.coeffs[j] = c;
    }
    Some(quot)
}

/// Values `M_s(P)` of all degree-`d` monomials at a coordinate tuple.
pub fn monomial_values<F: FiniteField>(field: &F, coords: &[F::Elem], monomials: &[Monomial]) -> Vec<F::Elem> {
    let d = monomials.first().map_or(0, |m| m.degree() as usize);
    let powers: Vec<Vec<F::Elem>> = coords
        .iter()
        .map(|x| {
            let mut p = Vec::with_capacity(d + 1);
            p.push(field.one());
            for i in 0..d {
                let next = field.mul(&p[i], x);
                p.push(next);
            }
            p
        })
        .collect();
    monomials
        .iter()
        .map(|m| {
            m.exps
                .iter()
                .enumerate()
                .fold(field.one(), |acc, (i, &e)| field.mul(&acc, &powers[i][e as usize]))
        })
        .collect()
}

/// `f(P)` for a form and a point over the same field.
pub fn eval_form<F: FiniteField>(field: &F, f: &Form<F::Elem>, coords: &[F::Elem]) -> Result<F::Elem> {
    if coords.len() != f.n + 1 {
        return Err(Error::DegreeMismatch { expected: f.n + 1, found: coords.len() });
    }
    let monomials = enumerate_monomials(f.n, f.d);
    let values = monomial_values(field, coords, &monomials);
    Ok(dot(field, &f.coeffs, &values))
}

pub fn dot<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.mul_add(x, y, &acc))
}

/// `(Q^k - 1) / (Q - 1)`: scalar classes of nonzero vectors in `F_Q^k`.
pub fn class_count(q: u128, k: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for _ in 0..k {
        total = total.checked_mul(q)?.checked_add(1)?;
    }
    Some(total)
}

/// Normalized coefficient vector (length `len`) of scalar class `index`.
pub fn class_vector<F: FiniteField>(field: &F, len: usize, mut index: u128) -> Vec<F::Elem> {
    let q = field.order();
    let mut lead = 0;
    loop {
        let block = q.pow((len - 1 - lead) as u32);
        if index < block {
            break;
        }
        index -= block;
        lead += 1;
    }
    let mut v = vec![field.zero(); len];
    v[lead] = field.one();
    for slot in v[lead + 1..].iter_mut().rev() {
        *slot = field.element(index % q);
        index /= q;
    }
    v
}

/// Inverse of [`class_vector`] for a normalized nonzero vector.
pub fn class_index<F: FiniteField>(field: &F, v: &[F::Elem]) -> Option<u128> {
    let q = field.order();
    let lead = v.iter().position(|c| !field.is_zero(c))?;
    if !field.is_one(&v[lead]) {
        return None;
    }
    let mut index: u128 = (0..lead).map(|l| q.pow((v.len() - 1 - l) as u32)).sum();
    let mut tail: u128 = 0;
    for c in &v[lead + 1..] {
        tail = tail * q + field.index_of(c);
    }
    index += tail;
    Some(index)
}

/// Iterator over normalized forms (one per scalar class) or over every
/// nonzero form.
pub fn enumerate_forms<'a, F: FiniteField>(
    field: &'a F,
    n: usize,
    d: usize,
    up_to_scalar: bool,
    budget: u128,
) -> Result<impl Iterator<Item = Form<F::Elem>> + 'a> {
    let m = binomial_usize(n + d, n)?;
    let q = field.order();
    let total = if up_to_scalar {
        class_count(q, m)
    } else {
        q.checked_pow(m as u32).map(|t| t - 1)
    }
    .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok((0..total).map(move |i| {
        let coeffs = if up_to_scalar {
            class_vector(field, m, i)
        } else {
            let mut idx = i + 1;
            let mut v = vec![field.zero(); m];
            for slot in v.iter_mut().rev() {
                *slot = field.element(idx % q);
                idx /= q;
            }
            v
        };
        Form { n, d, coeffs }
    }))
}

/// A point of `P^n`, normalized so the first nonzero coordinate is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint<E> {
    coords: Vec<E>,
}

impl<E: Clone> ProjectivePoint<E> {
    /// `None` when every coordinate is zero.
    pub fn new<F: FiniteField<Elem = E>>(field: &F, coords: Vec<E>) -> Option<Self> {
        let lead = coords.iter().position(|c| !field.is_zero(c))?;
        let inv = field.inv(&coords[lead]).expect("nonzero");
        Some(ProjectivePoint { coords: coords.iter().map(|c| field.mul(c, &inv)).collect() })
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }
}

/// `|P^n(F_Q)|`.
pub fn point_count(q: u128, n: usize) -> Option<u128> {
    class_count(q, n + 1)
}

pub fn point_from_index<F: FiniteField>(field: &F, n: usize, index: u128) -> ProjectivePoint<F::Elem> {
    ProjectivePoint { coords: class_vector(field, n + 1, index) }
}

pub fn enumerate_projective_points<'a, F: FiniteField>(
    field: &'a F,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = ProjectivePoint<F::Elem>> + 'a> {
    let total = point_count(field.order(), n).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok((0..total).map(move |i| point_from_index(field, n, i)))
}
