//! Free-point test, Galois orbits and vanishing conditions.
//!
//! For `P ∈ P^n(E)` with `[E : F] = m`, write each monomial value `M_s(P)`
//! in coordinates over `F`. The resulting `m × m` matrix has full rank iff
//! no nonzero degree-`d` form over `F` vanishes at `P`. A left-kernel
//! vector `y` (so `Σ y_s M_s(P) = 0`) is a vanishing form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::forms::{
    class_count, class_vector, dot, enumerate_monomials, monomial_values, point_from_index, point_count, Form,
    Monomial, ProjectivePoint,
};
use crate::linalg::{self, Matrix};
use crate::table::SmallField;
use crate::tower::FieldTower;

/// Coordinate extraction over a lower level of the same tower.
///
/// Element indices are flat base-`p` digit strings, so the coordinates
/// over a level of absolute degree `s` are the consecutive `s`-digit chunks
/// of the index, each of which is the index of a base-level element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    chunk_order: u128,
    degree: usize,
}

impl Subfield {
    pub fn new(tower: &FieldTower, level: usize, base_level: usize) -> Result<Self> {
        let degree = tower.relative_degree(level, base_level)?;
        Ok(Subfield { chunk_order: tower.order(base_level), degree })
    }

    /// `[E : F]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_order(&self) -> u128 {
        self.chunk_order
    }

    pub fn coords(&self, mut index: u128) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            out.push((index % self.chunk_order) as u32);
            index /= self.chunk_order;
        }
        out
    }
}

/// An extension field `E` together with its base `F` (table-backed) and
/// the coordinate map `E → F^m`.
#[derive(Clone, Debug)]
pub struct OrbitContext<'a, F: FiniteField> {
    field: &'a F,
    base: SmallField,
    sub: Subfield,
    base_level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Free,
    LiesOnHypersurface,
}

/// Rows are the base coordinates of the monomial values; square by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceMatrix {
    pub rows: Matrix<u32>,
    pub rank: usize,
    pub determinant: u32,
}

impl IndependenceMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCertificate<E> {
    pub n: usize,
    pub d: usize,
    pub base_level: usize,
    pub point: ProjectivePoint<E>,
    pub verdict: Verdict,
    pub rank: usize,
    /// Nonzero form over the base vanishing at the point (non-free only).
    pub witness: Option<Form<u32>>,
}

impl<E> OrbitCertificate<E> {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }
}

/// Result of the greedy construction of points imposing independent
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreedyOutcome<E> {
    Complete(Vec<ProjectivePoint<E>>),
    /// At `step` (0-based) the chosen form vanished on every point tried.
    Stuck { step: usize, form: Form<E>, chosen: Vec<ProjectivePoint<E>>, complete_scan: bool },
}

impl<'a, F: FiniteField> OrbitContext<'a, F> {
    /// `field` must be a view of `tower` at `level` (same element indices).
    pub fn new(field: &'a F, tower: &FieldTower, level: usize, base_level: usize) -> Result<Self> {
        if field.order() != tower.order(level) {
            return Err(Error::TowerMismatch);
        }
        let sub = Subfield::new(tower, level, base_level)?;
        let base = SmallField::from_tower(tower, base_level)?;
        Ok(OrbitContext { field, base, sub, base_level })
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn base(&self) -> &SmallField {
        &self.base
    }

    pub fn base_level(&self) -> usize {
        self.base_level
    }

    /// `[E : F]`.
    pub fn degree(&self) -> usize {
        self.sub.degree()
    }

    pub fn coords(&self, x: &F::Elem) -> Vec<u32> {
        self.sub.coords(self.field.index_of(x))
    }

    /// A base-field element viewed in `E`.
    pub fn embed(&self, c: u32) -> F::Elem {
        self.field.element(c as u128)
    }

    pub fn embed_form(&self, f: &Form<u32>) -> Form<F::Elem> {
        f.map(|&c| self.embed(c))
    }

    pub fn frobenius(&self, x: &F::Elem) -> F::Elem {
        self.field.pow(x, self.base.order())
    }

    /// Least `k >= 1` with `x^(q^k) = x`.
    pub fn element_degree(&self, x: &F::Elem) -> usize {
        let mut y = self.frobenius(x);
        let mut k = 1;
        while y != *x {
            y = self.frobenius(&y);
            k += 1;
        }
        k
    }

    /// `k × m` matrix, column `s` the coordinates of `M_s(P)`; its kernel is
    /// the space of forms over `F` vanishing at `P`.
    pub fn condition_rows(&self, coords: &[F::Elem], monomials: &[Monomial]) -> Matrix<u32> {
        let values = monomial_values(self.field, coords, monomials);
        let cols: Vec<Vec<u32>> = values.iter().map(|v| self.coords(v)).collect();
        linalg::transpose(&cols, self.degree())
    }

    pub fn monomial_value_matrix(&self, point: &ProjectivePoint<F::Elem>, d: usize) -> Result<IndependenceMatrix> {
        let n = point.n();
        let monomials = enumerate_monomials(n, d);
        if monomials.len() != self.degree() {
            return Err(Error::DegreeMismatch { expected: monomials.len(), found: self.degree() });
        }
        let values = monomial_values(self.field, point.coords(), &monomials);
        let rows: Matrix<u32> = values.iter().map(|v| self.coords(v)).collect();
        let rank = linalg::rank(&self.base, &rows)?;
        let determinant = linalg::determinant(&self.base, &rows)?;
        Ok(IndependenceMatrix { rows, rank, determinant })
    }

    pub fn is_free_point(&self, point: &ProjectivePoint<F::Elem>, d: usize) -> Result<OrbitCertificate<F::Elem>> {
        let n = point.n();
        let monomials = enumerate_monomials(n, d);
        let m = monomials.len();
        if m != self.degree() {
            return Err(Error::DegreeMismatch { expected: m, found: self.degree() });
        }
        let values = monomial_values(self.field, point.coords(), &monomials);
        let rows: Matrix<u32> = values.iter().map(|v| self.coords(v)).collect();
        let t = linalg::transpose(&rows, m);
        let e = linalg::echelon(&self.base, &t, m)?;
        let rank = e.rank();
        let (verdict, witness) = if rank == m {
            (Verdict::Free, None)
        } else {
            let y = linalg::kernel_from_echelon(&self.base, &e).swap_remove(0);
            (Verdict::LiesOnHypersurface, Some(Form { n, d, coeffs: y }))
        };
        Ok(OrbitCertificate { n, d, base_level: self.base_level, point: point.clone(), verdict, rank, witness })
    }

    /// Conjugates of `P` under `x ↦ x^q`, starting with `P`.
    pub fn galois_orbit(&self, point: &ProjectivePoint<F::Elem>) -> Vec<ProjectivePoint<F::Elem>> {
        let mut orbit = vec![point.clone()];
        loop {
            let last = orbit.last().expect("orbit is nonempty");
            let next: Vec<F::Elem> = last.coords().iter().map(|x| self.frobenius(x)).collect();
            let next = ProjectivePoint::new(self.field, next).expect("Frobenius is injective");
            if next == *point {
                return orbit;
            }
            orbit.push(next);
        }
    }

    /// `m − dim{degree-d forms over F vanishing on all points}`.
    pub fn conditions_rank(&self, points: &[ProjectivePoint<F::Elem>], n: usize, d: usize) -> Result<usize> {
        let monomials = enumerate_monomials(n, d);
        let mut rows = Vec::new();
        for p in points {
            if p.n() != n {
                return Err(Error::DegreeMismatch { expected: n + 1, found: p.coords().len() });
            }
            rows.extend(self.condition_rows(p.coords(), &monomials));
        }
        if rows.is_empty() {
            return Ok(0);
        }
        Ok(linalg::echelon(&self.base, &rows, monomials.len())?.rank())
    }

    /// Oracle: tries every scalar class of degree-`d` forms over `F` and
    /// returns the first one vanishing at `P`. Monomial values are formed by
    /// plain repeated multiplication, independently of the matrix path.
    pub fn exhaustive_vanishing_form(
        &self,
        point: &ProjectivePoint<F::Elem>,
        d: usize,
        budget: u128,
    ) -> Result<Option<Form<u32>>> {
        let n = point.n();
        let monomials = enumerate_monomials(n, d);
        let m = monomials.len();
        let total = class_count(self.base.order(), m).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        let field = self.field;
        let values: Vec<F::Elem> = monomials
            .iter()
            .map(|mono| {
                let mut acc = field.one();
                for (x, &e) in point.coords().iter().zip(&mono.exps) {
                    for _ in 0..e {
                        acc = field.mul(&acc, x);
                    }
                }
                acc
            })
            .collect();
        for idx in 0..total {
            let coeffs = class_vector(&self.base, m, idx);
            let mut acc = field.zero();
            for (c, v) in coeffs.iter().zip(&values) {
                if *c != 0 {
                    acc = field.add(&acc, &field.mul(&self.embed(*c), v));
                }
            }
            if field.is_zero(&acc) {
                return Ok(Some(Form { n, d, coeffs }));
            }
        }
        Ok(None)
    }
}

/// Row rank of coordinate vectors over a table-backed field.
pub fn rank_over_subfield(base: &SmallField, rows: &[Vec<u32>]) -> Result<usize> {
    linalg::rank(base, rows)
}

/// Greedy choice of `m` points of `P^n(field)` imposing independent
/// conditions on degree-`d` forms over the same field: keep a basis of the
/// forms vanishing on the points chosen so far, take its first element and
/// pick the first point (in enumeration order) where it does not vanish.
pub fn greedy_point_selection<F: FiniteField>(
    field: &F,
    n: usize,
    d: usize,
    budget: u128,
) -> Result<GreedyOutcome<F::Elem>> {
    let monomials = enumerate_monomials(n, d);
    let m = monomials.len();
    let total = point_count(field.order(), n).unwrap_or(u128::MAX);
    let scan = total.min(budget);
    let mut rows: Matrix<F::Elem> = Vec::new();
    let mut chosen = Vec::new();
    for step in 0..m {
        let basis = if rows.is_empty() {
            (0..m).map(|s| Form::monomial(field, n, d, s).coeffs).collect()
        } else {
            linalg::kernel(field, &rows, m)?
        };
        let form = Form { n, d, coeffs: basis[0].clone() };
        let mut found = None;
        for idx in 0..scan {
            let p = point_from_index(field, n, idx);
            let values = monomial_values(field, p.coords(), &monomials);
            if !field.is_zero(&dot(field, &form.coeffs, &values)) {
                found = Some((p, values));
                break;
            }
        }
        match found {
            Some((p, values)) => {
                rows.push(values);
                chosen.push(p);
            }
            None => {
                return Ok(GreedyOutcome::Stuck { step, form, chosen, complete_scan: scan == total });
            }
        }
    }
    Ok(GreedyOutcome::Complete(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(q: u128, k: usize) -> (FieldTower, SmallField) {
        let t = FieldTower::for_order(q).unwrap().extend(k).unwrap();
        let f = SmallField::from_tower(&t, t.top_level()).unwrap();
        (t, f)
    }

    #[test]
    fn subfield_coordinates_match_tower() {
        let t = FieldTower::for_order(4).unwrap().extend(3).unwrap();
        let sub = Subfield::new(&t, 2, 1).unwrap();
        for idx in [0u128, 1, 17, 63] {
            let x = t.element(2, idx);
            let c: Vec<u32> = t.coords_over(&x, 1).unwrap().iter().map(|e| t.index_of(e) as u32).collect();
            assert_eq!(sub.coords(idx), c);
        }
    }

    #[test]
    fn primitive_element_case() {
        let (t, f) = small(3, 2);
        let ctx = OrbitContext::new(&f, &t, t.top_level(), t.top_level() - 1).unwrap();
        let a = t.index_of(&t.generator(t.top_level())) as u32;
        let p = ProjectivePoint::new(&f, vec![a, 1]).unwrap();
        let mat = ctx.monomial_value_matrix(&p, 1).unwrap();
        // normalized to (1 : a^-1)
        assert_eq!(p.coords()[0], 1);
        assert_eq!(mat.rows[0], vec![1, 0]);
        assert_ne!(mat.rows[1][1], 0);
        assert_eq!(mat.rank, 2);
        assert!(ctx.is_free_point(&p, 1).unwrap().is_free());
    }

    #[test]
    fn base_point_is_not_free() {
        let (t, f) = small(3, 3);
        let ctx = OrbitContext::new(&f, &t, t.top_level(), t.top_level() - 1).unwrap();
        let p = ProjectivePoint::new(&f, vec![2, 1]).unwrap();
        let cert = ctx.is_free_point(&p, 2).unwrap();
        assert!(!cert.is_free());
        assert_eq!(cert.rank, 1);
        let w = ctx.embed_form(cert.witness.as_ref().unwrap());
        assert_eq!(crate::forms::eval_form(&f, &w, p.coords()).unwrap(), 0);
        assert!(matches!(ctx.is_free_point(&p, 1), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn conditions_of_three_rational_points() {
        let t = FieldTower::prime(3).unwrap();
        let f = SmallField::from_tower(&t, 0).unwrap();
        let ctx = OrbitContext::new(&f, &t, 0, 0).unwrap();
        let pts: Vec<_> = [[1, 0], [0, 1], [1, 1]].iter().map(|c| ProjectivePoint::new(&f, c.to_vec()).unwrap()).collect();
        assert_eq!(ctx.conditions_rank(&[], 1, 2).unwrap(), 0);
        assert_eq!(ctx.conditions_rank(&pts[..2], 1, 2).unwrap(), 2);
        assert_eq!(ctx.conditions_rank(&pts, 1, 2).unwrap(), 3);
    }

    #[test]
    fn greedy_small_cases() {
        let f3 = SmallField::from_tower(&FieldTower::prime(3).unwrap(), 0).unwrap();
        match greedy_point_selection(&f3, 1, 2, 1000).unwrap() {
            GreedyOutcome::Complete(p) => assert_eq!(p.len(), 3),
            other => panic!("{other:?}"),
        }
        let t4 = FieldTower::for_order(4).unwrap();
        let f4 = SmallField::from_tower(&t4, 1).unwrap();
        match greedy_point_selection(&f4, 2, 2, 1000).unwrap() {
            GreedyOutcome::Complete(p) => {
                let ctx = OrbitContext::new(&f4, &t4, 1, 1).unwrap();
                assert_eq!(ctx.conditions_rank(&p, 2, 2).unwrap(), 6);
            }
            other => panic!("{other:?}"),
        }
    }
}
