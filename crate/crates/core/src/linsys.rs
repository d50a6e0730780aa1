//! Extremal linear systems of degree-`d` hypersurfaces over `F_q`.
//!
//! With `m = C(n+d, n)` and `r = C(n+d-1, n)`:
//! `L_red`, the forms divisible by a fixed linear form, has dimension
//! `r - 1` and only reducible members; `L_irr`, spanned by forms vanishing
//! at a point of `P^n(F_{q^r})` that is free for degree `d - 1`, has
//! dimension `m - 1 - r` and only `F_q`-irreducible members.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::binomial_usize;
use crate::error::{Error, Result};
use crate::factor::FactorContext;
use crate::field::FiniteField;
use crate::forms::{
    class_count, class_index, class_vector, enumerate_monomials, eval_form, mul_forms, Form, MonomialIndex, ParamSet,
    ProjectivePoint,
};
use crate::linalg;
use crate::orbit::OrbitContext;
use crate::rng;
use crate::search::{SearchConfig, Searcher};
use crate::table::SmallField;
use crate::tower::{FieldTower, LevelSpec};

/// `C(n+d-1, n)`: the number of degree-`(d-1)` monomials.
pub fn r_value(n: usize, d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::DegreeTooSmall { d });
    }
    binomial_usize(n + d - 1, n)
}

/// The field `F_q` on which every form of this module lives.
pub fn base_field(q: u128) -> Result<SmallField> {
    let tower = FieldTower::for_order(q)?;
    SmallField::from_tower(&tower, tower.top_level())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Reducible,
    Irreducible,
    Other,
}

/// The point of `P^n(F_{q^r})` an `L_irr` was built from, enough to replay
/// the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingPoint {
    /// Tower of `F_{q^r}`; its top level holds the point.
    pub specs: Vec<LevelSpec>,
    pub p: u64,
    pub r: usize,
    /// Element indices in the top level.
    pub coords: Vec<u32>,
    pub config: SearchConfig,
    /// Position of the point in the search order.
    pub candidate: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub params: ParamSet,
    pub kind: SystemKind,
    pub basis: Vec<Form<u32>>,
    pub generator: Option<GeneratingPoint>,
}

impl LinearSystem {
    /// Checks shapes and linear independence of `basis` over `F_q`.
    pub fn new(params: ParamSet, kind: SystemKind, basis: Vec<Form<u32>>) -> Result<Self> {
        let field = base_field(params.q)?;
        for f in &basis {
            if f.n != params.n || f.d != params.d || f.coeffs.len() != params.m {
                return Err(Error::DegreeMismatch { expected: params.m, found: f.coeffs.len() });
            }
            if f.coeffs.iter().any(|&c| c as u128 >= params.q) {
                return Err(Error::RangeError("coefficient outside F_q"));
            }
        }
        let rows: Vec<Vec<u32>> = basis.iter().map(|f| f.coeffs.clone()).collect();
        if !rows.is_empty() && linalg::rank(&field, &rows)? != rows.len() {
            return Err(Error::HypothesisViolated("basis is linearly dependent"));
        }
        Ok(LinearSystem { params, kind, basis, generator: None })
    }

    /// Projective dimension, `-1` for the empty system.
    pub fn dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    /// Number of `F_q`-members up to scalars, `(q^{dim+1} - 1)/(q - 1)`.
    pub fn member_count(&self) -> Option<u128> {
        class_count(self.params.q, self.basis.len())
    }

    /// Member with coefficient vector the scalar class `k` of `F_q^{dim+1}`.
    pub fn member(&self, field: &SmallField, k: u128) -> Form<u32> {
        let lambda = class_vector(field, self.basis.len(), k);
        self.combine(field, &lambda)
    }

    pub fn combine(&self, field: &SmallField, lambda: &[u32]) -> Form<u32> {
        let p = self.params;
        let mut acc = Form::zero(field, p.n, p.d);
        for (c, f) in lambda.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(field, &f.scale(field, c));
            }
        }
        acc
    }
}

/// Forms divisible by the linear form `hyperplane`.
pub fn build_l_red(params: ParamSet, hyperplane: &Form<u32>) -> Result<LinearSystem> {
    let (n, d) = (params.n, params.d);
    if d < 2 {
        return Err(Error::DegreeTooSmall { d });
    }
    if hyperplane.d != 1 || hyperplane.n != n || hyperplane.coeffs.len() != n + 1 {
        return Err(Error::DegreeMismatch { expected: n + 1, found: hyperplane.coeffs.len() });
    }
    let field = base_field(params.q)?;
    if hyperplane.is_zero(&field) {
        return Err(Error::HypothesisViolated("hyperplane form is zero"));
    }
    let index = MonomialIndex::new(n, d);
    let basis = (0..index.count(d - 1))
        .map(|s| mul_forms(&field, &index, hyperplane, &Form::monomial(&field, n, d - 1, s)))
        .collect();
    LinearSystem::new(params, SystemKind::Reducible, basis)
}

/// `x_0` as a linear form.
pub fn coordinate_hyperplane(n: usize) -> Form<u32> {
    let mut coeffs = vec![0; n + 1];
    coeffs[0] = 1;
    Form { n, d: 1, coeffs }
}

/// Degree-`d` forms over `F_q` vanishing at a point of `P^n(F_{q^r})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingSpace {
    pub params: ParamSet,
    pub r: usize,
    pub point: Vec<u32>,
    pub basis: Vec<Form<u32>>,
    /// Every basis form vanishes on the whole Galois orbit of the point.
    pub vanishes_on_orbit: bool,
}

impl VanishingSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `m - r`.
    pub fn lower_bound(&self) -> usize {
        self.params.m - self.r
    }
}

/// `ctx` must describe `F_{q^r}` over `F_q`, `r = C(n+d-1, n)`. Fails with
/// `PointNotFree` unless the point lies on no degree-`(d-1)` form over `F_q`.
pub fn vanishing_space(
    params: ParamSet,
    ctx: &OrbitContext<'_, SmallField>,
    point: &ProjectivePoint<u32>,
) -> Result<VanishingSpace> {
    let (n, d) = (params.n, params.d);
    if d < 2 {
        return Err(Error::DegreeTooSmall { d });
    }
    let r = r_value(n, d)?;
    if ctx.degree() != r || ctx.base().order() != params.q {
        return Err(Error::ParamMismatch);
    }
    if !ctx.is_free_point(point, d - 1)?.is_free() {
        return Err(Error::PointNotFree);
    }
    let monomials = enumerate_monomials(n, d);
    let rows = ctx.condition_rows(point.coords(), &monomials);
    let kernel = linalg::kernel(ctx.base(), &rows, params.m)?;
    let basis: Vec<Form<u32>> = kernel.into_iter().map(|c| Form { n, d, coeffs: c }).collect();
    let orbit = ctx.galois_orbit(point);
    let mut vanishes_on_orbit = true;
    for f in &basis {
        let g = ctx.embed_form(f);
        for p in &orbit {
            vanishes_on_orbit &= eval_form(ctx.field(), &g, p.coords())? == 0;
        }
    }
    Ok(VanishingSpace { params, r, point: point.coords().to_vec(), basis, vanishes_on_orbit })
}

/// Tower and table field for `F_{q^r}`, with a primitive modulus root.
pub fn extension_for(q: u128, r: usize) -> Result<(FieldTower, SmallField)> {
    let tower = FieldTower::for_order(q)?.extend_primitive(r)?;
    let field = SmallField::from_tower(&tower, tower.top_level())?;
    Ok((tower, field))
}

/// `L_irr` from the first degree-`(d-1)`-free point found by `config`,
/// keeping the first `m - r` kernel vectors in elimination order.
pub fn build_l_irr(params: ParamSet, config: SearchConfig) -> Result<(LinearSystem, VanishingSpace)> {
    let (n, d) = (params.n, params.d);
    if d < 2 {
        return Err(Error::DegreeTooSmall { d });
    }
    let r = r_value(n, d)?;
    let (tower, field) = extension_for(params.q, r)?;
    let top = tower.top_level();
    let ctx = OrbitContext::new(&field, &tower, top, top - 1)?;
    let a = tower.index_of(&tower.generator(top)) as u32;
    let searcher = Searcher::new(&ctx, n, d - 1, config, a)?;
    let (candidate, cert) = searcher.find()?;
    let space = vanishing_space(params, &ctx, &cert.point)?;
    let keep = params.m - r;
    if space.dimension() < keep {
        return Err(Error::HypothesisViolated("vanishing space smaller than m - r"));
    }
    let mut system = LinearSystem::new(params, SystemKind::Irreducible, space.basis[..keep].to_vec())?;
    system.generator = Some(GeneratingPoint {
        specs: tower.specs(),
        p: tower.characteristic(),
        r,
        coords: cert.point.coords().to_vec(),
        config,
        candidate,
    });
    Ok((system, space))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Reducible,
    Irreducible,
}

/// Counts over a range of members; ranges merge by addition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemberTally {
    pub members: u128,
    pub reducible: u128,
    pub irreducible: u128,
    /// First few counterexample member indices.
    pub counterexamples: Vec<u128>,
    pub counterexample_count: u128,
}

const COUNTEREXAMPLE_KEEP: usize = 16;

impl MemberTally {
    pub fn merge(&mut self, other: &MemberTally) {
        self.members += other.members;
        self.reducible += other.reducible;
        self.irreducible += other.irreducible;
        self.counterexample_count += other.counterexample_count;
        self.counterexamples.extend_from_slice(&other.counterexamples);
        self.counterexamples.sort_unstable();
        self.counterexamples.truncate(COUNTEREXAMPLE_KEEP);
    }
}

/// Factors members of one system.
pub struct MemberVerifier<'s> {
    system: &'s LinearSystem,
    factor: FactorContext,
    expect: Expectation,
}

impl<'s> MemberVerifier<'s> {
    pub fn new(system: &'s LinearSystem, expect: Expectation, budget: u128) -> Result<Self> {
        let count = system.member_count().ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
        let p = system.params;
        Ok(MemberVerifier { system, factor: FactorContext::new(p.n, p.d, p.q, false)?, expect })
    }

    pub fn member_count(&self) -> u128 {
        self.system.member_count().unwrap_or(0)
    }

    pub fn tally_range(&self, start: u128, end: u128) -> MemberTally {
        let field = self.factor.field();
        let mut t = MemberTally::default();
        for k in start..end {
            let f = self.system.member(field, k);
            t.members += 1;
            let reducible = self.factor.split_over_base(&f).is_some();
            if reducible {
                t.reducible += 1;
            } else {
                t.irreducible += 1;
            }
            if reducible != (self.expect == Expectation::Reducible) {
                t.counterexample_count += 1;
                if t.counterexamples.len() < COUNTEREXAMPLE_KEEP {
                    t.counterexamples.push(k);
                }
            }
        }
        t
    }
}

/// Factors every `F_q`-member up to scalars.
pub fn verify_members(system: &LinearSystem, expect: Expectation, budget: u128) -> Result<MemberTally> {
    let v = MemberVerifier::new(system, expect, budget)?;
    Ok(v.tally_range(0, v.member_count()))
}

fn stacked_rows(a: &LinearSystem, b: &LinearSystem) -> Result<Vec<Vec<u32>>> {
    if a.params != b.params {
        return Err(Error::ParamMismatch);
    }
    Ok(a.basis.iter().chain(&b.basis).map(|f| f.coeffs.clone()).collect())
}

/// Projective dimension of the intersection of the two spans.
pub fn intersection_dimension(a: &LinearSystem, b: &LinearSystem) -> Result<i64> {
    let rows = stacked_rows(a, b)?;
    let field = base_field(a.params.q)?;
    let rank = if rows.is_empty() { 0 } else { linalg::rank(&field, &rows)? };
    Ok(rows.len() as i64 - rank as i64 - 1)
}

/// A form in both spans, if they meet.
pub fn intersection_member(a: &LinearSystem, b: &LinearSystem) -> Result<Option<Form<u32>>> {
    let rows = stacked_rows(a, b)?;
    if rows.is_empty() {
        return Ok(None);
    }
    let field = base_field(a.params.q)?;
    let kernel = linalg::left_kernel(&field, &rows, a.params.m)?;
    Ok(kernel.first().map(|y| a.combine(&field, &y[..a.basis.len()]).normalized(&field)))
}

/// A system of projective dimension `dim` with pseudo-random basis, drawn
/// from `rng` counters `seed`; dependent draws are skipped.
pub fn random_system(params: ParamSet, dim: usize, seed: u64) -> Result<LinearSystem> {
    if dim >= params.m {
        return Err(Error::RangeError("dimension must be below m"));
    }
    let field = base_field(params.q)?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut counter = 0u64;
    while rows.len() <= dim {
        let v: Vec<u32> = (0..params.m)
            .map(|j| rng::draw_below(seed, counter * params.m as u64 + j as u64, params.q) as u32)
            .collect();
        counter += 1;
        rows.push(v);
        if linalg::rank(&field, &rows)? < rows.len() {
            rows.pop();
        }
    }
    let basis = rows.into_iter().map(|c| Form { n: params.n, d: params.d, coeffs: c }).collect();
    LinearSystem::new(params, SystemKind::Other, basis)
}

/// Exact counts of the reducible locus over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibleLocusReport {
    pub params: ParamSet,
    /// `(i, |R_i(F_q)|, dim R_i)` for `1 <= i <= d/2`.
    pub per_split: Vec<(usize, u128, usize)>,
    pub union: u128,
    pub r: usize,
    /// `r + n - 1`.
    pub s: usize,
    /// `|R(F_q)| / q^s`.
    pub leading_ratio: BigRational,
}

impl ReducibleLocusReport {
    pub fn split_sum(&self) -> u128 {
        self.per_split.iter().map(|x| x.1).sum()
    }

    /// `s` equals the largest `dim R_i`.
    pub fn s_matches_dimensions(&self) -> bool {
        self.per_split.iter().map(|x| x.2).max() == Some(self.s)
    }
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: u128) -> Self {
        Bitset(vec![0; (len as usize).div_ceil(64)])
    }

    fn set(&mut self, i: u128) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }

    fn or(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count(&self) -> u128 {
        self.0.iter().map(|w| w.count_ones() as u128).sum()
    }
}

/// Enumerates all products of scalar classes of degrees `i` and `d - i`.
pub fn reducible_locus_counts(params: ParamSet, budget: u128) -> Result<ReducibleLocusReport> {
    let (n, d, q) = (params.n, params.d, params.q);
    if d < 2 {
        return Err(Error::DegreeTooSmall { d });
    }
    let total = class_count(q, params.m).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    let field = base_field(q)?;
    let index = MonomialIndex::new(n, d);
    let mut union = Bitset::new(total);
    let mut per_split = Vec::new();
    let mut work = 0u128;
    for i in 1..=d / 2 {
        let (m1, m2) = (index.count(i), index.count(d - i));
        let c1 = class_count(q, m1).expect("smaller than the total");
        let c2 = class_count(q, m2).expect("smaller than the total");
        work = work.saturating_add(c1.saturating_mul(c2));
        if work > budget {
            return Err(Error::BudgetExceeded { needed: work, budget });
        }
        let mut seen = Bitset::new(total);
        for a in 0..c1 {
            let g = Form { n, d: i, coeffs: class_vector(&field, m1, a) };
            for b in 0..c2 {
                let h = Form { n, d: d - i, coeffs: class_vector(&field, m2, b) };
                let f = mul_forms(&field, &index, &g, &h).normalized(&field);
                seen.set(class_index(&field, &f.coeffs).expect("product is nonzero"));
            }
        }
        per_split.push((i, seen.count(), m1 + m2 - 2));
        union.or(&seen);
    }
    let r = r_value(n, d)?;
    let s = r + n - 1;
    let leading_ratio = BigRational::new(BigInt::from(union.count()), num_traits::pow(BigInt::from(q), s));
    Ok(ReducibleLocusReport { params, per_split, union: union.count(), r, s, leading_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, d: usize, q: u128) -> ParamSet {
        ParamSet::new(n, d, q).unwrap()
    }

    #[test]
    fn l_red_plane_conics() {
        let sys = build_l_red(params(2, 2, 3), &coordinate_hyperplane(2)).unwrap();
        assert_eq!(sys.dim(), 2);
        // x0^2, x0 x1, x0 x2 are the first three lex monomials
        for (s, f) in sys.basis.iter().enumerate() {
            let mut e = vec![0; 6];
            e[s] = 1;
            assert_eq!(f.coeffs, e);
        }
        assert_eq!(build_l_red(params(2, 3, 3), &coordinate_hyperplane(2)).unwrap().dim(), 5);
        assert_eq!(
            build_l_red(params(2, 1, 3), &coordinate_hyperplane(2)).unwrap_err(),
            Error::DegreeTooSmall { d: 1 }
        );
    }

    #[test]
    fn l_red_members_reducible() {
        let sys = build_l_red(params(2, 2, 3), &coordinate_hyperplane(2)).unwrap();
        let t = verify_members(&sys, Expectation::Reducible, 1 << 20).unwrap();
        assert_eq!(t.members, 13);
        assert_eq!(t.counterexample_count, 0);
    }

    #[test]
    fn l_irr_conics() {
        let p = params(2, 2, 3);
        let (sys, space) = build_l_irr(p, SearchConfig::default()).unwrap();
        assert_eq!(sys.dim(), 2);
        assert!(space.dimension() >= space.lower_bound());
        assert!(space.vanishes_on_orbit);
        let t = verify_members(&sys, Expectation::Irreducible, 1 << 20).unwrap();
        assert_eq!((t.members, t.counterexample_count), (13, 0));
    }

    #[test]
    fn intersections() {
        let p = params(2, 2, 3);
        let red = build_l_red(p, &coordinate_hyperplane(2)).unwrap();
        assert_eq!(intersection_dimension(&red, &red).unwrap(), 2);
        let big = random_system(p, 3, 7).unwrap();
        let (irr, _) = build_l_irr(p, SearchConfig::default()).unwrap();
        assert!(intersection_dimension(&big, &irr).unwrap() >= 0);
        let f = intersection_member(&big, &irr).unwrap().unwrap();
        let fc = FactorContext::new(2, 2, 3, false).unwrap();
        assert!(fc.split_over_base(&f).is_none());
        let other = params(2, 2, 5);
        let x = build_l_red(other, &coordinate_hyperplane(2)).unwrap();
        assert_eq!(intersection_dimension(&red, &x), Err(Error::ParamMismatch));
    }

    #[test]
    fn locus_of_conics() {
        let rep = reducible_locus_counts(params(2, 2, 3), 1 << 20).unwrap();
        assert_eq!(rep.per_split, vec![(1, 91, 4)]);
        assert_eq!(rep.union, 91);
        assert_eq!(rep.s, 4);
        assert!(rep.s_matches_dimensions());
    }
}
