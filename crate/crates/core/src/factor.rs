//! Reducibility by complete trial division, reducibility censuses and
//! point-count checks.
//!
//! A homogeneous form in two or more variables factors only into
//! homogeneous forms, so `f` of degree `d` is reducible over a field iff
//! some normalized form of degree `1..=d/2` over that field divides it.
//! Geometric reducibility of an `F_q`-irreducible form is decided over
//! `F_{q^e}` for the divisors `e > 1` of `d`: its absolute factors are
//! Galois conjugates of equal degree `d/e`.
//!
//! Coefficients are element indices of one tower, so a form over `F_q` is
//! also a form over every `F_{q^e}` built on top of it without conversion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binomial_usize;
use crate::bounds::{self, PowerSum, Sign};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::forms::{
    class_count, class_vector, div_exact, dot, enumerate_monomials, monomial_values, mul_forms, point_count,
    point_from_index, Form, MonomialIndex, ParamSet,
};
use crate::table::SmallField;
use crate::tower::FieldTower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseVerdict {
    Irreducible,
    /// `f = g * h` with `1 <= deg g <= deg h`.
    Reducible { g: Form<u32>, h: Form<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricVerdict {
    Irreducible,
    /// Reducible over `F_{q^e}` for this smallest `e | d`, `e > 1`.
    Reducible { e: usize, g: Form<u32>, h: Form<u32> },
    /// Implied by reducibility over the base.
    ReducibleOverBase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub form: Form<u32>,
    pub base: BaseVerdict,
    pub geometric: Option<GeometricVerdict>,
}

/// One field with the normalized divisor candidates of each degree.
#[derive(Clone, Debug)]
struct DivisorField {
    field: SmallField,
    /// `divisors[i - 1]`: normalized forms of degree `i`.
    divisors: Vec<Vec<Form<u32>>>,
}

impl DivisorField {
    fn new(field: SmallField, n: usize, max_i: usize, budget: u128) -> Result<Self> {
        let mut divisors = Vec::with_capacity(max_i);
        for i in 1..=max_i {
            let mi = binomial_usize(n + i, n)?;
            let total = class_count(field.order(), mi).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
            if total > budget {
                return Err(Error::BudgetExceeded { needed: total, budget });
            }
            divisors.push((0..total).map(|k| Form { n, d: i, coeffs: class_vector(&field, mi, k) }).collect());
        }
        Ok(DivisorField { field, divisors })
    }

    fn split(&self, index: &MonomialIndex, f: &Form<u32>) -> Option<(Form<u32>, Form<u32>)> {
        for (i, divs) in self.divisors.iter().enumerate() {
            if i + 1 > f.d / 2 {
                break;
            }
            for g in divs {
                if let Some(h) = div_exact(&self.field, index, f, g) {
                    return Some((g.clone(), h));
                }
            }
        }
        None
    }
}

/// Trial-division machinery for degree-`d` forms in `n + 1` variables over
/// `F_q` and, optionally, over the extensions `F_{q^e}`, `e | d`.
#[derive(Clone, Debug)]
pub struct FactorContext {
    params: ParamSet,
    index: MonomialIndex,
    base: DivisorField,
    extensions: Vec<(usize, DivisorField)>,
    points: Vec<Vec<u32>>,
}

/// Default cap on the number of divisor candidates per degree.
pub const DIVISOR_BUDGET: u128 = 1 << 20;

impl FactorContext {
    pub fn new(n: usize, d: usize, q: u128, geometric: bool) -> Result<Self> {
        Self::with_budget(n, d, q, geometric, DIVISOR_BUDGET)
    }

    pub fn with_budget(n: usize, d: usize, q: u128, geometric: bool, budget: u128) -> Result<Self> {
        let params = ParamSet::new(n, d, q)?;
        let tower = FieldTower::for_order(q)?;
        let top = tower.top_level();
        let base_field = SmallField::from_tower(&tower, top)?;
        let base = DivisorField::new(base_field.clone(), n, d / 2, budget)?;
        let mut extensions = Vec::new();
        if geometric {
            for e in (2..=d).filter(|e| d % e == 0) {
                let ext = tower.extend(e)?;
                let field = SmallField::from_tower(&ext, ext.top_level())?;
                extensions.push((e, DivisorField::new(field, n, d / 2, budget)?));
            }
        }
        let total_points = point_count(q, n).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
        if total_points > budget {
            return Err(Error::BudgetExceeded { needed: total_points, budget });
        }
        let monomials = enumerate_monomials(n, d);
        let points = (0..total_points)
            .map(|i| monomial_values(&base_field, point_from_index(&base_field, n, i).coords(), &monomials))
            .collect();
        Ok(FactorContext { params, index: MonomialIndex::new(n, d), base, extensions, points })
    }

    pub fn params(&self) -> ParamSet {
        self.params
    }

    pub fn field(&self) -> &SmallField {
        &self.base.field
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn is_geometric(&self) -> bool {
        !self.extensions.is_empty() || self.params.d == 1
    }

    pub fn split_over_base(&self, f: &Form<u32>) -> Option<(Form<u32>, Form<u32>)> {
        self.base.split(&self.index, f)
    }

    pub fn is_reducible_over(&self, f: &Form<u32>) -> BaseVerdict {
        match self.split_over_base(f) {
            Some((g, h)) => BaseVerdict::Reducible { g, h },
            None => BaseVerdict::Irreducible,
        }
    }

    /// For an `F_q`-irreducible form.
    pub fn is_geometrically_reducible(&self, f: &Form<u32>) -> GeometricVerdict {
        for (e, ext) in &self.extensions {
            if let Some((g, h)) = ext.split(&self.index, f) {
                return GeometricVerdict::Reducible { e: *e, g, h };
            }
        }
        GeometricVerdict::Irreducible
    }

    pub fn factor(&self, f: &Form<u32>) -> FactorizationReport {
        let base = self.is_reducible_over(f);
        let geometric = if !self.is_geometric() {
            None
        } else if matches!(base, BaseVerdict::Reducible { .. }) {
            Some(GeometricVerdict::ReducibleOverBase)
        } else {
            Some(self.is_geometrically_reducible(f))
        };
        FactorizationReport { form: f.clone(), base, geometric }
    }

    /// `g * h` over the field in which the split was found.
    pub fn multiply(&self, e: Option<usize>, g: &Form<u32>, h: &Form<u32>) -> Form<u32> {
        let field = match e {
            None => &self.base.field,
            Some(e) => &self.extensions.iter().find(|(x, _)| *x == e).expect("known extension").1.field,
        };
        mul_forms(field, &self.index, g, h)
    }

    /// `|{P ∈ P^n(F_q) : f(P) = 0}|`.
    pub fn count_points(&self, f: &Form<u32>) -> u128 {
        let field = &self.base.field;
        self.points.iter().filter(|v| dot(field, &f.coeffs, v) == 0).count() as u128
    }

    pub fn class_count(&self) -> u128 {
        class_count(self.params.q, self.params.m).expect("census size fits u128")
    }

    pub fn form_at(&self, class: u128) -> Form<u32> {
        let p = self.params;
        Form { n: p.n, d: p.d, coeffs: class_vector(&self.base.field, p.m, class) }
    }

    /// Classifies the scalar classes `range.start..range.end`.
    pub fn census_range(&self, start: u128, end: u128) -> CensusTally {
        let mut t = CensusTally::default();
        for class in start..end {
            let f = self.form_at(class);
            t.classes += 1;
            t.degree_sum += self.params.d as u128;
            let points = self.count_points(&f);
            *t.histogram.entry(points).or_default() += 1;
            match self.split_over_base(&f) {
                Some((g, h)) => {
                    t.reducible += 1;
                    *t.min_factor_degree.entry(g.d).or_default() += 1;
                    if self.multiply(None, &g, &h) != f {
                        t.audit_failures += 1;
                    }
                }
                None if self.is_geometric() => match self.is_geometrically_reducible(&f) {
                    GeometricVerdict::Reducible { e, g, h } => {
                        t.irreducible_geom_reducible += 1;
                        *t.splitting_degree.entry(e).or_default() += 1;
                        if self.multiply(Some(e), &g, &h) != f {
                            t.audit_failures += 1;
                        }
                    }
                    _ => {
                        t.geom_irreducible += 1;
                        *t.histogram_geom_irreducible.entry(points).or_default() += 1;
                    }
                },
                None => t.irreducible += 1,
            }
        }
        t
    }

    pub fn census(&self, budget: u128) -> Result<CensusReport> {
        let total = self.class_count();
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        CensusReport::new(self.params, self.is_geometric(), self.census_range(0, total))
    }
}

/// Exact counts over a range of scalar classes; ranges merge by addition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTally {
    pub classes: u128,
    pub reducible: u128,
    /// Irreducible over `F_q`, geometric verdict not computed.
    pub irreducible: u128,
    pub irreducible_geom_reducible: u128,
    pub geom_irreducible: u128,
    /// Reducible classes by the smallest degree of an `F_q`-factor.
    pub min_factor_degree: BTreeMap<usize, u128>,
    /// Geometrically reducible classes by the smallest splitting `e`.
    pub splitting_degree: BTreeMap<usize, u128>,
    /// `|X(F_q)|` → number of classes.
    pub histogram: BTreeMap<u128, u128>,
    pub histogram_geom_irreducible: BTreeMap<u128, u128>,
    pub degree_sum: u128,
    pub audit_failures: u128,
}

fn merge_map<K: Ord + Clone>(a: &mut BTreeMap<K, u128>, b: &BTreeMap<K, u128>) {
    for (k, v) in b {
        *a.entry(k.clone()).or_default() += v;
    }
}

impl CensusTally {
    pub fn merge(&mut self, other: &CensusTally) {
        self.classes += other.classes;
        self.reducible += other.reducible;
        self.irreducible += other.irreducible;
        self.irreducible_geom_reducible += other.irreducible_geom_reducible;
        self.geom_irreducible += other.geom_irreducible;
        merge_map(&mut self.min_factor_degree, &other.min_factor_degree);
        merge_map(&mut self.splitting_degree, &other.splitting_degree);
        merge_map(&mut self.histogram, &other.histogram);
        merge_map(&mut self.histogram_geom_irreducible, &other.histogram_geom_irreducible);
        self.degree_sum += other.degree_sum;
        self.audit_failures += other.audit_failures;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub params: ParamSet,
    pub geometric: bool,
    pub total: u128,
    pub tally: CensusTally,
    pub t1: BigRational,
    pub t2: Option<BigRational>,
    pub t: Option<BigRational>,
    pub u1: BigRational,
    pub u2: BigRational,
    pub t1_within_u1: bool,
    pub t2_within_u2: Option<bool>,
    /// Classes sum to the total and the degree sum is `d * total`.
    pub conserved: bool,
}

fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn powersum_rational(s: &PowerSum) -> BigRational {
    s.to_rational().expect("census-scale sums have integer exponents")
}

impl CensusReport {
    pub fn new(params: ParamSet, geometric: bool, tally: CensusTally) -> Result<Self> {
        let total = class_count(params.q, params.m).ok_or(Error::RangeError("census size exceeds u128"))?;
        let t1 = ratio(tally.reducible, total);
        let t2 = geometric.then(|| ratio(tally.irreducible_geom_reducible, total));
        let t = t2.as_ref().map(|t2| &t1 + t2);
        let (n, d, q) = (params.n as u64, params.d as u64, params.q as u64);
        let u1 = powersum_rational(&bounds::u1(n, d, q)?);
        let u2 = powersum_rational(&bounds::u2(n, d, q)?);
        let t1_within_u1 = t1 <= u1;
        let t2_within_u2 = t2.as_ref().map(|t2| *t2 <= u2);
        let counted = tally.reducible + tally.irreducible + tally.irreducible_geom_reducible + tally.geom_irreducible;
        let conserved = tally.classes == total
            && counted == total
            && tally.degree_sum == params.d as u128 * total
            && tally.histogram.values().sum::<u128>() == total;
        Ok(CensusReport { params, geometric, total, tally, t1, t2, t, u1, u2, t1_within_u1, t2_within_u2, conserved })
    }

    pub fn passed(&self) -> bool {
        self.conserved && self.tally.audit_failures == 0 && self.t1_within_u1 && self.t2_within_u2 != Some(false)
    }
}

fn geometric_sum(q: &BigInt, terms: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for _ in 0..terms {
        acc += &pw;
        pw *= q;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub bound: BigInt,
    pub max_points: u128,
    pub attainers: u128,
    pub violations: u128,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `|X(F_Q)| <= d Q^{n-1} + Q^{n-2} + … + 1` over the whole census.
pub fn check_serre(report: &CensusReport) -> SerreReport {
    let p = report.params;
    let q = BigInt::from(p.q);
    let bound = BigInt::from(p.d) * num_traits::pow(q.clone(), p.n - 1) + geometric_sum(&q, p.n - 1);
    let max_points = report.tally.histogram.keys().next_back().copied().unwrap_or(0);
    let attainers = report.tally.histogram.iter().filter(|(k, _)| BigInt::from(**k) == bound).map(|(_, v)| v).sum();
    let violations = report.tally.histogram.iter().filter(|(k, _)| BigInt::from(**k) > bound).map(|(_, v)| v).sum();
    SerreReport { bound, max_points, attainers, violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CafureMateraReport {
    /// Right-hand side with `d^{13/3}` replaced by the rational minorant.
    pub bound: PowerSum,
    pub d_13_3_minorant: BigRational,
    pub checked: u128,
    pub max_points: Option<u128>,
    pub violations: u128,
}

impl CafureMateraReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `|X(F_Q)| <= (Q^{n-1} + … + 1) + (d-1)(d-2) Q^{n-3/2} + 5 d^{13/3} Q^{n-2}`
/// for the geometrically irreducible members. Replacing `d^{13/3}` by a
/// smaller rational keeps the comparison sufficient.
pub fn check_cafure_matera(report: &CensusReport) -> Result<CafureMateraReport> {
    if !report.geometric {
        return Err(Error::HypothesisViolated("geometric verdicts were not computed"));
    }
    let p = report.params;
    let (n, d) = (p.n as i64, p.d as u64);
    let minorant = bounds::cube_root_power_minorant(d, 13);
    let mut bound = PowerSum::new(p.q as u64);
    for k in 0..n {
        bound.add_term(4 * k, BigRational::one());
    }
    let dd = BigInt::from(d);
    bound.add_term(4 * n - 6, BigRational::from_integer((&dd - 1u32) * (&dd - 2u32)));
    bound.add_term(4 * n - 8, minorant.clone() * BigRational::from_integer(BigInt::from(5)));
    let mut violations = 0;
    for (&points, &count) in &report.tally.histogram_geom_irreducible {
        let mut slack = bound.clone();
        slack.add_term(0, -BigRational::from_integer(BigInt::from(points)));
        if slack.sign()? == Sign::Negative {
            violations += count;
        }
    }
    Ok(CafureMateraReport {
        bound,
        d_13_3_minorant: minorant,
        checked: report.tally.geom_irreducible,
        max_points: report.tally.histogram_geom_irreducible.keys().next_back().copied(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceFillingReport {
    pub rational_points: u128,
    pub space_filling_members: u128,
    /// `d <= q`: no member may cover `P^n(F_q)`.
    pub expected_none: bool,
}

impl SpaceFillingReport {
    pub fn passed(&self) -> bool {
        !self.expected_none || self.space_filling_members == 0
    }
}

pub fn check_space_filling(report: &CensusReport) -> SpaceFillingReport {
    let p = report.params;
    let rational_points = point_count(p.q, p.n).expect("fits");
    let space_filling_members = report.tally.histogram.get(&rational_points).copied().unwrap_or(0);
    SpaceFillingReport { rational_points, space_filling_members, expected_none: p.d as u128 <= p.q }
}

/// `x_0 x_1 ∏_{c ∈ F_q^*} (x_0 - c x_1)`, of degree `q + 1`, which vanishes
/// on all of `P^1(F_q)`.
pub fn space_filling_binary_form(field: &SmallField) -> Form<u32> {
    let q = field.order() as usize;
    let index = MonomialIndex::new(1, q + 1);
    let mut f = Form::monomial(field, 1, 1, 0);
    f = mul_forms(field, &index, &f, &Form::monomial(field, 1, 1, 1));
    for c in 1..q as u32 {
        let line = Form { n: 1, d: 1, coeffs: alloc::vec![1, field.neg(&c)] };
        f = mul_forms(field, &index, &f, &line);
    }
    f
}

/// `d (Q^{m-1} + … + 1)` against `Q^m - 1`.
pub fn degree_of_union(params: &ParamSet) -> BigUint {
    let q = BigUint::from(params.q);
    let mut acc = BigUint::zero();
    let mut pw = BigUint::one();
    for _ in 0..params.m {
        acc += &pw;
        pw *= &q;
    }
    acc * params.d
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_factorizations() {
        let ctx = FactorContext::new(2, 2, 3, true).unwrap();
        // x0 * (x0 + x1) = x0^2 + x0 x1
        let f = Form::new(2, 2, vec![1, 1, 0, 0, 0, 0]).unwrap();
        match ctx.is_reducible_over(&f) {
            BaseVerdict::Reducible { g, h } => assert_eq!(ctx.multiply(None, &g, &h), f),
            BaseVerdict::Irreducible => panic!("reducible"),
        }
        let conic = Form::new(2, 2, vec![0, 1, 0, 0, 0, 2]).unwrap();
        assert_eq!(ctx.is_reducible_over(&conic), BaseVerdict::Irreducible);
        assert_eq!(ctx.is_geometrically_reducible(&conic), GeometricVerdict::Irreducible);
        let sum_sq = Form::new(2, 2, vec![1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(ctx.is_reducible_over(&sum_sq), BaseVerdict::Irreducible);
        assert!(matches!(ctx.is_geometrically_reducible(&sum_sq), GeometricVerdict::Reducible { e: 2, .. }));
    }

    #[test]
    fn point_counts() {
        let ctx = FactorContext::new(2, 2, 3, false).unwrap();
        let double_line = Form::new(2, 2, vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(ctx.count_points(&double_line), 4);
        let conic = Form::new(2, 2, vec![0, 0, 1, 2, 0, 0]).unwrap();
        assert_eq!(ctx.count_points(&conic), 4);
        let lines = FactorContext::new(2, 1, 5, false).unwrap();
        assert_eq!(lines.count_points(&Form::new(2, 1, vec![1, 2, 3]).unwrap()), 6);
    }

    #[test]
    fn census_two_two_three() {
        let ctx = FactorContext::new(2, 2, 3, true).unwrap();
        let r = ctx.census(1000).unwrap();
        assert_eq!(r.total, 364);
        assert_eq!(r.tally.reducible, 91);
        assert_eq!(r.tally.irreducible_geom_reducible, 39);
        assert!(r.passed());
        let serre = check_serre(&r);
        assert_eq!(serre.bound, BigInt::from(7));
        assert_eq!(serre.max_points, 7);
        assert!(check_cafure_matera(&r).unwrap().passed());
        assert_eq!(check_space_filling(&r).space_filling_members, 0);
    }

    #[test]
    fn split_census_merges_to_whole() {
        let ctx = FactorContext::new(2, 2, 2, true).unwrap();
        let whole = ctx.census_range(0, 63);
        let mut parts = ctx.census_range(0, 20);
        parts.merge(&ctx.census_range(20, 50));
        parts.merge(&ctx.census_range(50, 63));
        assert_eq!(whole, parts);
    }

    #[test]
    fn binary_form_covers_line() {
        let t = FieldTower::prime(5).unwrap();
        let f5 = SmallField::from_tower(&t, 0).unwrap();
        let f = space_filling_binary_form(&f5);
        assert_eq!(f.d, 6);
        for i in 0..6 {
            let p = point_from_index(&f5, 1, i);
            assert_eq!(crate::forms::eval_form(&f5, &f, p.coords()).unwrap(), 0);
        }
    }
}
