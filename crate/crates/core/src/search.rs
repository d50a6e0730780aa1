//! Searching for free points and replaying the six hard-coded witnesses.

use alloc::vec;
use alloc::vec::Vec;

use crate::binomial_usize;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::forms::{point_count, point_from_index, ProjectivePoint};
use crate::orbit::{OrbitCertificate, OrbitContext};
use crate::rng;
use crate::tower::{FieldElement, FieldTower, LevelSpec};

/// A point `(a^{e_0} : … : a^{e_n})` in `F_q[a]/(μ)` claimed free for
/// degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCase {
    pub n: usize,
    pub q: u64,
    pub d: usize,
    pub p: u64,
    /// Levels up to and including `F_q`, then the extension of degree `m`.
    pub levels: Vec<LevelSpec>,
    pub exponents: Vec<u64>,
}

impl WitnessCase {
    pub fn tower(&self) -> Result<FieldTower> {
        FieldTower::new(self.p, &self.levels)
    }

    /// Tower level of `F_q`.
    pub fn base_level(&self) -> usize {
        self.levels.len() - 1
    }
}

fn modulus(degree: usize, terms: &[(usize, u128)]) -> LevelSpec {
    let mut m = vec![0u128; degree + 1];
    for &(e, c) in terms {
        m[e] = c;
    }
    LevelSpec { degree, modulus: m }
}

/// `F_4 = F_2[w]/(w^2 + w + 1)`.
fn f4_level() -> LevelSpec {
    modulus(2, &[(0, 1), (1, 1), (2, 1)])
}

/// The six exceptional parameter triples `(n, q, d)` with their moduli and
/// points.
pub fn builtin_cases() -> Vec<WitnessCase> {
    vec![
        WitnessCase {
            n: 2,
            q: 3,
            d: 3,
            p: 3,
            levels: vec![modulus(10, &[(10, 1), (4, 1), (1, 1), (0, 1)])],
            exponents: vec![1, 8, 0],
        },
        WitnessCase {
            n: 2,
            q: 3,
            d: 4,
            p: 3,
            levels: vec![modulus(15, &[(15, 1), (2, 1), (0, 2)])],
            exponents: vec![1, 9, 0],
        },
        WitnessCase {
            n: 2,
            q: 3,
            d: 5,
            p: 3,
            levels: vec![modulus(21, &[(21, 1), (16, 1), (0, 2)])],
            exponents: vec![1, 18, 0],
        },
        WitnessCase {
            n: 2,
            q: 4,
            d: 4,
            p: 2,
            levels: vec![f4_level(), modulus(15, &[(15, 1), (1, 1), (0, 1)])],
            exponents: vec![3, 8, 0],
        },
        WitnessCase {
            n: 2,
            q: 4,
            d: 5,
            p: 2,
            levels: vec![f4_level(), modulus(21, &[(21, 1), (2, 1), (0, 1)])],
            exponents: vec![6, 11, 0],
        },
        WitnessCase {
            n: 2,
            q: 5,
            d: 5,
            p: 5,
            levels: vec![modulus(21, &[(21, 1), (18, 1), (14, 1), (0, 1)])],
            exponents: vec![1, 9, 0],
        },
    ]
}

/// `(a^{e_0} : … : a^{e_n})` with `a` the generator of the top level.
pub fn point_from_exponents(tower: &FieldTower, exponents: &[u64]) -> Result<ProjectivePoint<FieldElement>> {
    let top = tower.top_level();
    let a = tower.generator(top);
    let coords: Vec<FieldElement> = exponents.iter().map(|&e| tower.pow(&a, e as u128)).collect();
    ProjectivePoint::new(&tower.view(top), coords).ok_or(Error::RangeError("point has all coordinates zero"))
}

/// Certifies a point of `P^n(F_{q^m})` given by generator exponents.
pub fn verify_point(
    tower: &FieldTower,
    base_level: usize,
    d: usize,
    exponents: &[u64],
) -> Result<OrbitCertificate<FieldElement>> {
    let top = tower.top_level();
    let view = tower.view(top);
    let ctx = OrbitContext::new(&view, tower, top, base_level)?;
    let point = point_from_exponents(tower, exponents)?;
    ctx.is_free_point(&point, d)
}

pub fn verify_witness(case: &WitnessCase) -> Result<OrbitCertificate<FieldElement>> {
    let tower = case.tower()?;
    if tower.order(case.base_level()) != case.q as u128 {
        return Err(Error::TowerMismatch);
    }
    verify_point(&tower, case.base_level(), case.d, &case.exponents)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every point of `P^n(E)` in index order.
    Exhaustive,
    /// `(a^{e_0} : … : a^{e_{n-1}} : 1)`, exponents `0..=max_exponent`,
    /// `e_0` most significant.
    Sweep,
    /// `(r_0 : … : r_{n-1} : 1)` with counter-based random coordinates.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub seed: u64,
    pub budget: u128,
    pub max_exponent: u64,
}

pub const DEFAULT_BUDGET: u128 = 1_000_000;
pub const DEFAULT_MAX_EXPONENT: u64 = 64;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { strategy: Strategy::Sweep, seed: 0, budget: DEFAULT_BUDGET, max_exponent: DEFAULT_MAX_EXPONENT }
    }
}

/// Random-access candidate sequence for one search.
pub struct Searcher<'c, 'a, F: FiniteField> {
    ctx: &'c OrbitContext<'a, F>,
    n: usize,
    d: usize,
    config: SearchConfig,
    generator: F::Elem,
}

impl<'c, 'a, F: FiniteField> Searcher<'c, 'a, F> {
    /// `generator` is the element `a` used by the sweep.
    pub fn new(ctx: &'c OrbitContext<'a, F>, n: usize, d: usize, config: SearchConfig, generator: F::Elem) -> Result<Self> {
        let m = binomial_usize(n + d, n)?;
        if m != ctx.degree() {
            return Err(Error::DegreeMismatch { expected: m, found: ctx.degree() });
        }
        Ok(Searcher { ctx, n, d, config, generator })
    }

    /// Size of the full candidate space (`u128::MAX` if unbounded).
    pub fn space_size(&self) -> u128 {
        let q = self.ctx.field().order();
        match self.config.strategy {
            Strategy::Exhaustive => point_count(q, self.n).unwrap_or(u128::MAX),
            Strategy::Sweep => (self.config.max_exponent as u128 + 1).checked_pow(self.n as u32).unwrap_or(u128::MAX),
            Strategy::Random => u128::MAX,
        }
    }

    /// Number of candidates examined: the space, capped by the budget.
    pub fn candidate_count(&self) -> u128 {
        self.space_size().min(self.config.budget)
    }

    pub fn candidate_at(&self, i: u128) -> ProjectivePoint<F::Elem> {
        let field = self.ctx.field();
        match self.config.strategy {
            Strategy::Exhaustive => point_from_index(field, self.n, i),
            Strategy::Sweep => {
                let radix = self.config.max_exponent as u128 + 1;
                let mut coords = vec![field.one(); self.n + 1];
                let mut rest = i;
                for slot in coords[..self.n].iter_mut().rev() {
                    *slot = field.pow(&self.generator, rest % radix);
                    rest /= radix;
                }
                ProjectivePoint::new(field, coords).expect("last coordinate is one")
            }
            Strategy::Random => {
                let q = field.order();
                let mut coords = vec![field.one(); self.n + 1];
                for (j, slot) in coords[..self.n].iter_mut().enumerate() {
                    let counter = (i as u64).wrapping_mul(self.n as u64).wrapping_add(j as u64);
                    *slot = field.element(rng::draw_below(self.config.seed, counter, q));
                }
                ProjectivePoint::new(field, coords).expect("last coordinate is one")
            }
        }
    }

    pub fn check(&self, i: u128) -> Result<OrbitCertificate<F::Elem>> {
        self.ctx.is_free_point(&self.candidate_at(i), self.d)
    }

    /// First free candidate in canonical order.
    pub fn find(&self) -> Result<(u128, OrbitCertificate<F::Elem>)> {
        let count = self.candidate_count();
        for i in 0..count {
            let cert = self.check(i)?;
            if cert.is_free() {
                return Ok((i, cert));
            }
        }
        Err(Error::Exhausted { checked: count, complete: self.covers_all_points() })
    }

    /// Whether the candidates examined are every point of `P^n(E)`.
    pub fn covers_all_points(&self) -> bool {
        self.config.strategy == Strategy::Exhaustive && self.candidate_count() == self.space_size()
    }
}

/// Outcome of an exhaustive scan (meant for `q = 2`, where no theorem
/// guarantees existence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCount<E> {
    pub n: usize,
    pub d: usize,
    pub checked: u128,
    pub total: u128,
    pub free: u128,
    pub first_free: Option<ProjectivePoint<E>>,
}

impl<E> FreeCount<E> {
    /// Definitive only when every point was examined.
    pub fn exists(&self) -> Option<bool> {
        if self.free > 0 {
            Some(true)
        } else if self.checked == self.total {
            Some(false)
        } else {
            None
        }
    }
}

/// Counts free points of `P^n(E)` over the whole space (up to `budget`).
pub fn count_free_points<F: FiniteField>(
    ctx: &OrbitContext<'_, F>,
    n: usize,
    d: usize,
    budget: u128,
) -> Result<FreeCount<F::Elem>> {
    let total = point_count(ctx.field().order(), n).unwrap_or(u128::MAX);
    let checked = total.min(budget);
    let mut free = 0;
    let mut first_free = None;
    for i in 0..checked {
        let p = point_from_index(ctx.field(), n, i);
        if ctx.is_free_point(&p, d)?.is_free() {
            free += 1;
            if first_free.is_none() {
                first_free = Some(p);
            }
        }
    }
    Ok(FreeCount { n, d, checked, total, free, first_free })
}

/// Exhaustive free-point scan over `F_{2^m}`; the result is evidence only.
pub fn search_q2<F: FiniteField>(
    ctx: &OrbitContext<'_, F>,
    n: usize,
    d: usize,
    budget: u128,
) -> Result<FreeCount<F::Elem>> {
    if ctx.base().order() != 2 {
        return Err(Error::HypothesisViolated("search_q2 needs base field F_2"));
    }
    count_free_points(ctx, n, d, budget)
}
