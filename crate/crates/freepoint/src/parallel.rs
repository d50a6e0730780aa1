//! Rayon drivers. Work is cut into fixed-size chunks independent of the
//! thread count and results are merged in chunk order, so outputs do not
//! depend on scheduling.

use rayon::prelude::*;

use freepoint_core::factor::{CensusReport, CensusTally, FactorContext};
use freepoint_core::field::FiniteField;
use freepoint_core::forms::{point_count, point_from_index, ProjectivePoint};
use freepoint_core::linsys::{MemberTally, MemberVerifier};
use freepoint_core::orbit::{OrbitCertificate, OrbitContext};
use freepoint_core::search::{FreeCount, Searcher};
use freepoint_core::{Error, Result};

pub const CHUNK: u128 = 1024;

fn chunks(total: u128, chunk: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        out.push((start, end));
        start = end;
    }
    out
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

pub fn census(ctx: &FactorContext, budget: u128) -> Result<CensusReport> {
    let total = ctx.class_count();
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let parts: Vec<CensusTally> = chunks(total, CHUNK).into_par_iter().map(|(a, b)| ctx.census_range(a, b)).collect();
    let mut tally = CensusTally::default();
    for p in &parts {
        tally.merge(p);
    }
    CensusReport::new(ctx.params(), ctx.is_geometric(), tally)
}

pub fn members(v: &MemberVerifier<'_>) -> MemberTally {
    let parts: Vec<MemberTally> =
        chunks(v.member_count(), CHUNK).into_par_iter().map(|(a, b)| v.tally_range(a, b)).collect();
    let mut tally = MemberTally::default();
    for p in &parts {
        tally.merge(p);
    }
    tally
}

/// First free candidate in search order; blocks are scanned in order and
/// the smallest free index of the first block holding one wins.
pub fn find_free<F>(s: &Searcher<'_, '_, F>) -> Result<(u128, OrbitCertificate<F::Elem>)>
where
    F: FiniteField + Sync,
    F::Elem: Send + Sync,
{
    let count = s.candidate_count();
    for (a, b) in chunks(count, CHUNK) {
        let hit = (a..b)
            .into_par_iter()
            .map(|i| s.check(i).map(|c| (i, c)))
            .filter(|r| r.as_ref().map_or(true, |(_, c)| c.is_free()))
            .min_by_key(|r| r.as_ref().map_or(0, |(i, _)| *i));
        if let Some(r) = hit {
            return r;
        }
    }
    Err(Error::Exhausted { checked: count, complete: s.covers_all_points() })
}

pub fn count_free<F>(ctx: &OrbitContext<'_, F>, n: usize, d: usize, budget: u128) -> Result<FreeCount<F::Elem>>
where
    F: FiniteField + Sync,
    F::Elem: Send + Sync,
{
    let field = ctx.field();
    let total = point_count(field.order(), n).unwrap_or(u128::MAX);
    let checked = total.min(budget);
    let parts: Vec<Result<(u128, Option<ProjectivePoint<F::Elem>>)>> = chunks(checked, CHUNK)
        .into_par_iter()
        .map(|(a, b)| {
            let mut free = 0;
            let mut first = None;
            for i in a..b {
                let p = point_from_index(field, n, i);
                if ctx.is_free_point(&p, d)?.is_free() {
                    free += 1;
                    first.get_or_insert(p);
                }
            }
            Ok((free, first))
        })
        .collect();
    let mut free = 0;
    let mut first_free = None;
    for part in parts {
        let (f, first) = part?;
        free += f;
        if first_free.is_none() {
            first_free = first;
        }
    }
    Ok(FreeCount { n, d, checked, total, free, first_free })
}
