//! One function per subcommand, each returning a JSON payload and whether
//! a check that must hold has failed.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use freepoint_core::bounds::{self, BoundsReport, ClaimReport};
use freepoint_core::factor::{
    check_cafure_matera, check_serre, check_space_filling, degree_of_union, CensusReport, FactorContext,
};
use freepoint_core::field::FiniteField;
use freepoint_core::forms::ProjectivePoint;
use freepoint_core::linsys::{
    self, build_l_irr, build_l_red, coordinate_hyperplane, intersection_dimension, intersection_member,
    reducible_locus_counts, Expectation, LinearSystem, MemberVerifier, SystemKind,
};
use freepoint_core::orbit::{OrbitCertificate, OrbitContext};
use freepoint_core::search::{builtin_cases, verify_witness, SearchConfig, Searcher};
use freepoint_core::{binomial_usize, Error, FieldTower, ParamSet, SmallField};

use crate::fixtures::{self, CASE_COUNT};
use crate::json::{self, rational, strategy_name, SystemDto, TowerDto};
use crate::parallel;
use crate::Failure;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    pub counterexample: bool,
    pub fixture_hashes: BTreeMap<String, String>,
}

impl Outcome {
    fn new(payload: Value, counterexample: bool) -> Self {
        Outcome { payload, counterexample, fixture_hashes: BTreeMap::new() }
    }
}

fn indices<F: FiniteField>(field: &F, xs: &[F::Elem]) -> Vec<String> {
    xs.iter().map(|x| field.index_of(x).to_string()).collect()
}

/// `all` or a single 1-based case number.
pub fn parse_cases(s: &str) -> Result<Vec<usize>, Failure> {
    if s == "all" {
        return Ok((1..=CASE_COUNT).collect());
    }
    match s.parse::<usize>() {
        Ok(k) if (1..=CASE_COUNT).contains(&k) => Ok(vec![k]),
        _ => Err(Failure::input(format!("--case must be all or 1..={CASE_COUNT}, got {s:?}"))),
    }
}

pub fn verify_exceptional(cases: &[usize], dir: Option<&Path>) -> Result<Outcome, Failure> {
    let mut results = Vec::new();
    let mut hashes = BTreeMap::new();
    let mut all_free = true;
    for &k in cases {
        let (fixture, hash) = fixtures::load(dir, k)?;
        hashes.insert(format!("case{k}.json"), hash);
        let case = fixture.to_case();
        let tower = fixture.tower.build()?;
        let cert = verify_witness(&case)?;
        let top = tower.top_level();
        let view = tower.view(top);
        let ctx = OrbitContext::new(&view, &tower, top, case.base_level())?;
        let matrix = ctx.monomial_value_matrix(&cert.point, case.d)?;
        all_free &= cert.is_free();
        results.push(json!({
            "case": k,
            "n": case.n,
            "q": case.q,
            "d": case.d,
            "m": binomial_usize(case.n + case.d, case.n)?,
            "tower": fixture.tower,
            "point_exponents": case.exponents,
            "point": indices(&view, cert.point.coords()),
            "verdict": if cert.is_free() { "free" } else { "lies_on_hypersurface" },
            "rank": cert.rank,
            "determinant": matrix.determinant,
            "witness_form": cert.witness.as_ref().map(json::form),
        }));
    }
    let mut out = Outcome::new(json!({ "cases": results, "all_free": all_free }), !all_free);
    out.fixture_hashes = hashes;
    Ok(out)
}

fn certificate<F: FiniteField>(field: &F, index: u128, cert: &OrbitCertificate<F::Elem>) -> Value {
    json!({
        "candidate": index.to_string(),
        "point": indices(field, cert.point.coords()),
        "rank": cert.rank,
        "verdict": if cert.is_free() { "free" } else { "lies_on_hypersurface" },
    })
}

fn point_value<F: FiniteField>(field: &F, p: &Option<ProjectivePoint<F::Elem>>) -> Value {
    p.as_ref().map_or(Value::Null, |p| json!(indices(field, p.coords())))
}

fn search_in<F>(field: &F, tower: &FieldTower, n: usize, d: usize, config: SearchConfig, count: bool) -> Result<Value, Failure>
where
    F: FiniteField + Sync,
    F::Elem: Send + Sync,
{
    let top = tower.top_level();
    let ctx = OrbitContext::new(field, tower, top, top - 1)?;
    if count {
        let c = parallel::count_free(&ctx, n, d, config.budget)?;
        return Ok(json!({
            "mode": "count",
            "checked": c.checked.to_string(),
            "total": c.total.to_string(),
            "free": c.free.to_string(),
            "first_free": point_value(field, &c.first_free),
            "exists": c.exists(),
        }));
    }
    let a = field.element(tower.index_of(&tower.generator(top)));
    let searcher = Searcher::new(&ctx, n, d, config, a)?;
    match parallel::find_free(&searcher) {
        Ok((i, cert)) => Ok(json!({ "mode": "find", "found": true, "certificate": certificate(field, i, &cert) })),
        Err(Error::Exhausted { checked, complete }) if ctx.base().order() == 2 => Ok(json!({
            "mode": "find",
            "found": false,
            "checked": checked.to_string(),
            "complete": complete,
        })),
        Err(e) => Err(e.into()),
    }
}

/// Tower for `F_{q^m}` when none is given: the witness tower of a
/// matching built-in case, otherwise the first primitive modulus.
pub fn default_search_tower(params: ParamSet) -> Result<(FieldTower, &'static str), Failure> {
    let (n, d, q) = (params.n, params.d, params.q);
    match builtin_cases().into_iter().find(|c| c.n == n && c.d == d && c.q as u128 == q) {
        Some(case) => Ok((case.tower()?, "witness")),
        None => Ok((FieldTower::for_order(q)?.extend_primitive(params.m)?, "primitive")),
    }
}

pub fn read_tower(path: &Path) -> Result<FieldTower, Failure> {
    let dto: TowerDto = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    dto.build()
}

/// Searches `P^n(F_{q^m})`; `count` scans every point instead.
pub fn find_free_point(
    n: usize,
    d: usize,
    q: u128,
    config: SearchConfig,
    count: bool,
    tower: Option<FieldTower>,
) -> Result<Outcome, Failure> {
    let params = ParamSet::new(n, d, q)?;
    let (tower, source) = match tower {
        Some(t) => (t, "file"),
        None => default_search_tower(params)?,
    };
    let top = tower.top_level();
    let m_ok = tower.relative_degree(top, top.saturating_sub(1)).ok() == Some(params.m);
    if top == 0 || tower.order(top - 1) != q || !m_ok {
        return Err(Failure::input(format!("tower must end with F_{q} and a level of degree {}", params.m)));
    }
    let body = match SmallField::from_tower(&tower, top) {
        Ok(f) => search_in(&f, &tower, n, d, config, count)?,
        Err(Error::FieldTooLarge { .. }) => search_in(&tower.view(top), &tower, n, d, config, count)?,
        Err(e) => return Err(e.into()),
    };
    let payload = json!({
        "n": n, "d": d, "q": q.to_string(), "m": params.m,
        "tower": TowerDto::from_tower(&tower),
        "tower_source": source,
        "strategy": strategy_name(config.strategy),
        "seed": config.seed,
        "budget": config.budget.to_string(),
        "max_exponent": config.max_exponent,
        "result": body,
    });
    Ok(Outcome::new(payload, false))
}

pub fn census_payload(report: &CensusReport) -> Result<(Value, bool), Failure> {
    let t = &report.tally;
    let serre = check_serre(report);
    let sf = check_space_filling(report);
    let cm = if report.geometric { Some(check_cafure_matera(report)?) } else { None };
    let passed = report.passed() && serre.passed() && sf.passed() && cm.as_ref().map_or(true, |c| c.passed());
    let p = report.params;
    let opt_rat = |r: &Option<num_rational::BigRational>| r.as_ref().map_or(Value::Null, rational);
    let payload = json!({
        "n": p.n, "d": p.d, "q": p.q.to_string(), "m": p.m,
        "geometric": report.geometric,
        "total": report.total.to_string(),
        "counts": {
            "reducible": t.reducible.to_string(),
            "irreducible": t.irreducible.to_string(),
            "irreducible_geom_reducible": t.irreducible_geom_reducible.to_string(),
            "geom_irreducible": t.geom_irreducible.to_string(),
        },
        "t1": rational(&report.t1),
        "t2": opt_rat(&report.t2),
        "t": opt_rat(&report.t),
        "u1": rational(&report.u1),
        "u2": rational(&report.u2),
        "t1_within_u1": report.t1_within_u1,
        "t2_within_u2": report.t2_within_u2,
        "conserved": report.conserved,
        "audit_failures": t.audit_failures.to_string(),
        "min_factor_degree": json::histogram(&t.min_factor_degree),
        "splitting_degree": json::histogram(&t.splitting_degree),
        "point_histogram": json::histogram(&t.histogram),
        "serre": {
            "bound": serre.bound.to_string(),
            "max_points": serre.max_points.to_string(),
            "attainers": serre.attainers.to_string(),
            "violations": serre.violations.to_string(),
        },
        "cafure_matera": cm.as_ref().map(|c| json!({
            "bound": json::power_sum(&c.bound),
            "d_13_3_minorant": rational(&c.d_13_3_minorant),
            "checked": c.checked.to_string(),
            "max_points": c.max_points.map(|x| x.to_string()),
            "violations": c.violations.to_string(),
        })),
        "space_filling": {
            "rational_points": sf.rational_points.to_string(),
            "members": sf.space_filling_members.to_string(),
            "expected_none": sf.expected_none,
        },
        "degree_of_union": degree_of_union(&p).to_string(),
        "passed": passed,
    });
    Ok((payload, !passed))
}

pub fn census(n: usize, d: usize, q: u128, geometric: bool, budget: u128) -> Result<Outcome, Failure> {
    let ctx = FactorContext::new(n, d, q, geometric)?;
    let report = parallel::census(&ctx, budget)?;
    let (payload, bad) = census_payload(&report)?;
    Ok(Outcome::new(payload, bad))
}

/// `a:b` (inclusive) or `a,b,c`.
pub fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::input(format!("bad range {s:?}; use a:b or a,b,c"));
    if let Some((a, b)) = s.split_once(':') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn checks_value(checks: &[bounds::Check]) -> Vec<Value> {
    checks.iter().map(json::check).collect()
}

fn lemma_report_value(r: &BoundsReport) -> Value {
    let opt = |s: &Option<bounds::PowerSum>| s.as_ref().map(json::power_sum);
    json!({
        "n_values": r.n_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "m_values": r.m_values.iter().map(|(e, x)| json!({ "e": e, "value": x.to_string() })).collect::<Vec<_>>(),
        "u1": json::power_sum(&r.u1),
        "u2": json::power_sum(&r.u2),
        "v1": opt(&r.v1),
        "v2": opt(&r.v2),
        "theta": opt(&r.theta),
        "psi": opt(&r.psi),
        "step_gaps": r.step_gaps.iter().map(|g| json!({ "i": g.i, "gap": g.gap.to_string(), "terms": g.terms })).collect::<Vec<_>>(),
        "checks": checks_value(&r.checks),
    })
}

fn claim_value(c: &ClaimReport) -> Value {
    json!({
        "m": c.m.to_string(),
        "d_13_3_majorant": rational(&c.d_13_3_majorant),
        "checks": checks_value(&c.checks),
    })
}

/// Every inequality at one point, with all intermediate quantities.
pub fn bounds_point(n: u64, d: u64, q: u64) -> Result<Outcome, Failure> {
    let e = bounds::grid_entry(n, d, q)?;
    let passed = e.passed();
    let payload = json!({
        "n": n, "d": d, "q": q,
        "lemmas": lemma_report_value(&e.lemmas),
        "claim": claim_value(&e.claim),
        "passed": passed,
    });
    Ok(Outcome::new(payload, !passed))
}

/// Theta/Psi ranges for the global checks: every `d` of the grid in the
/// plane (`d >= 6`) and space (`d >= 3`) ranges, and the grid's `q`.
pub fn bounds_grid(ns: &[u64], ds: &[u64], qs: &[u64], detail: bool) -> Result<Outcome, Failure> {
    let points = bounds::grid_points(ns, ds, qs);
    let entries: Vec<Result<Value, Failure>> = {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|&(n, d, q)| {
                let e = bounds::grid_entry(n, d, q)?;
                let all: Vec<&bounds::Check> = e.lemmas.checks.iter().chain(&e.claim.checks).collect();
                let failures: Vec<Value> = all.iter().filter(|c| !c.passed()).map(|c| json::check(c)).collect();
                let mut v = json!({
                    "n": n, "d": d, "q": q,
                    "checks": all.len(),
                    "failures": failures,
                    "passed": e.passed(),
                });
                if detail {
                    v["lemmas"] = lemma_report_value(&e.lemmas);
                    v["claim"] = claim_value(&e.claim);
                }
                Ok(v)
            })
            .collect()
    };
    let entries = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    let theta_ds: Vec<u64> = ds.iter().copied().filter(|&d| d >= 6).collect();
    let psi_ds: Vec<u64> = ds.iter().copied().filter(|&d| d >= 3).collect();
    let global = bounds::global_checks(&theta_ds, qs, &psi_ds)?;
    let total: u64 = entries.iter().map(|e| e["checks"].as_u64().unwrap_or(0)).sum::<u64>() + global.len() as u64;
    let failed: usize = entries.iter().map(|e| e["failures"].as_array().map_or(0, Vec::len)).sum::<usize>()
        + global.iter().filter(|c| !c.passed()).count();
    let payload = json!({
        "grid": { "n": ns, "d": ds, "q": qs },
        "points": entries,
        "global": checks_value(&global),
        "total_checks": total,
        "failed_checks": failed,
        "passed": failed == 0,
    });
    Ok(Outcome::new(payload, failed != 0))
}

/// `d (q^{m-1} + … + 1) <= q^m - 1`, equality iff `d = q - 1`, for every
/// grid point with `q > d`.
pub fn qd_grid(ns: &[u64], ds: &[u64], qs: &[u64]) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (n, d, q) in bounds::grid_points(ns, ds, qs) {
        if q <= d {
            continue;
        }
        let r = bounds::check_qd_case(n, d, q)?;
        let expected_equality = d + 1 == q;
        let passed = r.passed && r.equality == expected_equality;
        ok &= passed;
        rows.push(json!({
            "n": n, "d": d, "q": q, "m": r.m,
            "union_degree": r.union_degree.to_string(),
            "ceiling": r.ceiling.to_string(),
            "equality": r.equality,
            "passed": passed,
        }));
    }
    Ok(Outcome::new(json!({ "cases": rows, "passed": ok }), !ok))
}

pub fn claim_chain(n: u64, d: u64, q: u64) -> Result<Outcome, Failure> {
    let c = bounds::check_claim_chain(n, d, q)?;
    let passed = c.passed();
    let mut payload = claim_value(&c);
    payload["n"] = json!(n);
    payload["d"] = json!(d);
    payload["q"] = json!(q);
    payload["passed"] = json!(passed);
    Ok(Outcome::new(payload, !passed))
}

fn system_summary(s: &LinearSystem) -> Result<Value, Failure> {
    let p = s.params;
    Ok(json!({
        "n": p.n, "d": p.d, "q": p.q.to_string(), "m": p.m,
        "r": linsys::r_value(p.n, p.d)?,
        "dim": s.dim(),
    }))
}

/// `red` or `irr`. The returned DTO is what `linsys verify` reads back.
pub fn linsys_build(kind: &str, n: usize, d: usize, q: u128, config: SearchConfig) -> Result<Outcome, Failure> {
    let params = ParamSet::new(n, d, q)?;
    let r = linsys::r_value(n, d)? as i64;
    let m = params.m as i64;
    let (system, extra, expected_dim) = match kind {
        "red" => (build_l_red(params, &coordinate_hyperplane(n))?, Value::Null, r - 1),
        "irr" => {
            let (s, space) = build_l_irr(params, config)?;
            let extra = json!({
                "dimension": space.dimension(),
                "lower_bound": space.lower_bound(),
                "vanishes_on_orbit": space.vanishes_on_orbit,
            });
            (s, extra, m - 1 - r)
        }
        _ => return Err(Failure::input(format!("--kind must be red or irr, got {kind:?}"))),
    };
    let dim_ok = system.dim() == expected_dim;
    let orbit_ok = extra.get("vanishes_on_orbit").map_or(true, |v| v == &json!(true));
    let payload = json!({
        "summary": system_summary(&system)?,
        "expected_dim": expected_dim,
        "vanishing_space": extra,
        "system": SystemDto::from_system(&system),
        "passed": dim_ok && orbit_ok,
    });
    Ok(Outcome::new(payload, !(dim_ok && orbit_ok)))
}

/// A bare system file or an envelope written by `linsys build`.
pub fn read_system(path: &Path) -> Result<LinearSystem, Failure> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let inner = v.get("payload").and_then(|p| p.get("system")).cloned().unwrap_or(v);
    let dto: SystemDto = serde_json::from_value(inner)?;
    dto.to_system()
}

pub fn parse_expectation(s: &str) -> Result<Expectation, Failure> {
    match s {
        "reducible" => Ok(Expectation::Reducible),
        "irreducible" => Ok(Expectation::Irreducible),
        _ => Err(Failure::input(format!("--expect must be reducible or irreducible, got {s:?}"))),
    }
}

pub fn linsys_verify(system: &LinearSystem, expect: Expectation, budget: u128) -> Result<Outcome, Failure> {
    let v = MemberVerifier::new(system, expect, budget)?;
    let t = parallel::members(&v);
    let field = linsys::base_field(system.params.q)?;
    let examples: Vec<Value> = t.counterexamples.iter().map(|&k| json::form(&system.member(&field, k))).collect();
    let passed = t.counterexample_count == 0;
    let payload = json!({
        "summary": system_summary(system)?,
        "kind": match system.kind { SystemKind::Reducible => "red", SystemKind::Irreducible => "irr", SystemKind::Other => "other" },
        "expect": match expect { Expectation::Reducible => "reducible", Expectation::Irreducible => "irreducible" },
        "members": t.members.to_string(),
        "reducible": t.reducible.to_string(),
        "irreducible": t.irreducible.to_string(),
        "counterexample_count": t.counterexample_count.to_string(),
        "counterexamples": examples,
        "passed": passed,
    });
    Ok(Outcome::new(payload, !passed))
}

pub fn linsys_intersect(a: &LinearSystem, b: &LinearSystem) -> Result<Outcome, Failure> {
    let dim = intersection_dimension(a, b)?;
    let member = intersection_member(a, b)?;
    let reducible = match &member {
        Some(f) => {
            let p = a.params;
            Some(FactorContext::new(p.n, p.d, p.q, false)?.split_over_base(f).is_some())
        }
        None => None,
    };
    let payload = json!({
        "dim_a": a.dim(),
        "dim_b": b.dim(),
        "intersection_dim": dim,
        "member": member.as_ref().map(json::form),
        "member_reducible": reducible,
    });
    Ok(Outcome::new(payload, false))
}

/// Product enumeration of the reducible locus, cross-checked against the
/// trial-division census.
pub fn linsys_locus(n: usize, d: usize, q: u128, budget: u128) -> Result<Outcome, Failure> {
    let params = ParamSet::new(n, d, q)?;
    let rep = reducible_locus_counts(params, budget)?;
    let census = parallel::census(&FactorContext::new(n, d, q, false)?, budget)?;
    let agree = census.tally.reducible == rep.union;
    let union_le_sum = rep.union <= rep.split_sum();
    let passed = agree && union_le_sum && rep.s_matches_dimensions();
    let payload = json!({
        "n": n, "d": d, "q": q.to_string(),
        "per_split": rep.per_split.iter().map(|(i, c, dim)| json!({ "i": i, "count": c.to_string(), "dim": dim })).collect::<Vec<_>>(),
        "union": rep.union.to_string(),
        "census_reducible": census.tally.reducible.to_string(),
        "agree": agree,
        "r": rep.r,
        "s": rep.s,
        "leading_ratio": rational(&rep.leading_ratio),
        "passed": passed,
    });
    Ok(Outcome::new(payload, !passed))
}
