use freepoint_core::forms::{enumerate_projective_points, point_count};
use freepoint_core::orbit::OrbitContext;
use freepoint_core::search::{builtin_cases, count_free_points, verify_witness, SearchConfig, Searcher, Strategy};
use freepoint_core::{FieldTower, FiniteField, SmallField};

/// F_27 as F_3[t]/(t^3 - t - 1), elements as coefficient triples.
mod f27 {
    pub type E = [u8; 3];

    pub fn all() -> Vec<E> {
        (0..27u8).map(|i| [i % 3, (i / 3) % 3, i / 9]).collect()
    }

    pub fn mul(a: E, b: E) -> E {
        let mut c = [0u8; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] = (c[i + j] + a[i] * b[j]) % 3;
            }
        }
        // t^3 = t + 1, t^4 = t^2 + t
        for k in (3..5).rev() {
            let v = c[k];
            c[k] = 0;
            c[k - 2] = (c[k - 2] + v) % 3;
            c[k - 3] = (c[k - 3] + v) % 3;
        }
        [c[0], c[1], c[2]]
    }

    pub fn add(a: E, b: E) -> E {
        [(a[0] + b[0]) % 3, (a[1] + b[1]) % 3, (a[2] + b[2]) % 3]
    }

    pub fn scale(k: u8, a: E) -> E {
        [(k * a[0]) % 3, (k * a[1]) % 3, (k * a[2]) % 3]
    }
}

/// Free points of `P^1(F_27)` for binary quadratics over `F_3`, by trying
/// every nonzero `(a, b, c)` at every normalized point.
fn oracle_free_conic_points() -> usize {
    let zero = [0u8; 3];
    let one = [1u8, 0, 0];
    let mut points = vec![(one, zero)];
    points.extend(f27::all().into_iter().map(|x| (x, one)));
    points
        .into_iter()
        .filter(|&(x, y)| {
            let vals = [f27::mul(x, x), f27::mul(x, y), f27::mul(y, y)];
            !(1..27u8).any(|i| {
                let coef = [i % 3, (i / 3) % 3, i / 9];
                let s = (0..3).fold(zero, |acc, k| f27::add(acc, f27::scale(coef[k], vals[k])));
                s == zero
            })
        })
        .count()
}

fn context_count(n: usize, d: usize, q: u128) -> (u128, u128) {
    let m = freepoint_core::binomial_usize(n + d, n).unwrap();
    let t = FieldTower::for_order(q).unwrap().extend(m).unwrap();
    let top = t.top_level();
    let f = SmallField::from_tower(&t, top).unwrap();
    let ctx = OrbitContext::new(&f, &t, top, top - 1).unwrap();
    let c = count_free_points(&ctx, n, d, u128::MAX).unwrap();
    (c.free, c.total)
}

#[test]
fn conic_points_on_line_over_f27() {
    assert_eq!(oracle_free_conic_points(), 24);
    assert_eq!(context_count(1, 2, 3), (24, 28));
}

#[test]
fn free_counts_match_degree_criterion() {
    // On P^1, (x:1) is free for degree d over F_q iff x has degree d+1.
    // For prime m = d+1 there are q^m - q such x.
    for (d, q, expected) in [(2usize, 4u128, 60u128), (3, 3, 72), (4, 2, 30)] {
        let (free, _) = context_count(1, d, q);
        assert_eq!(free, expected, "d={d} q={q}");
    }
}

#[test]
fn witnesses_are_free_and_exhaustive_oracle_agrees() {
    for case in builtin_cases() {
        let cert = verify_witness(&case).unwrap();
        assert!(cert.is_free(), "case n={} q={} d={}", case.n, case.q, case.d);
    }
    // Rank criterion against brute force on small spaces.
    let t = FieldTower::for_order(3).unwrap().extend(6).unwrap();
    let top = t.top_level();
    let f = SmallField::from_tower(&t, top).unwrap();
    let ctx = OrbitContext::new(&f, &t, top, top - 1).unwrap();
    for p in enumerate_projective_points(&f, 2, u128::MAX).unwrap().step_by(97) {
        let free = ctx.is_free_point(&p, 2).unwrap().is_free();
        let witness = ctx.exhaustive_vanishing_form(&p, 2, u128::MAX).unwrap();
        assert_eq!(free, witness.is_none());
    }
}

#[test]
fn random_search_is_reproducible() {
    let t = FieldTower::for_order(3).unwrap().extend_primitive(10).unwrap();
    let top = t.top_level();
    let f = SmallField::from_tower(&t, top).unwrap();
    let ctx = OrbitContext::new(&f, &t, top, top - 1).unwrap();
    let a = f.element(t.index_of(&t.generator(top)));
    let config = SearchConfig { strategy: Strategy::Random, seed: 7, ..SearchConfig::default() };
    let s = Searcher::new(&ctx, 2, 3, config, a).unwrap();
    let (i, cert) = s.find().unwrap();
    let (j, again) = Searcher::new(&ctx, 2, 3, config, a).unwrap().find().unwrap();
    assert_eq!((i, &cert.point), (j, &again.point));
    assert!(cert.is_free());
    assert_eq!(point_count(f.order(), 2), Some(59049u128 * 59049 + 59049 + 1));
}
