use freepoint_core::bounds::{PowerSum, Sign};
use freepoint_core::orbit::OrbitContext;
use freepoint_core::{FieldTower, FiniteField, ProjectivePoint, SmallField};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn tower(q: u128, k: usize) -> FieldTower {
    FieldTower::for_order(q).unwrap().extend(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn small_field_axioms(a in 0u128..81, b in 0u128..81, c in 0u128..81) {
        let t = tower(3, 4);
        let f = SmallField::from_tower(&t, t.top_level()).unwrap();
        let (a, b, c) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if let Some(inv) = f.inv(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &inv)));
        } else {
            prop_assert!(f.is_zero(&a));
        }
        prop_assert_eq!(f.pow(&a, 81), a);
    }

    #[test]
    fn table_agrees_with_tower(a in 0u128..625, b in 0u128..625) {
        let t = tower(5, 4);
        let top = t.top_level();
        let f = SmallField::from_tower(&t, top).unwrap();
        let (x, y) = (t.element(top, a), t.element(top, b));
        let prod = t.index_of(&t.mul(&x, &y).unwrap());
        let sum = t.index_of(&t.add(&x, &y).unwrap());
        prop_assert_eq!(f.index_of(&f.mul(&f.element(a), &f.element(b))), prod);
        prop_assert_eq!(f.index_of(&f.add(&f.element(a), &f.element(b))), sum);
    }

    #[test]
    fn frobenius_is_field_automorphism(a in 0u128..4096, b in 0u128..4096) {
        // F_4 -> F_{4^6}
        let t = FieldTower::for_order(4).unwrap().extend(6).unwrap();
        let (top, base) = (t.top_level(), t.top_level() - 1);
        let (x, y) = (t.element(top, a), t.element(top, b));
        let fr = |z: &_| t.frobenius(z, base).unwrap();
        prop_assert_eq!(fr(&t.add(&x, &y).unwrap()), t.add(&fr(&x), &fr(&y)).unwrap());
        prop_assert_eq!(fr(&t.mul(&x, &y).unwrap()), t.mul(&fr(&x), &fr(&y)).unwrap());
        let mut z = x.clone();
        for _ in 0..6 {
            z = fr(&z);
        }
        prop_assert_eq!(z, x.clone());
        let fixed = fr(&x) == x;
        prop_assert_eq!(fixed, t.element_degree(&x, base).unwrap() == 1);
    }

    #[test]
    fn coords_round_trip(a in 0u128..6561) {
        // F_9 -> F_{9^4}
        let t = FieldTower::for_order(9).unwrap().extend(4).unwrap();
        let (top, base) = (t.top_level(), t.top_level() - 1);
        let x = t.element(top, a);
        let cs = t.coords_over(&x, base).unwrap();
        prop_assert_eq!(cs.len(), 4);
        prop_assert_eq!(t.from_coords(&cs, base, top).unwrap(), x);
        prop_assert_eq!(t.index_of(&t.element(top, a)), a);
    }

    #[test]
    fn normalization_is_idempotent(xs in proptest::collection::vec(0u128..27, 3), s in 1u128..27) {
        let t = tower(3, 3);
        let f = SmallField::from_tower(&t, t.top_level()).unwrap();
        let coords: Vec<u32> = xs.iter().map(|&i| f.element(i)).collect();
        let Some(p) = ProjectivePoint::new(&f, coords.clone()) else {
            prop_assert!(xs.iter().all(|&i| i == 0));
            return Ok(());
        };
        let lead = p.coords().iter().position(|c| !f.is_zero(c)).unwrap();
        prop_assert!(f.is_one(&p.coords()[lead]));
        prop_assert_eq!(ProjectivePoint::new(&f, p.coords().to_vec()).unwrap(), p.clone());
        let scaled: Vec<u32> = coords.iter().map(|c| f.mul(c, &f.element(s))).collect();
        prop_assert_eq!(ProjectivePoint::new(&f, scaled).unwrap(), p);
    }

    #[test]
    fn freeness_is_scalar_invariant(xs in proptest::collection::vec(0u128..729, 3), s in 1u128..729) {
        let t = tower(3, 6);
        let top = t.top_level();
        let f = SmallField::from_tower(&t, top).unwrap();
        let ctx = OrbitContext::new(&f, &t, top, top - 1).unwrap();
        let coords: Vec<u32> = xs.iter().map(|&i| f.element(i)).collect();
        prop_assume!(coords.iter().any(|c| !f.is_zero(c)));
        let p = ProjectivePoint::new(&f, coords.clone()).unwrap();
        let scaled: Vec<u32> = coords.iter().map(|c| f.mul(c, &f.element(s))).collect();
        let q = ProjectivePoint::new(&f, scaled).unwrap();
        prop_assert_eq!(ctx.is_free_point(&p, 2).unwrap().rank, ctx.is_free_point(&q, 2).unwrap().rank);
    }

    #[test]
    fn power_sum_sign_matches_rational_value(terms in proptest::collection::vec((-40i64..40, -50i64..50), 1..6)) {
        // q = 16 makes q^{e/4} = 2^e rational.
        let mut s = PowerSum::new(16);
        let mut value = BigRational::from_integer(BigInt::from(0));
        for &(e, c) in &terms {
            let c = BigRational::from_integer(BigInt::from(c));
            s.add_term(e, c.clone());
            let two = BigRational::from_integer(BigInt::from(2));
            let w = if e >= 0 { num_traits::pow(two, e as usize) } else { num_traits::pow(two, (-e) as usize).recip() };
            value += c * w;
        }
        prop_assert_eq!(s.sign().unwrap(), Sign::of_rational(&value));
    }
}
