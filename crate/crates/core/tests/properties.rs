use std::cmp::Ordering;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use seshadri::closedform::PointClass;
use seshadri::numlattice::fibre_degrees;
use seshadri::oracle::verdict;
use seshadri::{
    certify_point, epsilon_at_point, epsilon_min, epsilon_one, intersect, pell_fundamental,
    surface_params, DivisorClass, EstimateKind, ExactValue, SeshadriEstimate,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-5000i64..5000, 1i64..500).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn exact_value() -> impl Strategy<Value = ExactValue> {
    (rational(), rational(), 0u64..2000).prop_map(|(q, r, d)| ExactValue::new(q, r, d))
}

fn bundle() -> impl Strategy<Value = (u8, DivisorClass)> {
    (1u8..=7, 1i64..=80, 1i64..=80).prop_map(|(t, a, b)| (t, DivisorClass::new(a, b)))
}

proptest! {
    #[test]
    fn compare_is_antisymmetric(x in exact_value(), y in exact_value()) {
        prop_assert_eq!(x.compare(&y), y.compare(&x).reverse());
        prop_assert_eq!((-x.clone()).compare(&-y.clone()), y.compare(&x));
    }

    #[test]
    fn compare_matches_difference_on_shared_radicand(x in exact_value(), q in rational(), r in rational()) {
        let y = ExactValue::new(q, r, x.d());
        let diff = x.try_sub(&y).unwrap();
        prop_assert_eq!(x.compare(&y), diff.signum());
    }

    #[test]
    fn display_and_json_round_trip(x in exact_value()) {
        let parsed: ExactValue = x.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &x);
        let json = serde_json::to_string(&x).unwrap();
        let back: ExactValue = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn floor_brackets_value(x in exact_value()) {
        let f = ExactValue::rational(BigRational::from_integer(x.floor()));
        let next = ExactValue::rational(BigRational::from_integer(x.floor() + 1));
        prop_assert!(f <= x && x < next);
    }

    #[test]
    fn intersection_is_symmetric_bilinear(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50, k in -5i64..5) {
        let (x, y) = (DivisorClass::new(a, b), DivisorClass::new(c, d));
        prop_assert_eq!(intersect(x, y), intersect(y, x));
        prop_assert_eq!(intersect(x.scaled(k), y), k as i128 * intersect(x, y));
        prop_assert_eq!(x.self_intersection(), intersect(x, x));
    }

    #[test]
    fn exact_values_never_exceed_root_l2((t, l) in bundle()) {
        let s = surface_params(t).unwrap();
        let root = ExactValue::make_surd(BigRational::from_integer(1.into()), l.self_intersection() as u64);
        let mut estimates = vec![epsilon_min(&s, l).unwrap(), epsilon_one(&s, l).unwrap()];
        estimates.push(epsilon_at_point(&s, l, PointClass::Arbitrary).unwrap());
        for n in s.distinct_mults() {
            estimates.push(epsilon_at_point(&s, l, PointClass::OnSingularFibre(n)).unwrap());
        }
        for e in estimates {
            if let Some(v) = &e.value {
                prop_assert!(ExactValue::rational(v.clone()) <= root, "{:?}", e);
            }
            if let (Some(lo), Some(hi)) = (&e.lower, &e.upper) {
                prop_assert!(lo < hi);
            }
        }
    }

    #[test]
    fn epsilon_one_exact_is_fibre_minimum((t, l) in bundle()) {
        let s = surface_params(t).unwrap();
        let e = epsilon_one(&s, l).unwrap();
        let (la, lb) = fibre_degrees(&s, l);
        if e.kind == EstimateKind::Exact {
            prop_assert_eq!(e.value.unwrap(), BigRational::from_integer(BigInt::from(la.min(lb))));
        }
    }

    #[test]
    fn estimates_json_round_trip((t, l) in bundle()) {
        let s = surface_params(t).unwrap();
        for e in [epsilon_min(&s, l).unwrap(), epsilon_one(&s, l).unwrap()] {
            let json = serde_json::to_value(&e).unwrap().to_string();
            let back: SeshadriEstimate = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(serde_json::to_value(&back).unwrap().to_string(), json);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees_with_closed_forms((t, l) in bundle()) {
        let s = surface_params(t).unwrap();
        let arbitrary = certify_point(&s, l, PointClass::Arbitrary, 80).unwrap();
        prop_assert!(arbitrary.lower <= arbitrary.upper);
        prop_assert!(verdict(&epsilon_min(&s, l).unwrap(), &arbitrary).0);
        let general = certify_point(&s, l, PointClass::VeryGeneral, 80).unwrap();
        prop_assert!(verdict(&epsilon_one(&s, l).unwrap(), &general).0);
        // a very general point is no worse than an arbitrary one
        prop_assert!(general.upper >= arbitrary.upper);
    }

    #[test]
    fn pell_solutions_satisfy_equation(d in 2u64..200_000) {
        let root = num::integer::Roots::sqrt(&d);
        prop_assume!(root * root != d);
        let sol = pell_fundamental(d).unwrap();
        prop_assert!(sol.satisfies(d));
        prop_assert!(sol.p > BigInt::zero());
        // pd/q < √d
        let bound = ExactValue::rational(BigRational::new(&sol.p * BigInt::from(d), sol.q.clone()));
        let root_d = ExactValue::make_surd(BigRational::from_integer(1.into()), d);
        prop_assert_eq!(bound.compare(&root_d), Ordering::Less);
    }
}
