use proptest::prelude::*;
use rc_lab::exactcore::ri;
use rc_lab::rep::{
    act_lower, act_raise, act_weight, casimir, casimir_eigenvalue, lowest_weight_tensor, tensor_lower,
    triple_lower, triple_preimage, DSVector, TripleVector,
};

fn vector() -> impl Strategy<Value = DSVector> {
    (prop::sample::select(vec![2u32, 4, 6, 8, 12]), prop::collection::vec((0u32..8, -9i64..=9), 1..5))
        .prop_map(|(w, terms)| DSVector::from_terms(w, terms.into_iter().map(|(n, c)| (n, ri(c)))))
}

proptest! {
    #[test]
    fn sl2_relations(v in vector()) {
        let (r, l, h) = (act_raise, act_lower, act_weight);
        prop_assert_eq!(h(&r(&v)).sub(&r(&h(&v))), r(&v).scale(&ri(2)));
        prop_assert_eq!(h(&l(&v)).sub(&l(&h(&v))), l(&v).scale(&ri(-2)));
        prop_assert_eq!(r(&l(&v)).sub(&l(&r(&v))), h(&v));
    }

    #[test]
    fn casimir_is_scalar_and_central(v in vector()) {
        let w = v.lowest_weight;
        prop_assert_eq!(casimir(&v), v.scale(&casimir_eigenvalue(w)));
        prop_assert_eq!(casimir(&act_raise(&v)), act_raise(&casimir(&v)));
        prop_assert_eq!(casimir(&act_lower(&v)), act_lower(&casimir(&v)));
        prop_assert_eq!(casimir(&act_weight(&v)), act_weight(&casimir(&v)));
    }

    #[test]
    fn lowest_tensor_is_killed(wk in 1u32..8, wl in 1u32..8, n in 0u32..7) {
        prop_assert!(tensor_lower(&lowest_weight_tensor(2 * wk, 2 * wl, n)).is_zero());
    }

    #[test]
    fn preimage_lowers_to_minus_target(
        w in (1u32..6, 1u32..6, 1u32..6),
        r in 0u32..4, s in 0u32..4, t in 0u32..4,
    ) {
        let weights = (2 * w.0, 2 * w.1, 2 * w.2);
        let target = TripleVector::basis(weights, (r, s, t));
        let got = triple_lower(&triple_preimage(weights, (r, s, t)));
        prop_assert_eq!(got, target.scale(&ri(-1)));
    }
}


proptest! {
    #[test]
    fn lowering_a_raised_bottom_vector(k in 1u32..8, n in 1u32..=10) {
        let w = 2 * k;
        let mut v = DSVector::basis(w, 0);
        for _ in 0..n - 1 {
            v = act_raise(&v);
        }
        let top = act_raise(&v);
        let c = ri(-i64::from(n) * (i64::from(w) + i64::from(n) - 1));
        prop_assert_eq!(act_lower(&top), v.scale(&c));
    }
}
