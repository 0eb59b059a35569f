mod common;

use common::{form, small_rat};
use proptest::prelude::*;
use rc_lab::exactcore::ri;
use rc_lab::forms::phi_zagier;
use rc_lab::nearlyholo::{canonical_rc, combi_bracket, lower, rc_bracket, shimura_x, NearlyHoloForm};

const PREC: usize = 8;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_bilinear(f in form(PREC), g in form(PREC), c in small_rat(), n in 0u32..4) {
        let g2 = g.scale(&c);
        let lhs = rc_bracket(&f, &g.add(&g2), n).unwrap();
        let rhs = rc_bracket(&f, &g, n).unwrap().add(&rc_bracket(&f, &g2, n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_symmetry(f in form(PREC), g in form(PREC), n in 0u32..5) {
        let sign = if n % 2 == 0 { ri(1) } else { ri(-1) };
        prop_assert_eq!(rc_bracket(&f, &g, n).unwrap(), rc_bracket(&g, &f, n).unwrap().scale(&sign));
    }

    #[test]
    fn canonical_matches_bracket_with_negative_phi(f in form(PREC), g in form(PREC), n in 0u32..5) {
        let phi = phi_zagier(PREC).scale(&ri(-1));
        prop_assert_eq!(canonical_rc(&f, &g, n, &phi).unwrap(), rc_bracket(&f, &g, n).unwrap());
    }

    #[test]
    fn combi_is_holomorphic_bracket(f in form(PREC), g in form(PREC), n in 0u32..4) {
        let c = combi_bracket(&f, &g, n).unwrap();
        prop_assert_eq!(c.to_form(), Some(rc_bracket(&f, &g, n).unwrap()));
    }

    #[test]
    fn lowering_commutator(f in form(PREC), a in 0u32..3) {
        // [ℓ, X̃] acts on weight w by -w
        let mut v = NearlyHoloForm::from(&f);
        for _ in 0..a {
            v = shimura_x(&v);
        }
        let lhs = lower(&shimura_x(&v)).sub(&shimura_x(&lower(&v)).with_weight(v.weight()));
        prop_assert!(lhs.same_ypoly(&v.scale(&ri(-v.weight()))));
    }
}
