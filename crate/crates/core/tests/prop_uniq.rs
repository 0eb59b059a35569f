mod common;

use common::{form, monomials, small_rat};
use proptest::prelude::*;
use rc_lab::forms::{e4, e6};
use rc_lab::uniq::{bracket_shift_residual, form_to_isobaric, isobaric_gcd};

const PREC: usize = 12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isobaric_round_trip(f in form(PREC)) {
        let p = form_to_isobaric(&f).unwrap();
        prop_assert_eq!(p.weight().unwrap(), f.weight);
        prop_assert_eq!(p.to_series(PREC), f.series.clone());
    }

    #[test]
    fn gcd_contains_common_factor(c in small_rat(), d in small_rat()) {
        prop_assume!(c != d);
        // (E4^3 - c E6^2) and (E4^3 - d E6^2) share no factor; multiplying both by E4 E6 adds one
        let common = e4(PREC).mul(&e6(PREC));
        let a = monomials(12, PREC);
        let f = a[0].sub(&a[1].scale(&c)).mul(&common);
        let g = a[0].sub(&a[1].scale(&d)).mul(&common);
        let gcd = isobaric_gcd(&form_to_isobaric(&f).unwrap(), &form_to_isobaric(&g).unwrap()).unwrap();
        prop_assert_eq!(gcd.weight().unwrap(), 10);
    }

    #[test]
    fn shift_residual_detects_nonconstant(f in form(PREC), g in form(PREC), h in form(PREC)) {
        let any = (1..=3).any(|n| !bracket_shift_residual(&f, &g, &h, n).unwrap().is_zero());
        prop_assert!(any);
    }
}
