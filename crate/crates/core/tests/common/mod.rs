#![allow(dead_code)]

use proptest::prelude::*;
use rc_lab::exactcore::{rat, QSeries, Rat};
use rc_lab::forms::{e4, e6, ModularForm};

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn series(prec: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(small_rat(), prec).prop_map(QSeries::new)
}

/// All monomials `E4^a E6^b` of weight `w`.
pub fn monomials(w: u32, prec: usize) -> Vec<ModularForm> {
    let mut out = Vec::new();
    for b in 0..=w / 6 {
        let rest = w - 6 * b;
        if rest % 4 == 0 {
            out.push(e4(prec).pow(rest / 4).mul(&e6(prec).pow(b)));
        }
    }
    out
}

/// A random non-zero form of weight in {4, 6, 8, 10, 12}.
pub fn form(prec: usize) -> impl Strategy<Value = ModularForm> {
    prop::sample::select(vec![4u32, 6, 8, 10, 12])
        .prop_flat_map(move |w| {
            let n = monomials(w, prec).len();
            (Just(w), prop::collection::vec(small_rat(), n))
        })
        .prop_filter_map("zero form", move |(w, cs)| {
            let mut acc = ModularForm::new(w, QSeries::zero(prec));
            for (m, c) in monomials(w, prec).iter().zip(&cs) {
                acc = acc.add(&m.scale(c));
            }
            (!acc.is_zero()).then_some(acc)
        })
}
