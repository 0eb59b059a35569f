//! Unique factorisation for the Eholzer product: `RC(F₁,G₁) = RC(F₂,G₂)`
//! should force `F₁ = C·F₂` and `G₂ = C·G₁`.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::isobaric::IsobaricPoly;
use crate::exactcore::{ri, Rat};
use crate::forms::{GradedForm, ModularForm};
use crate::starprod::rc_series;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessResult {
    pub equal: bool,
    /// The constant with `F₁ = C·F₂`, `G₂ = C·G₁`, when one exists.
    #[serde(skip)]
    pub c: Option<Rat>,
    /// Equal products with no such constant.
    pub counterexample: bool,
}

fn truncate(f: &GradedForm, prec: usize) -> GradedForm {
    GradedForm::from_parts(f.parts().map(|p| p.truncate(prec.min(p.prec()))))
}

/// `C` with `a = C·b`, if there is one.
fn ratio(a: &ModularForm, b: &ModularForm) -> Option<Rat> {
    let n = b.series.valuation()?;
    let c = a.series.coeff(n) / b.series.coeff(n);
    (b.scale(&c) == *a).then_some(c)
}

/// Compares `RC(F₁,G₁)` and `RC(F₂,G₂)` to `ħ^order` at precision `prec`. If
/// they agree and are nonzero, `C` is read off the lowest-weight parts of
/// `F₁, F₂` and then checked on every part.
pub fn rc_uniqueness_check(
    f1: &GradedForm,
    g1: &GradedForm,
    f2: &GradedForm,
    g2: &GradedForm,
    order: u32,
    prec: usize,
) -> UniquenessResult {
    let (f1, g1, f2, g2) = (truncate(f1, prec), truncate(g1, prec), truncate(f2, prec), truncate(g2, prec));
    let left = rc_series(&f1, &g1, order);
    let right = rc_series(&f2, &g2, order);
    if left != right {
        return UniquenessResult { equal: false, c: None, counterexample: false };
    }
    if left.is_zero() {
        return UniquenessResult { equal: true, c: None, counterexample: false };
    }
    let c = match (f1.lowest(), f2.lowest()) {
        (Some(a), Some(b)) if a.weight == b.weight => ratio(a, b),
        _ => None,
    };
    let c = c.filter(|c| f1 == f2.scale(c) && g2 == g1.scale(c));
    let counterexample = c.is_none();
    UniquenessResult { equal: true, c, counterexample }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub instances: usize,
    pub equal_pairs: usize,
    pub recovered: usize,
    /// Pairs with the same product at `ħ⁰` but different Eholzer products.
    pub separated_by_brackets: usize,
    pub counterexamples: usize,
}

const WEIGHTS: [u32; 7] = [4, 6, 8, 10, 12, 14, 16];

fn random_form(rng: &mut ChaCha8Rng, weight: u32, prec: usize) -> ModularForm {
    let monos = IsobaricPoly::monomials(weight);
    loop {
        let p = IsobaricPoly::from_terms(monos.iter().map(|&m| (m, ri(rng.gen_range(-3..=3)))));
        if !p.is_zero() {
            return ModularForm::new(weight, p.to_series(prec));
        }
    }
}

fn random_graded(rng: &mut ChaCha8Rng, prec: usize) -> GradedForm {
    let parts = rng.gen_range(1..=2);
    let mut ws = WEIGHTS[..4].to_vec();
    ws.shuffle(rng);
    GradedForm::from_parts(ws[..parts].iter().map(|&w| random_form(rng, w, prec)))
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = loop {
        let n: i64 = rng.gen_range(-5..=5);
        if n != 0 {
            break n;
        }
    };
    Rat::new(n.into(), rng.gen_range(1i64..=4).into())
}

/// One seeded instance: `(F₁, G₁, F₂, G₂, proportional by construction)`.
fn instance(seed: u64, prec: usize) -> (GradedForm, GradedForm, GradedForm, GradedForm, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rng.gen_range(0..4) {
        0 => {
            let (f, g) = (random_graded(&mut rng, prec), random_graded(&mut rng, prec));
            let c = nonzero_rat(&mut rng);
            let (f2, g2) = (f.scale(&(Rat::one() / &c)), g.scale(&c));
            (f, g, f2, g2, true)
        }
        1 => {
            // F₁ = AB, G₁ = CD against F₂ = AC, G₂ = BD: equal at ħ⁰.
            let a: Vec<ModularForm> = (0..4)
                .map(|_| {
                    let w = *WEIGHTS[..3].choose(&mut rng).expect("nonempty");
                    random_form(&mut rng, w, prec)
                })
                .collect();
            let f1 = GradedForm::from(a[0].mul(&a[1]));
            let g1 = GradedForm::from(a[2].mul(&a[3]));
            let f2 = GradedForm::from(a[0].mul(&a[2]));
            let g2 = GradedForm::from(a[1].mul(&a[3]));
            (f1, g1, f2, g2, false)
        }
        2 => {
            let (f, g) = (random_graded(&mut rng, prec), random_graded(&mut rng, prec));
            (f.clone(), g.clone(), g, f, false)
        }
        _ => {
            // A proportional pair with one part nudged.
            let (f, g) = (random_graded(&mut rng, prec), random_graded(&mut rng, prec));
            let c = nonzero_rat(&mut rng);
            let w = *WEIGHTS.choose(&mut rng).expect("nonempty");
            let nudge = GradedForm::from(random_form(&mut rng, w, prec));
            (f.clone(), g.clone(), f.scale(&c).add(&nudge), g.scale(&(Rat::one() / c)), false)
        }
    }
}

/// Runs `instances` seeded instances (seeds `seed, seed+1, …`) and merges
/// the outcomes in seed order.
pub fn uniqueness_search(seed: u64, instances: usize, order: u32, prec: usize) -> SearchReport {
    let outcomes: Vec<(bool, UniquenessResult, bool)> = (0..instances as u64)
        .into_par_iter()
        .map(|i| {
            let (f1, g1, f2, g2, proportional) = instance(seed.wrapping_add(i), prec);
            let res = rc_uniqueness_check(&f1, &g1, &f2, &g2, order, prec);
            let same_product = f1.mul(&g1) == f2.mul(&g2);
            (proportional, res, same_product)
        })
        .collect();
    let mut report = SearchReport {
        seed,
        instances,
        equal_pairs: 0,
        recovered: 0,
        separated_by_brackets: 0,
        counterexamples: 0,
    };
    for (proportional, res, same_product) in outcomes {
        if res.equal {
            report.equal_pairs += 1;
        } else if same_product {
            report.separated_by_brackets += 1;
        }
        if proportional && res.c.is_some() {
            report.recovered += 1;
        }
        if res.counterexample {
            report.counterexamples += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{e4, e6};

    #[test]
    fn proportional_pair() {
        let p = 15;
        let f = GradedForm::from_parts([e4(p), e6(p)]);
        let g = GradedForm::from(e6(p));
        let r = rc_uniqueness_check(&f, &g, &f.scale(&ri(3)), &g.scale(&Rat::new(1.into(), 3.into())), 3, p);
        assert!(r.equal);
        assert_eq!(r.c, Some(Rat::new(1.into(), 3.into())));
        assert!(!r.counterexample);
    }

    #[test]
    fn swapped_pair_differs() {
        let p = 15;
        let (f, g) = (GradedForm::from(e4(p)), GradedForm::from(e6(p)));
        let r = rc_uniqueness_check(&f, &g, &g, &f, 3, p);
        assert!(!r.equal);
    }

    #[test]
    fn small_search() {
        let rep = uniqueness_search(7, 60, 3, 12);
        assert_eq!(rep.counterexamples, 0);
        assert!(rep.recovered > 0);
        assert!(rep.separated_by_brackets > 0);
    }

    #[test]
    fn search_is_deterministic() {
        assert_eq!(uniqueness_search(3, 20, 2, 10), uniqueness_search(3, 20, 2, 10));
    }
}
