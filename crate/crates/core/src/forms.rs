//! Level-one modular forms: generators, the discriminant and graded sums.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::{rat, ri, QSeries, Rat};

/// A q-expansion tagged with its (even) weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularForm {
    pub weight: u32,
    pub series: QSeries,
}

impl ModularForm {
    pub fn new(weight: u32, series: QSeries) -> Self {
        assert!(weight % 2 == 0, "weights are even, got {weight}");
        ModularForm { weight, series }
    }

    /// The constant `c` as a weight-0 form.
    pub fn constant(c: Rat, prec: usize) -> Self {
        Self::new(0, QSeries::constant(c, prec))
    }

    pub fn prec(&self) -> usize {
        self.series.prec()
    }

    /// Half the weight, the `k` of weight `2k`.
    pub fn k(&self) -> i64 {
        i64::from(self.weight / 2)
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.weight, self.series.scale(c))
    }

    pub fn mul(&self, other: &ModularForm) -> Self {
        Self::new(self.weight + other.weight, &self.series * &other.series)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.weight * e, self.series.pow(e))
    }

    /// Sum of two forms of the same weight.
    pub fn add(&self, other: &ModularForm) -> Self {
        assert_eq!(self.weight, other.weight, "adding forms of different weight");
        Self::new(self.weight, &self.series + &other.series)
    }

    pub fn sub(&self, other: &ModularForm) -> Self {
        assert_eq!(self.weight, other.weight, "subtracting forms of different weight");
        Self::new(self.weight, &self.series - &other.series)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.weight, self.series.truncate(prec))
    }
}

fn check_prec(prec: usize, min: usize) -> Result<()> {
    if prec < min {
        return Err(Error::Precision { min, got: prec });
    }
    Ok(())
}

/// `σ_e(n) = Σ_{d | n} d^e`.
pub fn divisor_sigma(n: u64, e: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(e);
            let other = n / d;
            if other != d {
                s += BigInt::from(other).pow(e);
            }
        }
        d += 1;
    }
    s
}

/// Normalised Eisenstein series `E_w = 1 - (2w/B_w) Σ σ_{w-1}(n) qⁿ`, `w ∈ {2,4,6}`.
pub fn eisenstein(weight: u32, prec: usize) -> Result<QSeries> {
    let factor: i64 = match weight {
        2 => -24,
        4 => 240,
        6 => -504,
        w => return Err(Error::UnsupportedWeight(w)),
    };
    check_prec(prec, 1)?;
    let mut coeffs = Vec::with_capacity(prec);
    coeffs.push(Rat::one());
    for n in 1..prec as u64 {
        let s = divisor_sigma(n, weight - 1) * factor;
        coeffs.push(Rat::from_integer(s));
    }
    Ok(QSeries::new(coeffs))
}

pub fn e4(prec: usize) -> ModularForm {
    ModularForm::new(4, eisenstein(4, prec.max(1)).expect("weight 4"))
}

pub fn e6(prec: usize) -> ModularForm {
    ModularForm::new(6, eisenstein(6, prec.max(1)).expect("weight 6"))
}

/// `Δ = q ∏_{n≥1} (1 - qⁿ)^24`, expanded exactly.
pub fn delta(prec: usize) -> Result<ModularForm> {
    check_prec(prec, 2)?;
    // ∏ (1 - qⁿ) up to q^{prec-2}, then the 24th power, then shift by q.
    let inner = prec - 1;
    let mut prod = QSeries::one(inner);
    for n in 1..inner {
        let mut factor = vec![Rat::zero(); inner];
        factor[0] = Rat::one();
        factor[n] = ri(-1);
        prod = &prod * &QSeries::new(factor);
    }
    let p24 = prod.pow(24);
    let mut coeffs = vec![Rat::zero(); prec];
    for (i, c) in p24.coeffs().iter().enumerate() {
        coeffs[i + 1] = c.clone();
    }
    Ok(ModularForm::new(12, QSeries::new(coeffs)))
}

/// Zagier's `Φ = E₄/144`.
pub fn phi_zagier(prec: usize) -> ModularForm {
    e4(prec).scale(&rat(1, 144))
}

/// `D log η⁴ = 4(1/24 - Σ_{n≥1} n qⁿ/(1-qⁿ))`, expanded from the product
/// (each `n qⁿ/(1-qⁿ)` as a geometric series). Equals `E₂/6`.
pub fn eta_log_derivative(prec: usize) -> QSeries {
    let prec = prec.max(1);
    let mut coeffs = vec![Rat::zero(); prec];
    coeffs[0] = rat(1, 6);
    for n in 1..prec {
        let mut m = n;
        while m < prec {
            coeffs[m] -= ri(4 * n as i64);
            m += n;
        }
    }
    QSeries::new(coeffs)
}

/// Parses a small product language: factors `E4`, `E6`, `Delta` (or `D`),
/// `Phi`, a rational constant, each optionally raised to `^e`, joined by `*`.
pub fn parse_form(spec: &str, prec: usize) -> Result<ModularForm> {
    let mut acc = ModularForm::constant(Rat::one(), prec);
    for factor in spec.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let f = match base {
            "E4" => e4(prec),
            "E6" => e6(prec),
            "Delta" | "D" => delta(prec)?,
            "Phi" => phi_zagier(prec),
            other => ModularForm::constant(
                crate::exactcore::parse_rat(other)
                    .map_err(|_| Error::Parse(format!("unknown form {other:?}")))?,
                prec,
            ),
        };
        acc = acc.mul(&f.pow(exp));
    }
    Ok(acc)
}

/// A finite sum of forms of distinct weights.
///
/// Zero parts are dropped on construction so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedForm {
    parts: BTreeMap<u32, ModularForm>,
}

#[derive(Serialize, Deserialize)]
struct RawGraded {
    parts: BTreeMap<String, QSeries>,
}

impl Serialize for GradedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGraded {
            parts: self
                .parts
                .iter()
                .map(|(w, f)| (w.to_string(), f.series.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraded::deserialize(d)?;
        let mut g = GradedForm::zero();
        for (w, series) in raw.parts {
            let w: u32 = w.parse().map_err(serde::de::Error::custom)?;
            if w % 2 != 0 {
                return Err(serde::de::Error::custom(format!("odd weight {w}")));
            }
            g.add_part(ModularForm::new(w, series));
        }
        Ok(g)
    }
}

impl From<ModularForm> for GradedForm {
    fn from(f: ModularForm) -> Self {
        let mut g = GradedForm::zero();
        g.add_part(f);
        g
    }
}

impl GradedForm {
    pub fn zero() -> Self {
        GradedForm { parts: BTreeMap::new() }
    }

    pub fn from_parts(parts: impl IntoIterator<Item = ModularForm>) -> Self {
        let mut g = GradedForm::zero();
        for p in parts {
            g.add_part(p);
        }
        g
    }

    /// Adds `f` to the part of its weight.
    pub fn add_part(&mut self, f: ModularForm) {
        let w = f.weight;
        let merged = match self.parts.remove(&w) {
            Some(old) => {
                let prec = old.prec().min(f.prec());
                old.truncate(prec).add(&f.truncate(prec))
            }
            None => f,
        };
        if !merged.is_zero() {
            self.parts.insert(w, merged);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = &ModularForm> {
        self.parts.values()
    }

    pub fn part(&self, weight: u32) -> Option<&ModularForm> {
        self.parts.get(&weight)
    }

    pub fn weights(&self) -> Vec<u32> {
        self.parts.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn lowest(&self) -> Option<&ModularForm> {
        self.parts.values().next()
    }

    pub fn add(&self, other: &GradedForm) -> GradedForm {
        let mut out = self.clone();
        for p in other.parts() {
            out.add_part(p.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedForm) -> GradedForm {
        self.add(&other.scale(&ri(-1)))
    }

    pub fn scale(&self, c: &Rat) -> GradedForm {
        GradedForm::from_parts(self.parts().map(|p| p.scale(c)))
    }

    /// Weight-additive product: the part at `w` is `Σ_{u+v=w} F[u]·G[v]`.
    pub fn mul(&self, other: &GradedForm) -> GradedForm {
        let mut out = GradedForm::zero();
        for a in self.parts() {
            for b in other.parts() {
                out.add_part(a.mul(b));
            }
        }
        out
    }
}

impl fmt::Display for GradedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.values().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[weight {}] {}", p.weight, p.series)?;
        }
        Ok(())
    }
}

/// Forms built from the generators that the tests and the CLI use.
pub fn named_forms(prec: usize) -> Vec<(&'static str, ModularForm)> {
    vec![
        ("E4", e4(prec)),
        ("E6", e6(prec)),
        ("Delta", delta(prec.max(2)).expect("prec >= 2")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein(4, 5).unwrap();
        assert_eq!(e4.coeff(0), &ri(1));
        assert_eq!(e4.coeff(1), &ri(240));
        let e6 = eisenstein(6, 3).unwrap();
        assert_eq!(e6.coeff(2), &ri(-16632));
        assert_eq!(eisenstein(8, 3), Err(Error::UnsupportedWeight(8)));
        assert_eq!(eisenstein(4, 0), Err(Error::Precision { min: 1, got: 0 }));
    }

    #[test]
    fn delta_leading_terms() {
        let d = delta(6).unwrap();
        assert_eq!(d.weight, 12);
        assert_eq!(d.series, QSeries::from_ints(&[0, 1, -24, 252, -1472, 4830]));
        assert!(delta(1).is_err());
    }

    #[test]
    fn phi_is_e4_over_144() {
        let phi = phi_zagier(4);
        assert_eq!(phi.series.coeff(0), &rat(1, 144));
        assert_eq!(phi.series.coeff(1), &rat(5, 3));
        assert_eq!(phi.scale(&ri(144)), e4(4));
    }

    #[test]
    fn eta_log_derivative_is_e2_over_6() {
        let l = eta_log_derivative(30);
        assert_eq!(l.coeff(0), &rat(1, 6));
        assert_eq!(l.coeff(1), &ri(-4));
        assert_eq!(l.scale(&ri(6)), eisenstein(2, 30).unwrap());
    }

    #[test]
    fn discriminant_relation() {
        for prec in [2, 10, 64] {
            let a = e4(prec).pow(3);
            let b = e6(prec).pow(2);
            assert_eq!(a.sub(&b), delta(prec).unwrap().scale(&ri(1728)), "prec {prec}");
        }
    }

    #[test]
    fn graded_products() {
        let p = 6;
        let f = GradedForm::from(e4(p));
        let one = GradedForm::from(ModularForm::constant(ri(1), p));
        assert_eq!(f.mul(&one), f);
        assert_eq!(f.mul(&f).weights(), vec![8]);
        let g = GradedForm::from_parts([e4(p), e6(p)]);
        let prod = g.mul(&f);
        assert_eq!(prod.part(8), Some(&e4(p).mul(&e4(p))));
        assert_eq!(prod.part(10), Some(&e6(p).mul(&e4(p))));
        assert_eq!(prod.weights(), vec![8, 10]);
    }

    #[test]
    fn zero_parts_are_dropped() {
        let f = GradedForm::from(e4(4));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn graded_json() {
        let g = GradedForm::from_parts([e4(2), e6(2)]);
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(
            js,
            r#"{"parts":{"4":{"prec":2,"coeffs":["1","240"]},"6":{"prec":2,"coeffs":["1","-504"]}}}"#
        );
        let back: GradedForm = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn parse_products() {
        let f = parse_form("E4^2*E6", 5).unwrap();
        assert_eq!(f, e4(5).pow(2).mul(&e6(5)));
        assert_eq!(parse_form("Delta", 5).unwrap(), delta(5).unwrap());
        assert!(parse_form("E8", 5).is_err());
    }
}
