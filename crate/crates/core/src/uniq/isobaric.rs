//! Level-one forms as weighted-homogeneous polynomials in `g₄ = E₄`, `g₆ = E₆`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactcore::linalg::solve_sparse;
use crate::exactcore::{QSeries, Rat, SparseRow};
use crate::forms::{e4, e6, ModularForm};

/// `Σ c_{ab} g₄^a g₆^b`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IsobaricPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl IsobaricPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([((0, 0), Rat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = Self::zero();
        for (key, c) in terms {
            let slot = p.terms.entry(key).or_insert_with(Rat::zero);
            *slot += c;
            if slot.is_zero() {
                p.terms.remove(&key);
            }
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight `4a + 6b`, or an error if the terms disagree.
    pub fn weight(&self) -> Result<u32> {
        let mut ws = self.terms.keys().map(|&(a, b)| 4 * a + 6 * b);
        let w = ws.next().unwrap_or(0);
        if ws.any(|x| x != w) {
            return Err(Error::NotIsobaric { weight: w, reason: "mixed weights".into() });
        }
        Ok(w)
    }

    pub fn mul(&self, other: &IsobaricPoly) -> IsobaricPoly {
        let mut out = Vec::new();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &other.terms {
                out.push(((a + x, b + y), c * d));
            }
        }
        Self::from_terms(out)
    }

    pub fn scale(&self, c: &Rat) -> IsobaricPoly {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// The q-expansion to precision `prec`.
    pub fn to_series(&self, prec: usize) -> QSeries {
        let (g4, g6) = (e4(prec).series, e6(prec).series);
        let mut acc = QSeries::zero(prec);
        for (&(a, b), c) in &self.terms {
            acc = &acc + &(&g4.pow(a) * &g6.pow(b)).scale(c);
        }
        acc
    }

    /// Exponent pairs with `4a + 6b = w`, by increasing `b`.
    pub fn monomials(w: u32) -> Vec<(u32, u32)> {
        (0..=w / 6).filter(|b| (w - 6 * b) % 4 == 0).map(|b| ((w - 6 * b) / 4, b)).collect()
    }
}

impl fmt::Display for IsobaricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let mut s = c.to_string();
                if a > 0 {
                    s += &format!("*g4^{a}");
                }
                if b > 0 {
                    s += &format!("*g6^{b}");
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Writes a level-one form in `E₄, E₆` by matching q-expansions exactly.
pub fn form_to_isobaric(f: &ModularForm) -> Result<IsobaricPoly> {
    let monos = IsobaricPoly::monomials(f.weight);
    if monos.is_empty() {
        if f.is_zero() {
            return Ok(IsobaricPoly::zero());
        }
        return Err(Error::NotIsobaric { weight: f.weight, reason: "no modular forms of this weight".into() });
    }
    if f.prec() < monos.len() {
        return Err(Error::Precision { min: monos.len(), got: f.prec() });
    }
    let prec = f.prec();
    let basis: Vec<QSeries> = monos
        .iter()
        .map(|&m| IsobaricPoly::from_terms([(m, Rat::one())]).to_series(prec))
        .collect();
    let rows = (0..prec).map(|n| {
        let row: SparseRow = basis
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.coeff(n).is_zero())
            .map(|(i, s)| (i, s.coeff(n).clone()))
            .collect();
        (row, f.series.coeff(n).clone())
    });
    let sol = solve_sparse(rows, monos.len()).map_err(|_| Error::NotIsobaric {
        weight: f.weight,
        reason: "q-expansion is not in the span of E4^a E6^b".into(),
    })?;
    if sol.nullity() > 0 {
        return Err(Error::Precision { min: monos.len() + 1, got: prec });
    }
    Ok(IsobaricPoly::from_terms(monos.into_iter().zip(sol.particular)))
}

type Uni = Vec<Rat>;

fn trim(p: &mut Uni) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let q = r.last().expect("nonempty") / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        trim(&mut r);
    }
    r
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    x
}

/// Splits `p = g₄^α g₆^β p'` and returns `(α, β, p'(1, y))` with `y = g₆`.
fn dehomogenise(p: &IsobaricPoly) -> (u32, u32, Uni) {
    let alpha = p.terms.keys().map(|k| k.0).min().unwrap_or(0);
    let beta = p.terms.keys().map(|k| k.1).min().unwrap_or(0);
    let deg = p.terms.keys().map(|k| k.1 - beta).max().unwrap_or(0) as usize;
    let mut u = vec![Rat::zero(); deg + 1];
    for (&(_, b), c) in &p.terms {
        u[(b - beta) as usize] += c;
    }
    (alpha, beta, u)
}

/// Greatest common divisor in `ℚ[g₄, g₆]`, normalised so that the largest
/// exponent pair in lexicographic order has coefficient 1.
///
/// Factors of a weighted-homogeneous polynomial are weighted-homogeneous,
/// so after removing monomial content the gcd can be taken on `g₄ = 1` and
/// re-homogenised: the exponents of `g₆` in each cofactor share a parity.
pub fn isobaric_gcd(p: &IsobaricPoly, q: &IsobaricPoly) -> Result<IsobaricPoly> {
    p.weight()?;
    q.weight()?;
    if p.is_zero() {
        return Ok(normalise(q));
    }
    if q.is_zero() {
        return Ok(normalise(p));
    }
    let (ap, bp, up) = dehomogenise(p);
    let (aq, bq, uq) = dehomogenise(q);
    let g = uni_gcd(&up, &uq);
    let d = (g.len() - 1) as u32;
    // Homogenise with weight 6d: the g₆^b term gets g₄^{3(d-b)/2}.
    let mut terms = Vec::new();
    for (b, c) in g.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rest = 3 * (d - b as u32);
        if rest % 2 != 0 {
            return Err(Error::NotIsobaric { weight: 6 * d, reason: "gcd does not homogenise".into() });
        }
        terms.push(((rest / 2 + ap.min(aq), b as u32 + bp.min(bq)), c.clone()));
    }
    Ok(normalise(&IsobaricPoly::from_terms(terms)))
}

fn normalise(p: &IsobaricPoly) -> IsobaricPoly {
    match p.terms.values().next_back() {
        Some(lead) => p.scale(&(Rat::one() / lead)),
        None => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{rat, ri};
    use crate::forms::delta;

    fn g(a: u32, b: u32) -> IsobaricPoly {
        IsobaricPoly::from_terms([((a, b), Rat::one())])
    }

    #[test]
    fn delta_in_generators() {
        let d = form_to_isobaric(&delta(10).unwrap()).unwrap();
        let want = IsobaricPoly::from_terms([((3, 0), rat(1, 1728)), ((0, 2), rat(-1, 1728))]);
        assert_eq!(d, want);
        assert_eq!(d.to_series(10), delta(10).unwrap().series);
        assert_eq!(form_to_isobaric(&e4(6).pow(2)).unwrap(), g(2, 0));
        assert_eq!(form_to_isobaric(&e4(6).mul(&e6(6))).unwrap(), g(1, 1));
    }

    #[test]
    fn rejects_non_modular() {
        let e2 = ModularForm::new(4, crate::forms::eisenstein(2, 6).unwrap());
        assert!(form_to_isobaric(&e2).is_err());
        assert!(form_to_isobaric(&ModularForm::new(2, QSeries::from_ints(&[1, 2]))).is_err());
    }

    #[test]
    fn gcds() {
        assert_eq!(isobaric_gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 0));
        let d = form_to_isobaric(&delta(10).unwrap()).unwrap();
        assert_eq!(isobaric_gcd(&d, &g(1, 0)).unwrap(), IsobaricPoly::one());
        let p = d.mul(&g(1, 1)).scale(&ri(7));
        assert_eq!(isobaric_gcd(&p, &p).unwrap(), normalise(&p));
        let q = d.mul(&g(0, 1));
        assert_eq!(isobaric_gcd(&p, &q).unwrap(), normalise(&d.mul(&g(0, 1))));
    }
}
