//! Cohen-Manin-Zagier coefficients and formal deformations of the product.
//!
//! A star product is `f ★ g = Σ_n c_n(2k, 2l) νⁿ [f, g]_n ħⁿ` on forms of
//! weights `2k, 2l`. The CMZ family uses `c_n = t_n^κ(k, l)` with gauge
//! `ν = -4`, which puts `A₁(2k,2l) = 4kl` in the table normalisation
//! `c_n = n!·A_n/((2k)_n (2l)_n)`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffsolve::ATable;
use crate::error::{Error, Result};
use crate::exactcore::{binom, binom_int, factorial, poch, rat, ri, Rat};
use crate::forms::GradedForm;
use crate::nearlyholo::rc_bracket;

/// `t_n^κ(k,l) = (-1/4)ⁿ Σ_j C(n,2j) C(-1/2,j)C(κ-3/2,j)C(1/2-κ,j)
///  / [C(-k-1/2,j)C(-l-1/2,j)C(n+k+l-3/2,j)]`, with `k, l` half weights.
pub fn cmz_coeff(kappa: &Rat, k: &Rat, l: &Rat, n: u32) -> Result<Rat> {
    let half = rat(1, 2);
    let mut sum = Rat::zero();
    for j in 0..=n / 2 {
        let num = binom(&-&half, j) * binom(&(kappa - rat(3, 2)), j) * binom(&(&half - kappa), j);
        let den = binom(&(-k - &half), j)
            * binom(&(-l - &half), j)
            * binom(&(ri(i64::from(n)) + k + l - rat(3, 2)), j);
        if den.is_zero() {
            return Err(Error::Pole(format!("t_{n} at kappa = {kappa}, k = {k}, l = {l}, j = {j}")));
        }
        sum += binom_int(i64::from(n), 2 * i64::from(j)) * num / den;
    }
    Ok(pow_rat(&rat(-1, 4), n) * sum)
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    (0..n).fold(Rat::one(), |acc, _| acc * x)
}

#[derive(Clone, Debug, PartialEq)]
pub enum StarKind {
    Cmz(Rat),
    Eholzer,
    Table(ATable),
}

/// Which coefficients to use, and the rescaling `ħ ↦ νħ`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarCoefficients {
    pub kind: StarKind,
    pub gauge: Rat,
}

impl StarCoefficients {
    /// CMZ coefficients in the default gauge `-4`.
    pub fn cmz(kappa: Rat) -> Self {
        StarCoefficients { kind: StarKind::Cmz(kappa), gauge: ri(-4) }
    }

    pub fn eholzer() -> Self {
        StarCoefficients { kind: StarKind::Eholzer, gauge: Rat::one() }
    }

    pub fn table(table: ATable) -> Self {
        StarCoefficients { kind: StarKind::Table(table), gauge: Rat::one() }
    }

    pub fn with_gauge(mut self, gauge: Rat) -> Self {
        self.gauge = gauge;
        self
    }

    /// The full multiplier of `[f,g]_n ħⁿ`, gauge included.
    pub fn coefficient(&self, n: u32, wk: u32, wl: u32) -> Result<Rat> {
        let base = match &self.kind {
            StarKind::Eholzer => Rat::one(),
            StarKind::Cmz(kappa) => {
                if n > 0 && (wk == 0 || wl == 0) {
                    return Err(Error::ZeroWeightPart(format!("cmz coefficient at n = {n}")));
                }
                cmz_coeff(kappa, &rat(i64::from(wk), 2), &rat(i64::from(wl), 2), n)?
            }
            StarKind::Table(table) => {
                if n > 0 && (wk == 0 || wl == 0) {
                    // Brackets with a constant vanish for n ≥ 1.
                    return Ok(Rat::zero());
                }
                let a = table.get(n, wk, wl)?;
                factorial(n) * a / (poch(&ri(i64::from(wk)), n) * poch(&ri(i64::from(wl)), n))
            }
        };
        Ok(base * pow_rat(&self.gauge, n))
    }
}

/// `Σ_{n ≤ N} terms[n] ħⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HbarSeries {
    terms: Vec<GradedForm>,
}

impl HbarSeries {
    pub fn zero(order: u32) -> Self {
        HbarSeries { terms: vec![GradedForm::zero(); order as usize + 1] }
    }

    pub fn new(terms: Vec<GradedForm>) -> Self {
        assert!(!terms.is_empty(), "an ħ-series needs the ħ⁰ term");
        HbarSeries { terms }
    }

    /// `F` placed at ħ⁰.
    pub fn constant(f: GradedForm, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.terms[0] = f;
        s
    }

    pub fn order(&self) -> u32 {
        (self.terms.len() - 1) as u32
    }

    pub fn term(&self, n: u32) -> &GradedForm {
        &self.terms[n as usize]
    }

    pub fn terms(&self) -> &[GradedForm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(GradedForm::is_zero)
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        let n = self.terms.len().min(other.terms.len());
        HbarSeries::new((0..n).map(|i| self.terms[i].add(&other.terms[i])).collect())
    }

    pub fn sub(&self, other: &HbarSeries) -> HbarSeries {
        self.add(&other.scale(&ri(-1)))
    }

    pub fn scale(&self, c: &Rat) -> HbarSeries {
        HbarSeries::new(self.terms.iter().map(|t| t.scale(c)).collect())
    }

    /// `Σ_{i+j+n ≤ N} (a_i ★_n b_j) ħ^{i+j+n}`.
    pub fn star(&self, other: &HbarSeries, coeffs: &StarCoefficients) -> Result<HbarSeries> {
        let order = self.order().min(other.order());
        let mut out = vec![GradedForm::zero(); order as usize + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                let (a, b) = (self.term(i), other.term(j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let prod = star_product(a, b, coeffs, order - i - j)?;
                for (n, t) in prod.terms.iter().enumerate() {
                    let slot = (i + j) as usize + n;
                    out[slot] = out[slot].add(t);
                }
            }
        }
        Ok(HbarSeries::new(out))
    }
}

/// `f ★ g` to order `ħ^N`.
pub fn star_product(f: &GradedForm, g: &GradedForm, coeffs: &StarCoefficients, order: u32) -> Result<HbarSeries> {
    let mut terms = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        let mut acc = GradedForm::zero();
        for a in f.parts() {
            for b in g.parts() {
                let c = coeffs.coefficient(n, a.weight, b.weight)?;
                if c.is_zero() {
                    continue;
                }
                let prec = a.prec().min(b.prec());
                let br = rc_bracket(&a.truncate(prec), &b.truncate(prec), n)?;
                acc.add_part(br.scale(&c));
            }
        }
        terms.push(acc);
    }
    Ok(HbarSeries::new(terms))
}

/// The Eholzer product `Σ_n [F, G]_n ħⁿ`.
pub fn rc_series(f: &GradedForm, g: &GradedForm, order: u32) -> HbarSeries {
    star_product(f, g, &StarCoefficients::eholzer(), order).expect("Eholzer coefficients have no poles")
}

/// `(f★g)★h - f★(g★h)` to order `ħ^N`.
pub fn assoc_residual(
    f: &GradedForm,
    g: &GradedForm,
    h: &GradedForm,
    coeffs: &StarCoefficients,
    order: u32,
) -> Result<HbarSeries> {
    let fs = HbarSeries::constant(f.clone(), order);
    let gs = HbarSeries::constant(g.clone(), order);
    let hs = HbarSeries::constant(h.clone(), order);
    let left = fs.star(&gs, coeffs)?.star(&hs, coeffs)?;
    let right = fs.star(&gs.star(&hs, coeffs)?, coeffs)?;
    Ok(left.sub(&right))
}

/// Residual of the `(n, p)` associativity identity at half weights `k, l, m`:
///
/// ```text
/// Σ_r C(n-r,p) A_{n-r}(2k+2l+2r, 2m) A_r(2k,2l) / [(2k+2l+2r)_{n-p-r} (2m)_p (2k)_r]
/// - Σ_{s≤p} C(n-s,n-p) A_{n-s}(2k, 2l+2m+2s) A_s(2l,2m) / [(2k)_{n-p} (2l+2m+2s)_{p-s} (2m)_s]
/// ```
pub fn ident_residual(table: &ATable, k: u32, l: u32, m: u32, n: u32, p: u32) -> Result<Rat> {
    ident_terms(k, l, m, n, p, |level, x, y| table.get(level, x, y))
}

/// The identity with a caller-supplied lookup, so that linear systems can
/// read coefficients of unknowns through the same code path.
pub(crate) fn ident_terms<F>(k: u32, l: u32, m: u32, n: u32, p: u32, mut a: F) -> Result<Rat>
where
    F: FnMut(u32, u32, u32) -> Result<Rat>,
{
    if p > n {
        return Err(Error::Invalid(format!("p = {p} exceeds n = {n}")));
    }
    let (wk, wl, wm) = (2 * k, 2 * l, 2 * m);
    let pr = |x: u32, e: u32| poch(&ri(i64::from(x)), e);
    let mut lhs = Rat::zero();
    for r in 0..=(n - p) {
        let c = binom_int(i64::from(n - r), i64::from(p));
        let num = a(n - r, wk + wl + 2 * r, wm)? * a(r, wk, wl)?;
        let den = pr(wk + wl + 2 * r, n - p - r) * pr(wm, p) * pr(wk, r);
        lhs += c * num / den;
    }
    let mut rhs = Rat::zero();
    for s in 0..=p {
        let c = binom_int(i64::from(n - s), i64::from(n - p));
        let num = a(n - s, wk, wl + wm + 2 * s)? * a(s, wl, wm)?;
        let den = pr(wk, n - p) * pr(wl + wm + 2 * s, p - s) * pr(wm, s);
        rhs += c * num / den;
    }
    Ok(lhs - rhs)
}

/// One evaluated identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentRecord {
    pub n: u32,
    pub p: u32,
    pub k: u32,
    pub l: u32,
    pub m: u32,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub residual: Rat,
}

/// All identities with `1 ≤ n ≤ n_max`, `0 ≤ p ≤ n`, `k,l,m ∈ 1..=grid`,
/// in lexicographic order of `(n, p, k, l, m)`.
pub fn ident_grid(table: &ATable, n_max: u32, grid: u32) -> Result<Vec<IdentRecord>> {
    let mut keys = Vec::new();
    for n in 1..=n_max {
        for p in 0..=n {
            for k in 1..=grid {
                for l in 1..=grid {
                    for m in 1..=grid {
                        keys.push((n, p, k, l, m));
                    }
                }
            }
        }
    }
    keys.into_par_iter()
        .map(|(n, p, k, l, m)| {
            ident_residual(table, k, l, m, n, p).map(|residual| IdentRecord { n, p, k, l, m, residual })
        })
        .collect()
}
