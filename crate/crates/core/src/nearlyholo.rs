//! Nearly-holomorphic forms as polynomials in `Y = 1/(4πy)`.
//!
//! The operators are the π-free rescalings of the Lie algebra action:
//! `X̃ = -E₊/(8π)` (the Shimura operator) and `ℓ = -2π E₋`, which on the
//! formal variable is plain differentiation in `Y`. With these scalings
//! `[ℓ, X̃] = -w` on a form of weight `w`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::{binom, factorial, poch, ri, QSeries, Rat};
use crate::forms::{eta_log_derivative, ModularForm};

/// `Σ_j c_j Y^j` of a fixed weight. Trailing zero coefficients are trimmed
/// and all coefficients share one precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearlyHoloForm {
    weight: i64,
    ypoly: Vec<QSeries>,
}

impl NearlyHoloForm {
    /// Normalises `ypoly`: truncates to the smallest precision and trims.
    pub fn new(weight: i64, ypoly: Vec<QSeries>) -> Self {
        assert!(!ypoly.is_empty(), "ypoly needs at least one coefficient");
        let prec = ypoly.iter().map(QSeries::prec).min().unwrap_or(1);
        let mut ypoly: Vec<QSeries> = ypoly.into_iter().map(|c| c.truncate(prec)).collect();
        while ypoly.len() > 1 && ypoly.last().is_some_and(QSeries::is_zero) {
            ypoly.pop();
        }
        NearlyHoloForm { weight, ypoly }
    }

    pub fn zero(weight: i64, prec: usize) -> Self {
        Self::new(weight, vec![QSeries::zero(prec)])
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn prec(&self) -> usize {
        self.ypoly[0].prec()
    }

    pub fn ypoly(&self) -> &[QSeries] {
        &self.ypoly
    }

    /// Coefficient of `Y^j` (zero beyond the degree).
    pub fn ycoeff(&self, j: usize) -> QSeries {
        self.ypoly
            .get(j)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.prec()))
    }

    pub fn y_degree(&self) -> usize {
        self.ypoly.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.ypoly.len() == 1 && self.ypoly[0].is_zero()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.ypoly.len() == 1
    }

    /// The `Y⁰` part as a modular form, if the form is holomorphic.
    pub fn to_form(&self) -> Option<ModularForm> {
        if !self.is_holomorphic() || self.weight < 0 {
            return None;
        }
        Some(ModularForm::new(self.weight as u32, self.ypoly[0].clone()))
    }

    /// Same coefficients with a different weight label.
    pub fn with_weight(&self, weight: i64) -> Self {
        NearlyHoloForm { weight, ypoly: self.ypoly.clone() }
    }

    /// Equality of the Y-polynomials, ignoring the weight label.
    pub fn same_ypoly(&self, other: &NearlyHoloForm) -> bool {
        let prec = self.prec().min(other.prec());
        let n = self.ypoly.len().max(other.ypoly.len());
        (0..n).all(|j| self.ycoeff(j).truncate(prec) == other.ycoeff(j).truncate(prec))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.weight, self.ypoly.iter().map(|s| s.scale(c)).collect())
    }

    pub fn add(&self, other: &NearlyHoloForm) -> Self {
        assert_eq!(self.weight, other.weight, "adding nearly-holomorphic forms of different weight");
        let n = self.ypoly.len().max(other.ypoly.len());
        Self::new(self.weight, (0..n).map(|j| &self.ycoeff(j) + &other.ycoeff(j)).collect())
    }

    pub fn sub(&self, other: &NearlyHoloForm) -> Self {
        self.add(&other.scale(&ri(-1)))
    }

    /// Product of Y-polynomials; weights add.
    pub fn mul(&self, other: &NearlyHoloForm) -> Self {
        let prec = self.prec().min(other.prec());
        let mut out = vec![QSeries::zero(prec); self.ypoly.len() + other.ypoly.len() - 1];
        for (i, a) in self.ypoly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.ypoly.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.weight + other.weight, out)
    }
}

impl From<&ModularForm> for NearlyHoloForm {
    fn from(f: &ModularForm) -> Self {
        NearlyHoloForm::new(i64::from(f.weight), vec![f.series.clone()])
    }
}

impl fmt::Display for NearlyHoloForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}:", self.weight)?;
        for (j, c) in self.ypoly.iter().enumerate() {
            if !c.is_zero() || j == 0 {
                write!(f, " [Y^{j}] {c}")?;
            }
        }
        Ok(())
    }
}

fn check_same_prec(f: &ModularForm, g: &ModularForm) -> Result<()> {
    if f.prec() != g.prec() {
        return Err(Error::Precision { min: f.prec().max(g.prec()), got: f.prec().min(g.prec()) });
    }
    Ok(())
}

/// The Rankin-Cohen bracket
/// `[f,g]_n = Σ_r (-1)^r C(n+2k-1, n-r) C(n+2l-1, r) D^r f · D^{n-r} g`.
pub fn rc_bracket(f: &ModularForm, g: &ModularForm, n: u32) -> Result<ModularForm> {
    check_same_prec(f, g)?;
    let (wk, wl) = (i64::from(f.weight), i64::from(g.weight));
    let n64 = i64::from(n);
    let df: Vec<QSeries> = (0..=n).map(|r| f.series.derive_n(r)).collect();
    let dg: Vec<QSeries> = (0..=n).map(|r| g.series.derive_n(r)).collect();
    let mut acc = QSeries::zero(f.prec());
    for r in 0..=n {
        let mut c = binom(&ri(n64 + wk - 1), n - r) * binom(&ri(n64 + wl - 1), r);
        if r % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&df[r as usize] * &dg[(n - r) as usize]).scale(&c);
    }
    Ok(ModularForm::new(f.weight + g.weight + 2 * n, acc))
}

/// The Serre derivative `Xf = Df - k·(D log η⁴)·f` for `f` of weight `2k`.
pub fn ramanujan_x(f: &ModularForm) -> ModularForm {
    let k = ri(f.k());
    let eta = eta_log_derivative(f.prec());
    let series = &f.series.derive() - &(&eta * &f.series).scale(&k);
    ModularForm::new(f.weight + 2, series)
}

/// `f_0 = f`, `f_{r+1} = X f_r + r(r+2k-1) Φ f_{r-1}` for `r < r_max`.
pub fn zagier_sequence(f: &ModularForm, phi: &ModularForm, r_max: u32) -> Result<Vec<ModularForm>> {
    if phi.weight != 4 {
        return Err(Error::WeightMismatch { expected: vec![4], got: vec![phi.weight] });
    }
    let wk = i64::from(f.weight);
    let mut seq = vec![f.clone()];
    for r in 0..r_max {
        let ri_ = r as usize;
        let mut next = ramanujan_x(&seq[ri_]);
        if r > 0 {
            let c = ri(i64::from(r) * (i64::from(r) + wk - 1));
            let term = phi.mul(&seq[ri_ - 1]).scale(&c);
            next = next.truncate(term.prec()).add(&term.truncate(next.prec()));
        }
        seq.push(next);
    }
    Ok(seq)
}

/// `Σ_r (-1)^r C(n+2k-1, n-r) C(n+2l-1, r) f_r g_{n-r}` built from the
/// sequences of [`zagier_sequence`].
pub fn canonical_rc(f: &ModularForm, g: &ModularForm, n: u32, phi: &ModularForm) -> Result<ModularForm> {
    check_same_prec(f, g)?;
    let fs = zagier_sequence(f, phi, n)?;
    let gs = zagier_sequence(g, phi, n)?;
    let (wk, wl) = (i64::from(f.weight), i64::from(g.weight));
    let n64 = i64::from(n);
    let prec = f.prec().min(phi.prec());
    let mut acc = QSeries::zero(prec);
    for r in 0..=n {
        let mut c = binom(&ri(n64 + wk - 1), n - r) * binom(&ri(n64 + wl - 1), r);
        if r % 2 == 1 {
            c = -c;
        }
        acc = &acc + &(&fs[r as usize].series * &gs[(n - r) as usize].series).scale(&c);
    }
    Ok(ModularForm::new(f.weight + g.weight + 2 * n, acc))
}

/// `X̃(Σ c_j Y^j) = Σ (Dc_j) Y^j + (j - w) c_j Y^{j+1}` on weight `w`.
pub fn shimura_x(form: &NearlyHoloForm) -> NearlyHoloForm {
    let prec = form.prec();
    let w = form.weight;
    let mut out = vec![QSeries::zero(prec); form.ypoly.len() + 1];
    for (j, c) in form.ypoly.iter().enumerate() {
        out[j] = &out[j] + &c.derive();
        out[j + 1] = &out[j + 1] + &c.scale(&ri(j as i64 - w));
    }
    NearlyHoloForm::new(w + 2, out)
}

pub fn shimura_x_pow(form: &NearlyHoloForm, n: u32) -> NearlyHoloForm {
    (0..n).fold(form.clone(), |acc, _| shimura_x(&acc))
}

/// `ℓ(Σ c_j Y^j) = Σ j c_j Y^{j-1}`, lowering the weight by 2.
pub fn lower(form: &NearlyHoloForm) -> NearlyHoloForm {
    let prec = form.prec();
    let out: Vec<QSeries> = if form.ypoly.len() == 1 {
        vec![QSeries::zero(prec)]
    } else {
        form.ypoly[1..]
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&ri(j as i64 + 1)))
            .collect()
    };
    NearlyHoloForm::new(form.weight - 2, out)
}

/// Both sides of `D^m f = m! Σ_r Y^r X̃^{m-r} f / (m-r)! · C(2k+m-1, r)`.
///
/// The two sides have different weight labels, so only the polynomials in
/// `Y` are compared.
pub fn der_identity_sides(f: &ModularForm, m: u32) -> (NearlyHoloForm, NearlyHoloForm) {
    let lhs = NearlyHoloForm::new(i64::from(f.weight), vec![f.series.derive_n(m)]);
    let base = NearlyHoloForm::from(f);
    let wk = i64::from(f.weight);
    let prec = f.prec();
    let mut rhs: Vec<QSeries> = vec![QSeries::zero(prec)];
    let mut xpow = base.clone();
    // xpow runs over X̃^{m-r} f for r = m, m-1, ..., 0.
    for r in (0..=m).rev() {
        let c = factorial(m) / factorial(m - r) * binom(&ri(wk + i64::from(m) - 1), r);
        let shifted = xpow.scale(&c);
        let need = shifted.ypoly.len() + r as usize;
        if rhs.len() < need {
            rhs.resize(need, QSeries::zero(prec));
        }
        for (j, s) in shifted.ypoly.iter().enumerate() {
            rhs[j + r as usize] = &rhs[j + r as usize] + s;
        }
        if r > 0 {
            xpow = shimura_x(&xpow);
        }
    }
    (lhs, NearlyHoloForm::new(i64::from(f.weight), rhs))
}

pub fn verify_der_identity(f: &ModularForm, m: u32) -> bool {
    let (lhs, rhs) = der_identity_sides(f, m);
    lhs.same_ypoly(&rhs)
}

/// `Σ_r (-1)^r C(2k+n-1, n-r) C(2l+n-1, r) X̃^r f · X̃^{n-r} g`.
pub fn combi_bracket(f: &ModularForm, g: &ModularForm, n: u32) -> Result<NearlyHoloForm> {
    check_same_prec(f, g)?;
    let (wk, wl) = (i64::from(f.weight), i64::from(g.weight));
    let n64 = i64::from(n);
    let fx = x_powers(&NearlyHoloForm::from(f), n);
    let gx = x_powers(&NearlyHoloForm::from(g), n);
    let mut acc = NearlyHoloForm::zero(wk + wl + 2 * n64, f.prec());
    for r in 0..=n {
        let mut c = binom(&ri(wk + n64 - 1), n - r) * binom(&ri(wl + n64 - 1), r);
        if r % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&fx[r as usize].mul(&gx[(n - r) as usize]).scale(&c));
    }
    Ok(acc)
}

/// `[f, X̃f, …, X̃ⁿf]`.
pub fn x_powers(f: &NearlyHoloForm, n: u32) -> Vec<NearlyHoloForm> {
    let mut out = vec![f.clone()];
    for _ in 0..n {
        let next = shimura_x(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// `∂̃^a f = X̃^a f / (2k)_a`, the normalised basis vector `φ_a`.
pub fn tilde_partial(f: &NearlyHoloForm, a: u32) -> Result<NearlyHoloForm> {
    let p = poch(&ri(f.weight), a);
    if p.is_zero() {
        return Err(Error::Pole(format!("(w)_a vanishes for w = {}, a = {a}", f.weight)));
    }
    Ok(shimura_x_pow(f, a).scale(&(Rat::from_integer(1.into()) / p)))
}
