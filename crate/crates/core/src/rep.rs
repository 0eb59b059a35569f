//! The π-free sl₂ discrete-series model.
//!
//! With `r = -E₊/(8π)`, `ℓ = -2π E₋` and `W = ih` the structure constants are
//! rational:
//!
//! ```text
//! r φ_n = (2k+n) φ_{n+1},   ℓ φ_n = -n φ_{n-1},   h φ_n = (2k+2n) φ_n,
//! ```
//!
//! and the Casimir `½(E₊E₋+E₋E₊) - W²` becomes `ω = 2(rℓ+ℓr) + h²`.
//! The realisation `φ_n ↦ X̃ⁿf/(2k)_n` intertwines `r, ℓ` with the operators
//! of [`crate::nearlyholo`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactcore::linalg::Echelon;
use crate::exactcore::{binom_int, factorial, poch, ri, Rat, SparseRow};
use crate::forms::ModularForm;
use crate::nearlyholo::{shimura_x, tilde_partial, x_powers, NearlyHoloForm};

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, Rat>, key: K, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

fn lin_comb<K: Ord + Clone>(a: &BTreeMap<K, Rat>, b: &BTreeMap<K, Rat>, cb: &Rat) -> BTreeMap<K, Rat> {
    let mut out = a.clone();
    for (key, c) in b {
        add_into(&mut out, key.clone(), c * cb);
    }
    out
}

/// A vector `Σ c_n φ_n` in the module of lowest weight `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSVector {
    pub lowest_weight: u32,
    support: BTreeMap<u32, Rat>,
}

impl DSVector {
    pub fn zero(lowest_weight: u32) -> Self {
        DSVector { lowest_weight, support: BTreeMap::new() }
    }

    /// The basis vector `φ_n`.
    pub fn basis(lowest_weight: u32, n: u32) -> Self {
        Self::from_terms(lowest_weight, [(n, Rat::one())])
    }

    pub fn from_terms(lowest_weight: u32, terms: impl IntoIterator<Item = (u32, Rat)>) -> Self {
        let mut v = Self::zero(lowest_weight);
        for (n, c) in terms {
            add_into(&mut v.support, n, c);
        }
        v
    }

    pub fn support(&self) -> &BTreeMap<u32, Rat> {
        &self.support
    }

    pub fn coeff(&self, n: u32) -> Rat {
        self.support.get(&n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &DSVector) -> DSVector {
        assert_eq!(self.lowest_weight, other.lowest_weight);
        DSVector { lowest_weight: self.lowest_weight, support: lin_comb(&self.support, &other.support, &Rat::one()) }
    }

    pub fn sub(&self, other: &DSVector) -> DSVector {
        self.add(&other.scale(&ri(-1)))
    }

    pub fn scale(&self, c: &Rat) -> DSVector {
        Self::from_terms(self.lowest_weight, self.support.iter().map(|(n, x)| (*n, x * c)))
    }

    fn map_terms(&self, f: impl Fn(u32, &Rat) -> Option<(u32, Rat)>) -> DSVector {
        Self::from_terms(self.lowest_weight, self.support.iter().filter_map(|(n, c)| f(*n, c)))
    }
}

/// `r φ_n = (2k+n) φ_{n+1}`.
pub fn act_raise(v: &DSVector) -> DSVector {
    let w = i64::from(v.lowest_weight);
    v.map_terms(|n, c| Some((n + 1, c * ri(w + i64::from(n)))))
}

/// `ℓ φ_n = -n φ_{n-1}`.
pub fn act_lower(v: &DSVector) -> DSVector {
    v.map_terms(|n, c| (n > 0).then(|| (n - 1, c * ri(-i64::from(n)))))
}

/// `h φ_n = (2k+2n) φ_n`.
pub fn act_weight(v: &DSVector) -> DSVector {
    let w = i64::from(v.lowest_weight);
    v.map_terms(|n, c| Some((n, c * ri(w + 2 * i64::from(n)))))
}

/// `ω = 2(rℓ + ℓr) + h²`.
pub fn casimir(v: &DSVector) -> DSVector {
    let rl = act_raise(&act_lower(v));
    let lr = act_lower(&act_raise(v));
    let h2 = act_weight(&act_weight(v));
    rl.add(&lr).scale(&ri(2)).add(&h2)
}

/// `4k(k-1)` for lowest weight `2k`, i.e. `w(w-2)` with `w = 2k`.
pub fn casimir_eigenvalue(lowest_weight: u32) -> Rat {
    let w = i64::from(lowest_weight);
    ri(w * (w - 2))
}

/// A vector in the span of `∂̃^r f ⊗ ∂̃^s g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    pub weights: (u32, u32),
    support: BTreeMap<(u32, u32), Rat>,
}

impl TensorVector {
    pub fn zero(weights: (u32, u32)) -> Self {
        TensorVector { weights, support: BTreeMap::new() }
    }

    pub fn from_terms(weights: (u32, u32), terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut v = Self::zero(weights);
        for (key, c) in terms {
            add_into(&mut v.support, key, c);
        }
        v
    }

    pub fn support(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &TensorVector) -> TensorVector {
        assert_eq!(self.weights, other.weights);
        TensorVector { weights: self.weights, support: lin_comb(&self.support, &other.support, &Rat::one()) }
    }

    pub fn scale(&self, c: &Rat) -> TensorVector {
        Self::from_terms(self.weights, self.support.iter().map(|(key, x)| (*key, x * c)))
    }
}

/// `(1/n!) Σ_r (-1)^r C(n,r) ∂̃^r f ⊗ ∂̃^{n-r} g`.
pub fn lowest_weight_tensor(wk: u32, wl: u32, n: u32) -> TensorVector {
    let inv = Rat::one() / factorial(n);
    TensorVector::from_terms(
        (wk, wl),
        (0..=n).map(|r| {
            let sign = if r % 2 == 0 { ri(1) } else { ri(-1) };
            ((r, n - r), sign * binom_int(i64::from(n), i64::from(r)) * &inv)
        }),
    )
}

/// `Δℓ = ℓ⊗1 + 1⊗ℓ`.
pub fn tensor_lower(v: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(v.weights);
    for (&(r, s), c) in &v.support {
        if r > 0 {
            add_into(&mut out.support, (r - 1, s), c * ri(-i64::from(r)));
        }
        if s > 0 {
            add_into(&mut out.support, (r, s - 1), c * ri(-i64::from(s)));
        }
    }
    out
}

/// Realises `∂̃^r f ⊗ ∂̃^s g ↦ (X̃^r f/(2k)_r)(X̃^s g/(2l)_s)` and sums.
///
/// The vector must be homogeneous in `r+s`, since the image has a single
/// weight.
pub fn realize_and_multiply(v: &TensorVector, f: &ModularForm, g: &ModularForm) -> Result<NearlyHoloForm> {
    if v.weights != (f.weight, g.weight) {
        return Err(Error::WeightMismatch {
            expected: vec![v.weights.0, v.weights.1],
            got: vec![f.weight, g.weight],
        });
    }
    let degrees: Vec<u32> = v.support.keys().map(|(r, s)| r + s).collect();
    let degree = degrees.first().copied().unwrap_or(0);
    if degrees.iter().any(|&d| d != degree) {
        return Err(Error::Invalid("tensor vector is not homogeneous".into()));
    }
    let prec = f.prec().min(g.prec());
    let weight = i64::from(f.weight + g.weight) + 2 * i64::from(degree);
    let top = v.support.keys().map(|&(r, s)| r.max(s)).max().unwrap_or(0);
    let fx = x_powers(&NearlyHoloForm::from(f), top);
    let gx = x_powers(&NearlyHoloForm::from(g), top);
    let mut acc = NearlyHoloForm::zero(weight, prec);
    for (&(r, s), c) in &v.support {
        let denom = poch(&ri(i64::from(f.weight)), r) * poch(&ri(i64::from(g.weight)), s);
        if denom.is_zero() {
            return Err(Error::Pole(format!("(2k)_r (2l)_s vanishes at r = {r}, s = {s}")));
        }
        acc = acc.add(&fx[r as usize].mul(&gx[s as usize]).scale(&(c / denom)));
    }
    Ok(acc)
}

/// A vector in the span of `∂̃^r f ∂̃^s g ∂̃^t h`, treated as a free basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleVector {
    pub weights: (u32, u32, u32),
    support: BTreeMap<(u32, u32, u32), Rat>,
}

impl TripleVector {
    pub fn zero(weights: (u32, u32, u32)) -> Self {
        TripleVector { weights, support: BTreeMap::new() }
    }

    pub fn basis(weights: (u32, u32, u32), key: (u32, u32, u32)) -> Self {
        Self::from_terms(weights, [(key, Rat::one())])
    }

    pub fn from_terms(weights: (u32, u32, u32), terms: impl IntoIterator<Item = ((u32, u32, u32), Rat)>) -> Self {
        let mut v = Self::zero(weights);
        for (key, c) in terms {
            add_into(&mut v.support, key, c);
        }
        v
    }

    pub fn support(&self) -> &BTreeMap<(u32, u32, u32), Rat> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &TripleVector) -> TripleVector {
        assert_eq!(self.weights, other.weights);
        TripleVector { weights: self.weights, support: lin_comb(&self.support, &other.support, &Rat::one()) }
    }

    pub fn scale(&self, c: &Rat) -> TripleVector {
        Self::from_terms(self.weights, self.support.iter().map(|(key, x)| (*key, x * c)))
    }
}

/// `(r,s,t) ↦ -[r(r-1,s,t) + s(r,s-1,t) + t(r,s,t-1)]`.
pub fn triple_lower(v: &TripleVector) -> TripleVector {
    let mut out = TripleVector::zero(v.weights);
    for (&(r, s, t), c) in &v.support {
        if r > 0 {
            add_into(&mut out.support, (r - 1, s, t), c * ri(-i64::from(r)));
        }
        if s > 0 {
            add_into(&mut out.support, (r, s - 1, t), c * ri(-i64::from(s)));
        }
        if t > 0 {
            add_into(&mut out.support, (r, s, t - 1), c * ri(-i64::from(t)));
        }
    }
    out
}

/// The basis of the degree-`n` slice, in lexicographic order.
pub fn triple_slice(n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in 0..=n - r {
            out.push((r, s, n - r - s));
        }
    }
    out
}

pub fn triple_slice_dim(n: u32) -> usize {
    triple_slice(n).len()
}

/// Rank of the lowering map from the degree-`n` slice to degree `n-1`.
pub fn triple_lower_rank(weights: (u32, u32, u32), n: u32) -> usize {
    if n == 0 {
        return 0;
    }
    let target: BTreeMap<(u32, u32, u32), usize> =
        triple_slice(n - 1).into_iter().enumerate().map(|(i, key)| (key, i)).collect();
    // Rank of the matrix whose rows are the images of the basis vectors.
    let mut ech = Echelon::new();
    for key in triple_slice(n) {
        let image = triple_lower(&TripleVector::basis(weights, key));
        let row: SparseRow = image.support.iter().map(|(k, c)| (target[k], c.clone())).collect();
        let _ = ech.push(row, Rat::zero());
    }
    ech.rank()
}

/// Nullity of the lowering map on the degree-`n` slice.
pub fn triple_kernel_dim(weights: (u32, u32, u32), n: u32) -> usize {
    triple_slice_dim(n) - triple_lower_rank(weights, n)
}

/// Explicit preimage of the basis vector `(r,s,t)` of degree `n-1`:
///
/// ```text
/// P = Σ_{i=0}^{n-1-r} (-1)^i i!/((r+1)_{i+1}) Σ_{j=0}^{i} C(s,i-j) C(t,j) (r+1+i, s-i+j, t-j)
/// ```
///
/// so that `triple_lower(P) = -(r,s,t)`.
pub fn triple_preimage(weights: (u32, u32, u32), target: (u32, u32, u32)) -> TripleVector {
    let (r, s, t) = target;
    let mut out = TripleVector::zero(weights);
    for i in 0..=(s + t) {
        let sign = if i % 2 == 0 { ri(1) } else { ri(-1) };
        let outer = sign * factorial(i) / poch(&ri(i64::from(r) + 1), i + 1);
        for j in 0..=i {
            if j > t || i - j > s {
                continue;
            }
            let c = &outer * binom_int(i64::from(s), i64::from(i - j)) * binom_int(i64::from(t), i64::from(j));
            add_into(&mut out.support, (r + 1 + i, s - (i - j), t - j), c);
        }
    }
    out
}

/// The concrete `ξ_{n,p}` for forms `f, g, h`:
///
/// ```text
/// u = Σ_r (-1)^r C(N,r) ∂̃^{N-r} f ∂̃^r g,              N = n - p,
/// ξ = Σ_s (-1)^s C(p,s) X̃^s u / (w_u)_s · ∂̃^{p-s} h,   w_u = 2k+2l+2N.
/// ```
pub fn xi_vector_concrete(
    f: &ModularForm,
    g: &ModularForm,
    h: &ModularForm,
    n: u32,
    p: u32,
) -> Result<NearlyHoloForm> {
    if p > n {
        return Err(Error::Invalid(format!("p = {p} exceeds n = {n}")));
    }
    let big_n = n - p;
    let (nf, ng, nh) = (NearlyHoloForm::from(f), NearlyHoloForm::from(g), NearlyHoloForm::from(h));
    let prec = f.prec().min(g.prec()).min(h.prec());
    let wu = i64::from(f.weight + g.weight) + 2 * i64::from(big_n);
    let mut u = NearlyHoloForm::zero(wu, prec);
    for r in 0..=big_n {
        let sign = if r % 2 == 0 { ri(1) } else { ri(-1) };
        let c = sign * binom_int(i64::from(big_n), i64::from(r));
        let term = tilde_partial(&nf, big_n - r)?.mul(&tilde_partial(&ng, r)?);
        u = u.add(&term.scale(&c));
    }
    let mut xi = NearlyHoloForm::zero(wu + i64::from(h.weight) + 2 * i64::from(p), prec);
    let mut xu = u;
    for s in 0..=p {
        let sign = if s % 2 == 0 { ri(1) } else { ri(-1) };
        let denom = poch(&ri(wu), s);
        if denom.is_zero() {
            return Err(Error::Pole(format!("({wu})_{s} vanishes")));
        }
        let c = sign * binom_int(i64::from(p), i64::from(s)) / denom;
        xi = xi.add(&xu.mul(&tilde_partial(&nh, p - s)?).scale(&c));
        xu = shimura_x(&xu);
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{delta, e4, e6};
    use crate::nearlyholo::{lower, rc_bracket};

    #[test]
    fn raise_lower_weight_examples() {
        let p0 = DSVector::basis(4, 0);
        assert_eq!(act_raise(&p0), DSVector::from_terms(4, [(1, ri(4))]));
        assert_eq!(act_raise(&act_raise(&p0)), DSVector::from_terms(4, [(2, ri(20))]));
        assert!(act_raise(&DSVector::zero(4)).is_zero());
        assert!(act_lower(&p0).is_zero());
        assert_eq!(act_lower(&DSVector::basis(4, 1)), DSVector::from_terms(4, [(0, ri(-1))]));
        assert_eq!(act_weight(&p0), DSVector::from_terms(4, [(0, ri(4))]));
        assert_eq!(act_weight(&DSVector::basis(4, 3)), DSVector::from_terms(4, [(3, ri(10))]));
        let mixed = DSVector::from_terms(4, [(1, ri(1)), (5, ri(1))]);
        assert_eq!(act_weight(&mixed), DSVector::from_terms(4, [(1, ri(6)), (5, ri(14))]));
    }

    #[test]
    fn casimir_is_scalar() {
        for (w, ev) in [(2, 0), (4, 8), (6, 24), (12, 120)] {
            assert_eq!(casimir_eigenvalue(w), ri(ev));
            for n in 0..=10 {
                let v = DSVector::basis(w, n);
                assert_eq!(casimir(&v), v.scale(&ri(ev)), "w {w} n {n}");
            }
        }
    }

    #[test]
    fn lowest_tensor_examples() {
        let t0 = lowest_weight_tensor(4, 6, 0);
        assert_eq!(t0, TensorVector::from_terms((4, 6), [((0, 0), ri(1))]));
        let t1 = lowest_weight_tensor(4, 6, 1);
        assert_eq!(t1, TensorVector::from_terms((4, 6), [((0, 1), ri(1)), ((1, 0), ri(-1))]));
        for n in 0..=8 {
            assert!(tensor_lower(&lowest_weight_tensor(4, 12, n)).is_zero());
        }
        let fg = TensorVector::from_terms((4, 6), [((0, 0), ri(1))]);
        assert!(tensor_lower(&fg).is_zero());
        let df = TensorVector::from_terms((4, 6), [((1, 0), ri(1))]);
        assert_eq!(tensor_lower(&df), fg.scale(&ri(-1)));
    }

    #[test]
    fn realisation_gives_normalised_bracket() {
        let p = 20;
        let pairs = [(e4(p), e6(p)), (e4(p), delta(p).unwrap())];
        for (f, g) in &pairs {
            for n in 0..=4 {
                let v = lowest_weight_tensor(f.weight, g.weight, n);
                let got = realize_and_multiply(&v, f, g).unwrap();
                let scale = poch(&ri(i64::from(f.weight)), n) * poch(&ri(i64::from(g.weight)), n);
                let want = rc_bracket(f, g, n).unwrap().scale(&(Rat::one() / scale));
                assert_eq!(got.to_form().unwrap(), want, "n {n}");
            }
        }
        let bad = lowest_weight_tensor(6, 4, 1);
        assert!(realize_and_multiply(&bad, &e4(p), &e6(p)).is_err());
    }

    #[test]
    fn triple_dimensions() {
        assert!(triple_lower(&TripleVector::basis((4, 4, 6), (0, 0, 0))).is_zero());
        assert_eq!(
            triple_lower(&TripleVector::basis((4, 4, 6), (1, 0, 0))),
            TripleVector::from_terms((4, 4, 6), [((0, 0, 0), ri(-1))])
        );
        for n in 0..=8u32 {
            let dim = ((n + 1) * (n + 2) / 2) as usize;
            assert_eq!(triple_slice_dim(n), dim);
            assert_eq!(triple_kernel_dim((4, 4, 6), n), n as usize + 1);
            if n > 0 {
                assert_eq!(triple_lower_rank((4, 4, 6), n), triple_slice_dim(n - 1));
            }
        }
    }

    #[test]
    fn preimages() {
        let w = (4, 6, 12);
        for n in 1..=5u32 {
            for target in triple_slice(n - 1) {
                let pre = triple_preimage(w, target);
                assert!(pre.support().keys().all(|k| k.0 > target.0));
                assert_eq!(triple_lower(&pre), TripleVector::basis(w, target).scale(&ri(-1)), "{target:?}");
            }
        }
        assert_eq!(triple_preimage(w, (0, 0, 0)), TripleVector::basis(w, (1, 0, 0)));
    }

    #[test]
    fn xi_is_lowest() {
        let p = 15;
        let triples = [(e4(p), e4(p), e6(p)), (e4(p), e6(p), delta(p).unwrap())];
        for (f, g, h) in &triples {
            for n in 0..=3 {
                for q in 0..=n {
                    let xi = xi_vector_concrete(f, g, h, n, q).unwrap();
                    assert!(lower(&xi).is_zero(), "n {n} p {q}");
                    assert!(xi.is_holomorphic());
                }
            }
        }
        let fgh = xi_vector_concrete(&e4(p), &e4(p), &e6(p), 0, 0).unwrap();
        assert_eq!(fgh.to_form().unwrap(), e4(p).mul(&e4(p)).mul(&e6(p)));
    }
}
