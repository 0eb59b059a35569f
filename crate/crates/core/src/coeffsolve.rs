//! Re-derivation of the deformation coefficients `A_n` by exact linear algebra.
//!
//! Coefficients live on a grid of weights: `A_n(2x, 2y)` is stored under the
//! key `(n, 2x, 2y)`. `A₀ ≡ 1` is implicit.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{binom_int, factorial, poch, rat, ri, Rat, Solution, SparseRow};
use crate::starprod::{cmz_coeff, ident_terms};

/// Values `A_n(wx, wy)` for `1 ≤ n ≤ max_n` on some finite set of weights.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ATable {
    pub max_n: u32,
    /// Largest half weight stored.
    pub grid_bound: u32,
    values: BTreeMap<(u32, u32, u32), Rat>,
}

impl ATable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fills every `(n, 2x, 2y)` with `1 ≤ n ≤ max_n`, `1 ≤ x, y ≤ bound`.
    pub fn from_fn<F>(max_n: u32, bound: u32, f: F) -> Result<Self>
    where
        F: Fn(u32, u32, u32) -> Result<Rat> + Sync,
    {
        let keys: Vec<(u32, u32, u32)> = (1..=max_n)
            .flat_map(|n| (1..=bound).flat_map(move |x| (1..=bound).map(move |y| (n, 2 * x, 2 * y))))
            .collect();
        let values = keys
            .into_par_iter()
            .map(|(n, wx, wy)| f(n, wx, wy).map(|v| ((n, wx, wy), v)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ATable { max_n, grid_bound: bound, values })
    }

    pub fn insert(&mut self, n: u32, wx: u32, wy: u32, value: Rat) {
        self.max_n = self.max_n.max(n);
        self.grid_bound = self.grid_bound.max(wx / 2).max(wy / 2);
        self.values.insert((n, wx, wy), value);
    }

    pub fn contains(&self, n: u32, wx: u32, wy: u32) -> bool {
        n == 0 || self.values.contains_key(&(n, wx, wy))
    }

    /// `A_n(wx, wy)`, with `A₀ = 1`.
    pub fn get(&self, n: u32, wx: u32, wy: u32) -> Result<Rat> {
        if n == 0 {
            return Ok(Rat::one());
        }
        self.values
            .get(&(n, wx, wy))
            .cloned()
            .ok_or(Error::MissingEntry { n: n as usize, x: wx, y: wy })
    }

    /// The stored `(wx, wy, value)` at level `n`.
    pub fn level(&self, n: u32) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.values
            .range((n, 0, 0)..=(n, u32::MAX, u32::MAX))
            .map(|(&(_, x, y), v)| (x, y, v))
    }
}

/// `A₂(x, y) = ½·x(x+1)·y(y+1) + c·xy/(x+y+1)` on weights `x = 2k`, `y = 2l`.
pub fn a2_family(c: &Rat) -> impl Fn(u32, u32) -> Rat + Sync {
    let c = c.clone();
    move |wx, wy| {
        let (x, y) = (ri(i64::from(wx)), ri(i64::from(wy)));
        let special = rat(1, 2) * &x * (&x + ri(1)) * &y * (&y + ri(1));
        special + &c * &x * &y / (&x + &y + ri(1))
    }
}

/// `A₁(x, y) = xy`, i.e. `4kl`.
pub fn a1(wx: u32, wy: u32) -> Rat {
    ri(i64::from(wx) * i64::from(wy))
}

/// `A_n = (-4)ⁿ t_n^κ(k,l) (2k)_n (2l)_n / n!` on half weights up to `bound`.
pub fn induced_a_table(kappa: &Rat, max_n: u32, bound: u32) -> Result<ATable> {
    ATable::from_fn(max_n, bound, |n, wx, wy| induced_a(kappa, n, wx, wy))
}

pub fn induced_a(kappa: &Rat, n: u32, wx: u32, wy: u32) -> Result<Rat> {
    let t = cmz_coeff(kappa, &rat(i64::from(wx), 2), &rat(i64::from(wy), 2), n)?;
    let gauge = (0..n).fold(Rat::one(), |acc, _| acc * ri(-4));
    Ok(gauge * t * poch(&ri(i64::from(wx)), n) * poch(&ri(i64::from(wy)), n) / factorial(n))
}

/// Linear constraints on the unknowns `A_n(wx, wy)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinSystem {
    pub n: u32,
    /// Unknown `i` is `A_n(variables[i])`.
    pub variables: Vec<(u32, u32)>,
    pub rows: Vec<(SparseRow, Rat)>,
}

impl LinSystem {
    pub fn index_of(&self, wx: u32, wy: u32) -> Option<usize> {
        self.variables.iter().position(|&v| v == (wx, wy))
    }

    /// Adds the constraint `A_n(wx, wy) = value`.
    pub fn fix(&mut self, wx: u32, wy: u32, value: Rat) -> Result<()> {
        let i = self
            .index_of(wx, wy)
            .ok_or(Error::MissingEntry { n: self.n as usize, x: wx, y: wy })?;
        self.rows.push((SparseRow::from([(i, Rat::one())]), value));
        Ok(())
    }
}

/// Exact solution of a system; see [`Solution`].
pub fn solve(sys: &LinSystem) -> Result<Solution> {
    crate::exactcore::linalg::solve_sparse(sys.rows.iter().cloned(), sys.variables.len())
}

/// Residual of one identity as an affine form in the level-`n` unknowns.
fn ident_affine(
    known: &ATable,
    n: u32,
    (k, l, m, p): (u32, u32, u32, u32),
) -> Result<(BTreeMap<(u32, u32), Rat>, Rat)> {
    let lookup = |unknown: Option<(u32, u32)>| {
        move |level: u32, x: u32, y: u32| -> Result<Rat> {
            if level == n {
                Ok(if unknown == Some((x, y)) { Rat::one() } else { Rat::zero() })
            } else {
                known.get(level, x, y)
            }
        }
    };
    let mut referenced = BTreeSet::new();
    ident_terms(k, l, m, n, p, |level, x, y| {
        if level == n {
            referenced.insert((x, y));
            Ok(Rat::zero())
        } else {
            known.get(level, x, y)
        }
    })?;
    let constant = ident_terms(k, l, m, n, p, lookup(None))?;
    let mut form = BTreeMap::new();
    for key in referenced {
        let c = ident_terms(k, l, m, n, p, lookup(Some(key)))? - &constant;
        if !c.is_zero() {
            form.insert(key, c);
        }
    }
    Ok((form, constant))
}

fn system_from_rows(n: u32, rows: Vec<(BTreeMap<(u32, u32), Rat>, Rat)>) -> LinSystem {
    let variables: Vec<(u32, u32)> = rows
        .iter()
        .flat_map(|(f, _)| f.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<(u32, u32), usize> = variables.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rows = rows
        .into_iter()
        .filter(|(f, c)| !f.is_empty() || !c.is_zero())
        .map(|(f, c)| (f.into_iter().map(|(key, v)| (index[&key], v)).collect(), -c))
        .collect();
    LinSystem { n, variables, rows }
}

fn build_rows<I>(known: &ATable, n: u32, triples: I) -> Result<LinSystem>
where
    I: IntoIterator<Item = (u32, u32, u32)>,
{
    let keys: Vec<(u32, u32, u32, u32)> = triples
        .into_iter()
        .flat_map(|(k, l, m)| (0..=n).map(move |p| (k, l, m, p)))
        .collect();
    let rows = keys
        .into_par_iter()
        .map(|key| ident_affine(known, n, key))
        .collect::<Result<Vec<_>>>()?;
    Ok(system_from_rows(n, rows))
}

/// One row per `(k, l, m, p)` with `k, l, m ∈ 1..=X`, `0 ≤ p ≤ n`; unknowns are
/// the level-`n` values referenced by these rows. Lower levels come from
/// `known`; a missing pair is reported by name.
pub fn build_ident_system(n: u32, grid: u32, known: &ATable) -> Result<LinSystem> {
    let triples = (1..=grid).flat_map(|k| (1..=grid).flat_map(move |l| (1..=grid).map(move |m| (k, l, m))));
    build_rows(known, n, triples)
}

/// Rows with `k + l + m ≤ s`, which reference exactly the pairs with
/// half-weight sum `≤ s`.
fn build_triangle_system(n: u32, s: u32, known: &ATable) -> Result<LinSystem> {
    let triples = (1..=s).flat_map(move |k| {
        (1..=s).flat_map(move |l| (1..=s).filter(move |m| k + l + m <= s).map(move |m| (k, l, m)))
    });
    build_rows(known, n, triples)
}

/// Nullity of each solved level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub n: u32,
    pub unknowns: usize,
    pub rows: usize,
    pub nullity: usize,
}

/// `A₁ = xy`, `A₂` from [`a2_family`], and `A₃..A_{n_max}` solved level by
/// level on triangles `x + y ≤ base + (n_max - j)` of half weights.
///
/// Levels above 2 must come out uniquely determined; otherwise an error is
/// returned.
pub fn solve_chain(c: &Rat, n_max: u32, base: u32) -> Result<(ATable, Vec<LevelReport>)> {
    let mut table = ATable::new();
    let reach = |j: u32| base + n_max.saturating_sub(j);
    let a2 = a2_family(c);
    for j in 1..=n_max.min(2) {
        let s = reach(j);
        for x in 1..s {
            for y in 1..=(s - x) {
                let v = if j == 1 { a1(2 * x, 2 * y) } else { a2(2 * x, 2 * y) };
                table.insert(j, 2 * x, 2 * y, v);
            }
        }
    }
    let mut reports = Vec::new();
    for j in 3..=n_max {
        let sys = build_triangle_system(j, reach(j), &table)?;
        let sol = solve(&sys)?;
        reports.push(LevelReport { n: j, unknowns: sys.variables.len(), rows: sys.rows.len(), nullity: sol.nullity() });
        if sol.nullity() > 0 {
            return Err(Error::Invalid(format!("level {j} is not determined (nullity {})", sol.nullity())));
        }
        for (i, &(wx, wy)) in sys.variables.iter().enumerate() {
            table.insert(j, wx, wy, sol.particular[i].clone());
        }
    }
    Ok((table, reports))
}

/// Result of the global solve at a single level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalSolve {
    pub n: u32,
    pub grid: u32,
    pub unknowns: usize,
    pub rows: usize,
    pub nullity: usize,
    /// Kernel basis over `variables` when the nullity is positive.
    #[serde(skip)]
    pub kernel: Vec<Vec<Rat>>,
    #[serde(skip)]
    pub variables: Vec<(u32, u32)>,
}

/// Builds and solves the level-`n` system on grid `X`, with lower levels
/// taken from the chain solver (`A₂` from `c`).
pub fn global_solve(n: u32, grid: u32, c: &Rat) -> Result<GlobalSolve> {
    let known = if n <= 1 {
        ATable::new()
    } else {
        solve_chain(c, n - 1, 3 * grid + 1)?.0
    };
    let sys = build_ident_system(n, grid, &known)?;
    let sol = solve(&sys)?;
    Ok(GlobalSolve {
        n,
        grid,
        unknowns: sys.variables.len(),
        rows: sys.rows.len(),
        nullity: sol.nullity(),
        kernel: sol.kernel,
        variables: sys.variables,
    })
}

/// Whether a kernel vector over `variables` is proportional to
/// `x·y/(x+y+1)`.
pub fn is_a2_kernel_direction(variables: &[(u32, u32)], v: &[Rat]) -> bool {
    let dir = a2_family(&Rat::one());
    let base = a2_family(&Rat::zero());
    let mut ratio: Option<Rat> = None;
    for (i, &(x, y)) in variables.iter().enumerate() {
        let d = dir(x, y) - base(x, y);
        match (&ratio, d.is_zero()) {
            (_, true) if !v[i].is_zero() => return false,
            (_, true) => {}
            (None, false) => ratio = Some(&v[i] / d),
            (Some(r), false) => {
                if v[i] != r * d {
                    return false;
                }
            }
        }
    }
    ratio.is_some_and(|r| !r.is_zero())
}

/// The two sides of the 2×2 determinant for the unknowns
/// `A_n(2k+2l, 2m)` and `A_n(2k, 2l+2m)` in the `p = 1, 2` identities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Det2x2 {
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub closed: Rat,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub direct: Rat,
}

/// Each row holds the coefficient of `A_n(2k+2l,2m)` on the left-hand side
/// and that of `A_n(2k,2l+2m)` on the right-hand side.
pub fn det2x2_lemma(n: u32, k: u32, l: u32, m: u32) -> Result<Det2x2> {
    if n < 3 || k == 0 || l == 0 || m == 0 {
        return Err(Error::Invalid(format!("needs n ≥ 3 and k, l, m ≥ 1, got n = {n}, ({k}, {l}, {m})")));
    }
    let (wk, wl, wm) = (2 * k, 2 * l, 2 * m);
    let pr = |x: u32, e: u32| poch(&ri(i64::from(x)), e);
    let n64 = i64::from(n);
    let lhs = |p: u32| binom_int(n64, i64::from(p)) / (pr(wk + wl, n - p) * pr(wm, p));
    let rhs = |p: u32| binom_int(n64, n64 - i64::from(p)) / (pr(wk, n - p) * pr(wl + wm, p));
    let direct = lhs(1) * rhs(2) - lhs(2) * rhs(1);

    let (k2, l2, m2) = (i64::from(wk), i64::from(wl), i64::from(wm));
    let front = binom_int(n64, n64 - 1) * binom_int(n64, n64 - 2)
        / (pr(wk + wl, n - 2) * pr(wm, 1) * pr(wk, n - 2) * pr(wl + wm, 1));
    let num = ri(-l2 * l2 - l2 * (k2 + m2 + n64 - 1));
    let den = ri((k2 + l2 + n64 - 2) * (l2 + m2 + 1) * (m2 + 1) * (k2 + n64 - 2));
    Ok(Det2x2 { closed: front * num / den, direct })
}

/// `A_n(2k,2l) = A_n(2l,2k)` on the table, and the zero-weight extension
/// forced by the `m = 0, p = 0` identities vanishes up to level `n`.
pub fn verify_symmetry_and_zero(table: &ATable, n: u32) -> Result<bool> {
    for (x, y, v) in table.level(n) {
        if let Ok(w) = table.get(n, y, x) {
            if &w != v {
                return Ok(false);
            }
        }
    }
    Ok(zero_weight_extension(table, n)?.values().all(Zero::is_zero))
}

/// Solves `A_j(w, 0)` for `1 ≤ j ≤ n` from the `m = 0, p = 0` identity at
/// `(k, l)`: its only unknown is `A_j(2k+2l, 0)`.
pub fn zero_weight_extension(table: &ATable, n: u32) -> Result<BTreeMap<(u32, u32), Rat>> {
    let mut ext: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    for j in 1..=n {
        let pairs: Vec<(u32, u32)> = table
            .level(j)
            .map(|(x, y, _)| (x / 2, y / 2))
            .filter(|&(x, y)| table.contains(j, 2 * x, 2 * y))
            .collect();
        for (k, l) in pairs {
            let target = 2 * (k + l);
            if ext.contains_key(&(j, target)) {
                continue;
            }
            let eval = |guess: Rat| {
                ident_terms(k, l, 0, j, 0, |level, x, y| {
                    if level > 0 && y == 0 {
                        if level == j && x == target {
                            return Ok(guess.clone());
                        }
                        return ext.get(&(level, x)).cloned().ok_or(Error::MissingEntry {
                            n: level as usize,
                            x,
                            y,
                        });
                    }
                    table.get(level, x, y)
                })
            };
            let r0 = match eval(Rat::zero()) {
                Ok(r) => r,
                Err(Error::MissingEntry { .. }) => continue,
                Err(e) => return Err(e),
            };
            let slope = eval(Rat::one())? - &r0;
            if slope.is_zero() {
                return Err(Error::Invalid(format!("A_{j}({target}, 0) does not enter its identity")));
            }
            ext.insert((j, target), -r0 / slope);
        }
    }
    Ok(ext)
}

/// Degree in `c` of `A_n(wx, wy)` over the chain solutions at the sampled
/// values of `c`.
///
/// Interpolates through the first `n+1` samples and checks the rest.
pub fn degree_in_c(n: u32, wx: u32, wy: u32, samples: &[Rat]) -> Result<u32> {
    if samples.len() < n as usize + 1 {
        return Err(Error::Invalid(format!("need at least {} samples", n + 1)));
    }
    let base = (wx / 2 + wy / 2).max(4);
    let values = samples
        .par_iter()
        .map(|c| solve_chain(c, n, base).and_then(|(t, _)| t.get(n, wx, wy)))
        .collect::<Result<Vec<Rat>>>()?;
    let fit = n as usize + 1;
    let coeffs = newton_to_monomial(&samples[..fit], &values[..fit]);
    for (c, v) in samples[fit..].iter().zip(&values[fit..]) {
        let y = coeffs.iter().rev().fold(Rat::zero(), |acc, a| acc * c + a);
        if &y != v {
            return Err(Error::Interpolation(c.clone()));
        }
    }
    Ok(coeffs.iter().rposition(|a| !a.is_zero()).unwrap_or(0) as u32)
}

/// Monomial coefficients of the interpolating polynomial through `(xs, ys)`.
fn newton_to_monomial(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form.
    let mut poly = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![Rat::zero(); n];
        for (d, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += a;
            }
            next[d] -= a * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// The printed `c(κ) = -3 + 4κ - κ²` next to the value of `c` that the
/// induced `A₂` actually has.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaC {
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub kappa: Rat,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub c_formula: Rat,
    /// `None` if the induced `A₂` is not in the one-parameter family.
    #[serde(skip)]
    pub c_induced: Option<Rat>,
    pub consistent: bool,
    /// Grid pairs where `a2_family(c_formula)` differs from the induced `A₂`.
    pub mismatches: Vec<(u32, u32)>,
}

pub fn kappa_c_formula(kappa: &Rat) -> Rat {
    ri(-3) + ri(4) * kappa - kappa * kappa
}

/// Cross-checks the printed formula against the `t₂^κ`-induced `A₂` on
/// half weights `1..=grid`. Mismatches are reported, not corrected.
pub fn kappa_c_correspondence(kappa: &Rat, grid: u32) -> Result<KappaC> {
    let c_formula = kappa_c_formula(kappa);
    let fam = a2_family(&c_formula);
    let mut mismatches = Vec::new();
    for x in 1..=grid {
        for y in 1..=grid {
            let (wx, wy) = (2 * x, 2 * y);
            if fam(wx, wy) != induced_a(kappa, 2, wx, wy)? {
                mismatches.push((wx, wy));
            }
        }
    }
    let c_induced = induced_c(kappa, grid)?;
    Ok(KappaC {
        kappa: kappa.clone(),
        consistent: mismatches.is_empty(),
        c_formula,
        c_induced,
        mismatches,
    })
}

/// Reads `c` off the induced `A₂(2,2)` and confirms it on the grid.
pub fn induced_c(kappa: &Rat, grid: u32) -> Result<Option<Rat>> {
    let base = a2_family(&Rat::zero());
    let unit = a2_family(&Rat::one());
    let c = (induced_a(kappa, 2, 2, 2)? - base(2, 2)) / (unit(2, 2) - base(2, 2));
    let fam = a2_family(&c);
    for x in 1..=grid {
        for y in 1..=grid {
            if fam(2 * x, 2 * y) != induced_a(kappa, 2, 2 * x, 2 * y)? {
                return Ok(None);
            }
        }
    }
    Ok(Some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starprod::ident_residual;

    #[test]
    fn a2_values() {
        let a = a2_family(&Rat::zero());
        assert_eq!(a(2, 2), ri(18));
        let b = a2_family(&rat(-5, 4));
        for x in 1..6 {
            for y in 1..6 {
                assert_eq!(b(2 * x, 2 * y), b(2 * y, 2 * x));
            }
        }
    }

    #[test]
    fn any_c_satisfies_level_two() {
        for c in [Rat::zero(), rat(-5, 4), ri(7)] {
            let f = a2_family(&c);
            let t = ATable::from_fn(2, 12, |n, x, y| Ok(if n == 1 { a1(x, y) } else { f(x, y) })).unwrap();
            for (k, l, m) in [(1, 1, 1), (2, 3, 1), (4, 4, 4)] {
                for p in 0..=2 {
                    assert!(ident_residual(&t, k, l, m, 2, p).unwrap().is_zero());
                    assert!(ident_residual(&t, k, l, m, 1, p.min(1)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn level_one_system() {
        let mut sys = build_ident_system(1, 3, &ATable::new()).unwrap();
        assert_eq!(solve(&sys).unwrap().nullity(), 1);
        sys.fix(2, 2, ri(4)).unwrap();
        let sol = solve(&sys).unwrap();
        assert_eq!(sol.nullity(), 0);
        for (i, &(x, y)) in sys.variables.iter().enumerate() {
            assert_eq!(sol.particular[i], a1(x, y));
        }
    }

    #[test]
    fn level_two_kernel() {
        let g = global_solve(2, 3, &Rat::zero()).unwrap();
        assert_eq!(g.nullity, 1);
        assert!(is_a2_kernel_direction(&g.variables, &g.kernel[0]));
    }

    #[test]
    fn level_three_is_forced() {
        let g = global_solve(3, 3, &rat(-5, 4)).unwrap();
        assert_eq!(g.nullity, 0);
    }

    #[test]
    fn chain_reproduces_induced_tables() {
        for kappa in [ri(2), rat(5, 2)] {
            let c = induced_c(&kappa, 4).unwrap().unwrap();
            let (t, reports) = solve_chain(&c, 4, 6).unwrap();
            assert!(reports.iter().all(|r| r.nullity == 0));
            for (x, y, v) in t.level(4) {
                assert_eq!(v, &induced_a(&kappa, 4, x, y).unwrap(), "({x}, {y})");
            }
        }
    }

    #[test]
    fn det2x2_closed_form() {
        let d = det2x2_lemma(3, 1, 1, 1).unwrap();
        assert_eq!(d.closed, d.direct);
        assert!(d.closed < Rat::zero());
        assert!(det2x2_lemma(2, 1, 1, 1).is_err());
    }

    #[test]
    fn symmetry_and_zero() {
        let t = induced_a_table(&rat(1, 2), 3, 6).unwrap();
        for n in 1..=3 {
            assert!(verify_symmetry_and_zero(&t, n).unwrap());
        }
        let mut bad = t.clone();
        bad.insert(1, 2, 4, ri(9));
        assert!(!verify_symmetry_and_zero(&bad, 1).unwrap());
    }

    #[test]
    fn interpolation() {
        let xs = [ri(0), ri(1), ri(2)];
        let ys = [ri(1), ri(3), ri(7)];
        assert_eq!(newton_to_monomial(&xs, &ys), vec![ri(1), ri(1), ri(1)]);
    }

    #[test]
    fn kappa_c() {
        assert_eq!(kappa_c_formula(&ri(1)), ri(0));
        assert_eq!(kappa_c_formula(&ri(3)), ri(0));
        assert_eq!(kappa_c_formula(&rat(1, 2)), rat(-5, 4));
        for (kappa, c) in [(rat(1, 2), ri(0)), (rat(3, 2), ri(0)), (ri(2), rat(3, 2)), (rat(5, 2), ri(4))] {
            assert_eq!(induced_c(&kappa, 4).unwrap(), Some(c));
        }
        let r = kappa_c_correspondence(&rat(1, 2), 3).unwrap();
        assert!(!r.consistent);
    }
}
