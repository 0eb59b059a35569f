//! Sparse multivariate polynomials over the rationals.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{ri, Rat};
use crate::error::{Error, Result};

/// A polynomial over a fixed, ordered variable list.
///
/// Terms map exponent vectors (one entry per variable) to nonzero
/// coefficients. Arithmetic between polynomials requires identical variable
/// lists and panics otherwise; use [`MPoly::substitute`] to move between
/// variable sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// JSON shape of a single term: `{"exp": [...], "c": "p/q"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    #[serde(with = "super::rat::serde_rat")]
    pub c: Rat,
}

/// Outcome of a coefficient sign scan.
#[derive(Clone, Debug, PartialEq)]
pub struct Positivity {
    pub all_positive: bool,
    /// One offending monomial and its coefficient when `all_positive` is false.
    pub witness: Option<(Vec<u32>, Rat)>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The variable `name`; panics if it is not in `vars`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("variable {name} not in {vars:?}"));
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exp, Rat::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of a monomial given as `(variable, exponent)` pairs.
    pub fn coeff_of_named(&self, mono: &[(&str, u32)]) -> Result<Rat> {
        let mut exp = vec![0; self.vars.len()];
        for (name, e) in mono {
            let i = self.index_of(name)?;
            exp[i] += e;
        }
        Ok(self.coeff_of(&exp))
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Total degree in the variable `name`.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let i = self.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MPoly) {
        assert_eq!(self.vars, other.vars, "MPoly variable lists differ");
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut acc = Self::constant(&vars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_ints(&self, point: &[i64]) -> Rat {
        let p: Vec<Rat> = point.iter().map(|&x| ri(x)).collect();
        self.eval(&p)
    }

    /// Replaces variables by polynomials over `target` variables.
    ///
    /// Variables of `self` absent from `map` are carried over by name and
    /// must therefore exist in `target`.
    pub fn substitute(&self, map: &[(&str, MPoly)], target: &[&str]) -> Result<MPoly> {
        let target_vars: Vec<String> = target.iter().map(|s| s.to_string()).collect();
        let mut images: Vec<MPoly> = Vec::with_capacity(self.vars.len());
        for (name, img) in map {
            self.index_of(name)?;
            if img.vars != target_vars {
                return Err(Error::VariableMismatch {
                    left: img.vars.clone(),
                    right: target_vars.clone(),
                });
            }
        }
        for v in &self.vars {
            match map.iter().find(|(n, _)| n == v) {
                Some((_, img)) => images.push(img.clone()),
                None => {
                    if !target.contains(&v.as_str()) {
                        return Err(Error::UnknownVariable(v.clone()));
                    }
                    images.push(MPoly::var(target, v));
                }
            }
        }
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow(k))
                    .clone();
                t = &t * &p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Uses lexicographic leading terms; if `self = q·d` then every step of
    /// the division finds a divisible leading term, so a failed step proves
    /// non-divisibility.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        self.check_vars(d);
        let (lt_d, lc_d) = d.terms.iter().next_back()?;
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&vars);
        while let Some((lt_r, lc_r)) = rem.terms.iter().next_back() {
            if lt_r.iter().zip(lt_d).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = lt_r.iter().zip(lt_d).map(|(a, b)| a - b).collect();
            let t = MPoly::from_terms(&vars, [(e, lc_r / lc_d)]);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn all_coeffs_positive(&self) -> Positivity {
        match self.terms.iter().find(|(_, c)| !c.is_positive()) {
            None => Positivity { all_positive: true, witness: None },
            Some((e, c)) => Positivity {
                all_positive: false,
                witness: Some((e.clone(), c.clone())),
            },
        }
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exp: e.clone(), c: c.clone() })
            .collect()
    }

    pub fn from_json_terms(vars: &[&str], terms: Vec<TermJson>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.exp.len() != vars.len()) {
            return Err(Error::Parse(format!(
                "exponent vector {:?} has wrong length for {vars:?}",
                t.exp
            )));
        }
        Ok(Self::from_terms(vars, terms.into_iter().map(|t| (t.exp, t.c))))
    }

    /// Renders a single monomial, e.g. `k^2*l*r^2`.
    pub fn monomial_string(&self, exp: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(exp)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { vars: self.vars.clone(), terms: acc }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.monomial_string(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KL: [&str; 2] = ["k", "l"];

    #[test]
    fn difference_of_squares() {
        let k = MPoly::var(&KL, "k");
        let l = MPoly::var(&KL, "l");
        let p = &(&k + &l) * &(&k - &l);
        let expect = &k.pow(2) - &l.pow(2);
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "k^2 - l^2");
    }

    #[test]
    fn substitute_zero() {
        let vars = ["l", "r", "t"];
        let l = MPoly::var(&vars, "l");
        let rt = &MPoly::var(&vars, "r") + &MPoly::var(&vars, "t");
        let p = &l.scale(&ri(2)) * &rt;
        let z = p
            .substitute(&[("l", MPoly::zero(&vars))], &vars)
            .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn substitute_unknown_variable() {
        let k = MPoly::var(&KL, "k");
        let err = k.substitute(&[("x", MPoly::zero(&KL))], &KL).unwrap_err();
        assert_eq!(err, Error::UnknownVariable("x".into()));
        // carried-over variable missing from the target list
        let err = k.substitute(&[], &["l"]).unwrap_err();
        assert_eq!(err, Error::UnknownVariable("k".into()));
    }

    #[test]
    fn positivity_witness() {
        let k = MPoly::var(&KL, "k");
        let l = MPoly::var(&KL, "l");
        let one = MPoly::constant(&KL, ri(1));
        assert!((&one + &(&k * &l)).all_coeffs_positive().all_positive);
        let p = (&k - &l).all_coeffs_positive();
        assert!(!p.all_positive);
        assert_eq!(p.witness, Some((vec![0, 1], ri(-1))));
    }

    #[test]
    fn exact_division() {
        let k = MPoly::var(&KL, "k");
        let l = MPoly::var(&KL, "l");
        let a = &k + &l;
        let b = &(&k.pow(2) - &l) + &MPoly::constant(&KL, ri(3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &MPoly::constant(&KL, ri(1))).div_exact(&a), None);
    }

    #[test]
    fn json_terms() {
        let p = &MPoly::var(&KL, "k").scale(&ri(3)) - &MPoly::constant(&KL, ri(1));
        let js = serde_json::to_string(&p.to_json_terms()).unwrap();
        assert_eq!(js, r#"[{"exp":[0,0],"c":"-1"},{"exp":[1,0],"c":"3"}]"#);
        let back: Vec<TermJson> = serde_json::from_str(&js).unwrap();
        assert_eq!(MPoly::from_json_terms(&KL, back).unwrap(), p);
    }
}
