//! The polynomial `P₃` and its positivity certificate.
//!
//! `P₃` is derived from the `n = 3` lowest-order identity with
//! `s = l(r+t)/(k+m)`, cleared by `(k+m)³`. The appendix transcription is a
//! cross-check only.

use serde::Serialize;

use super::fine::lowest_q_poly;
use crate::error::{Error, Result};
use crate::exactcore::{ri, MPoly, Positivity, Rat};

pub const KLMRT: [&str; 5] = ["k", "l", "m", "r", "t"];
pub const KLM: [&str; 3] = ["k", "l", "m"];
const KLM_MU: [&str; 4] = ["k", "l", "m", "mu"];

/// The braced factor of `P₃ = 4l(r+t)(…)`, as printed.
pub const APPENDIX_INNER: &str = "-3k^2 r^2 - 2 k^3 r^2 + 3
k l r^2 + 2 k l^2 r^2 -
    6 k m r^2 - 15 k^2 m r^2 - 3 k^3 m r^2 + 3 l m r^2
    --
    9 k l m r^2 - 6 k^2 l m r^2
    3 k l^2 m r^2 - 3 m^2 r^2 - 24 k m^2 r^2 -
    15 k^2 m^2 r^2 - 9 l m^2 r^2 - 24 k l m^2 r^2 -
    9 l^2 m^2 r^2 - 11 m^3 r^2 - 21 k m^3 r^2 -
    18 l m^3 r^2 - 9 m^4 r^2 + 12 k^2 r t + 17 k^3 r t +
    3 k^4 r t + 6 k l r t + 21 k^2 l r t + 6 k^3 l r t +
    4 k l^2 r t + 3 k^2 l^2 r t+ 24 k m r t +
    51 k^2 m r t + 24 k^3 m r t + 6 l m r t +
    42 k l m r t + 42 k^2 l m r t + 4 l^2 m r t +
    18 k l^2 m r t + 12 m^2 r t + 51 k m^2 r t +
    42 k^2 m^2 r t + 21 l m^2 r t + 42 k l m^2 r t +
    3 l^2 m^2 r t + 17 m^3 r t + 24 k m^3 r t +
    6 l m^3 r t + 3 m^4 r t -3 k^2 t^2 - 11 k^3 t^2 -
    9 k^4 t^2 + 3 k l t^2 - 9 k^2 l t^2 - 18 k^3 l t^2 +
    2 k l^2 t^2 - 9 k^2 l^2 t^2 - 6 k m t^2 -
    24 k^2 m t^2 - 21 k^3 m t^2 + 3 l m t^2 -
    9 k l m t^2 - 24 k^2 l m t^2 + 2 l^2 m t^2 -
    3 k l^2 m t^2 - 3 m^2 t^2 - 15 k m^2 t^2 -
    15 k^2 m^2 t^2 - 6 k l m^2 t^2- 2 m^3 t^2 -
    3 k m^3 t^2+ 2 l^2 m r^2";

/// The `μ³` coefficient after substitution, as printed.
pub const APPENDIX_SUBSTITUTED: &str = "48 k^5 l + 320 k^6 l + 720
k^7 l + 672 k^8 l + 256 k^9 l +
    96 k^4 l^2 + 960 k^5 l^2 + 2976 k^6 l^2 + 3552 k^7 l^2 +
    1536 k^8 l^2 + 640 k^4 l^3 + 3792 k^5 l^3 +
    6624 k^6 l^3 + 3584 k^7 l^3 + 1536 k^4 l^4 +
    5280 k^5 l^4 + 4096 k^6 l^4+ 1536 k^4 l^5 +
    2304 k^5 l^5 + 512 k^4 l^6 + 240 k^4 l m + 1920 k^5 l m +
    5232 k^6 l m + 5760 k^7 l m + 2304 k^8 l m +
    384 k^3 l^2 m + 4800 k^4 l^2 m + 18240 k^5 l^2 m +
    26016 k^6 l^2 m + 12288 k^7 l^2 m + 2560 k^3 l^3 m +
    19152 k^4 l^3 m + 40896 k^5 l^3 m + 25088 k^6 l^3 m +
    6144 k^3 l^4 m + 26784 k^4 l^4 m + 24576 k^5 l^4 m +
    6144 k^3 l^5 m + 11520 k^4 l^5 m + 2048 k^3 l^6 m +
    480 k^3 l m^2 + 4800 k^4 l m^2 + 16080 k^5 l m^2 +
    21120 k^6 l m^2 + 9216 k^7 l m^2 + 576 k^2 l^2 m^2 +
    9600 k^3 l^2 m^2 + 46176 k^4 l^2 m^2 +
    80352 k^5 l^2 m^2 + 43008 k^6 l^2 m^2 +
    3840 k^2 l^3 m^2 + 38496 k^3 l^3 m^2 +
    103968 k^4 l^3 m^2 + 75264 k^5 l^3 m^2 +
    9216 k^2 l^4 m^2 + 53952 k^3 l^4 m^2 +
    61440 k^4 l^4 m^2 + 9216 k^2 l^5 m^2 +
    23040 k^3 l^5 m^2 + 3072 k^2 l^6 m^2 + 480 k^2 l m^3 +
    6400 k^3 l m^3 + 27120 k^4 l m^3 + 43392 k^5 l m^3 +
    21504 k^6 l m^3 + 384 k l^2 m^3 + 9600 k^2 l^2 m^3 +
    61824 k^3 l^2 m^3 + 135840 k^4 l^2 m^3
    +86016 k^5 l^2 m^3+ 2560 k l^3 m^3 + 38496 k^2 l^3 m^3 +
    139392 k^3 l^3 m^3 + 125440 k^4 l^3 m^3 +
    6144 k l^4 m^3 + 53952 k^2 l^4 m^3 + 81920 k^3 l^4 m^3 +
    6144 k l^5 m^3 + 23040 k^2 l^5 m^3 + 2048 k l^6 m^3 +
    240 k l m^4 + 4800 k^2 l m^4 + 27120 k^3 l m^4 +
    54720 k^4 l m^4 + 256 l m^9 + 32256 k^5 l m^4 + 96 l^2 m^4 +
    4800 k l^2 m^4 + 46176 k^2 l^2 m^4 +
    135840 k^3 l^2 m^4 + 107520 k^4 l^2 m^4 + 640 l^3 m^4 +
    19152 k l^3 m^4 + 103968 k^2 l^3 m^4 +
    125440 k^3 l^3 m^4 + 1536 l^4 m^4 + 26784 k l^4 m^4 +
    61440 k^2 l^4 m^4 + 1536 l^5 m^4 + 11520 k l^5 m^4 +
    512 l^6 m^4 + 48 l m^5 + 1920 k l m^5 + 16080 k^2 l m^5 +
    43392 k^3 l m^5 + 32256 k^4 l m^5 + 960 l^2 m^5 +
    18240 k l^2 m^5 + 80352 k^2 l^2 m^5 +
    86016 k^3 l^2 m^5 + 3792 l^3 m^5 + 40896 k l^3 m^5 +
    75264 k^2 l^3 m^5 + 5280 l^4 m^5 + 24576 k l^4 m^5 +
    2304 l^5 m^5 + 320 l m^6 + 5232 k l m^6 +
    21120 k^2 l m^6 + 21504 k^3 l m^6 + 2976 l^2 m^6 +
    26016 k l^2 m^6 + 43008 k^2 l^2 m^6 + 6624 l^3 m^6 +
    25088 k l^3 m^6 + 4096 l^4 m^6 + 720 l m^7 +
    5760 k l m^7 + 9216 k^2 l m^7 + 3552 l^2 m^7 +
    12288 k l^2 m^7 + 3584 l^3 m^7 + 672 l m^8 +
    2304 k l m^8 + 1536 l^2 m^8";

/// Something the tolerant parser had to decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseNote {
    /// Index of the term in reading order.
    pub term: usize,
    pub note: String,
}

/// Parses a sum of monomials such as `-3k^2 r^2 + 12 k l`.
///
/// Repeated signs collapse to the last one read ("--" is a line-break
/// artifact, not a double negation), and two terms with no operator between
/// them are joined by an implicit `+`. Each such repair is noted.
pub fn parse_polynomial(src: &str, vars: &[&str]) -> Result<(MPoly, Vec<ParseNote>)> {
    let mut poly = MPoly::zero(vars);
    let mut notes = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut term = 0usize;
    let mut pending_sign: Option<i64> = None;
    let mut signs_seen = 0;
    let mut cur: Option<(Rat, Vec<u32>)> = None;
    let flush = |cur: &mut Option<(Rat, Vec<u32>)>, poly: &mut MPoly| {
        if let Some((c, e)) = cur.take() {
            *poly = &*poly + &MPoly::from_terms(vars, [(e, c)]);
        }
    };
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() || ch == '*' {
            i += 1;
            continue;
        }
        if ch == '+' || ch == '-' {
            if cur.is_some() {
                flush(&mut cur, &mut poly);
                term += 1;
                signs_seen = 0;
            }
            signs_seen += 1;
            if signs_seen == 2 {
                notes.push(ParseNote { term, note: "repeated sign read as a single sign".into() });
            }
            pending_sign = Some(if ch == '+' { 1 } else { -1 });
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: i64 = chars[start..i].iter().collect::<String>().parse().map_err(|_| Error::Parse(src.into()))?;
            if cur.is_some() {
                // A coefficient right after a complete monomial.
                flush(&mut cur, &mut poly);
                term += 1;
                notes.push(ParseNote { term, note: "missing operator, read as +".into() });
            }
            let s = pending_sign.take().unwrap_or(1);
            signs_seen = 0;
            cur = Some((ri(s * n), vec![0; vars.len()]));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let idx = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let mut e = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                e = chars[st..i].iter().collect::<String>().parse().map_err(|_| Error::Parse(src.into()))?;
            }
            if cur.is_none() {
                let s = pending_sign.take().unwrap_or(1);
                signs_seen = 0;
                cur = Some((ri(s), vec![0; vars.len()]));
            }
            if let Some((_, exp)) = cur.as_mut() {
                exp[idx] += e;
            }
            continue;
        }
        return Err(Error::Parse(format!("unexpected character {ch:?}")));
    }
    flush(&mut cur, &mut poly);
    Ok((poly, notes))
}

/// `P₃` in `k, l, m, r, t`: the `n = 3` residual evaluated at
/// `r ↦ (k+m)r`, `s ↦ l(r+t)`, `t ↦ (k+m)t`. By homogeneity in `r, s, t`
/// this is `(k+m)³` times the residual at `s = l(r+t)/(k+m)`.
pub fn p3_build() -> MPoly {
    let v = |s| MPoly::var(&KLMRT, s);
    let km = &v("k") + &v("m");
    let map = [
        ("r", &km * &v("r")),
        ("s", &v("l") * &(&v("r") + &v("t"))),
        ("t", &km * &v("t")),
    ];
    lowest_q_poly(3).substitute(&map, &KLMRT).expect("variables match")
}

/// `4l(r+t)`.
pub fn p3_prefactor() -> MPoly {
    let v = |s| MPoly::var(&KLMRT, s);
    &(&MPoly::constant(&KLMRT, ri(4)) * &v("l")) * &(&v("r") + &v("t"))
}

/// One monomial where two polynomials disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoDiff {
    pub monomial: String,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub derived: Rat,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub appendix: Rat,
}

pub fn monomial_diff(derived: &MPoly, appendix: &MPoly) -> Vec<MonoDiff> {
    let mut exps: Vec<&Vec<u32>> = derived.terms().map(|(e, _)| e).chain(appendix.terms().map(|(e, _)| e)).collect();
    exps.sort();
    exps.dedup();
    exps.into_iter()
        .filter_map(|e| {
            let (a, b) = (derived.coeff_of(e), appendix.coeff_of(e));
            (a != b).then(|| MonoDiff { monomial: derived.monomial_string(e), derived: a, appendix: b })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct P3Data {
    /// Derived `P₃`.
    pub built: MPoly,
    /// `P₃ / (4l(r+t))`.
    pub inner: MPoly,
    /// Transcribed braced factor.
    pub appendix: MPoly,
    /// Coefficient of `μ³` after the substitution, in `k, l, m`.
    pub substituted: MPoly,
    /// Transcribed second display.
    pub appendix_substituted: MPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P3Report {
    pub orientation: String,
    pub divisible_by_prefactor: bool,
    pub only_mu_cubed: bool,
    pub substituted_terms: usize,
    pub all_positive: bool,
    pub negative_witness: Option<String>,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub coeff_k5_l: Rat,
    #[serde(with = "crate::exactcore::rat::serde_rat")]
    pub coeff_l2_m8: Rat,
    pub inner_parse_notes: Vec<ParseNote>,
    pub inner_diff: Vec<MonoDiff>,
    pub substituted_diff: Vec<MonoDiff>,
}

impl P3Report {
    /// Positivity, the two spot coefficients, and agreement with the
    /// transcription except at monomials the parser had to repair.
    pub fn ok(&self) -> bool {
        self.divisible_by_prefactor
            && self.only_mu_cubed
            && self.all_positive
            && self.coeff_k5_l == ri(48)
            && self.coeff_l2_m8 == ri(1536)
            && self.substituted_diff.is_empty()
            && self.inner_diff.len() <= 2
    }
}

/// Substitutes `t = μ[(k+3m)(k+l+m)+(k+m)]`, `r = μ[(3k+m)(k+l+m)+(k+m)]`
/// into `P₃`, checks the result is `μ³` times a polynomial with positive
/// coefficients, and diffs both displays against the derivation.
pub fn p3_substitute_and_certify() -> Result<(P3Data, P3Report)> {
    let built = p3_build();
    let inner = built
        .div_exact(&p3_prefactor())
        .ok_or_else(|| Error::Invalid("P3 is not divisible by 4l(r+t)".into()))?;

    let v = |s| MPoly::var(&KLM_MU, s);
    let c = |x: i64| MPoly::constant(&KLM_MU, ri(x));
    let (k, l, m, mu) = (v("k"), v("l"), v("m"), v("mu"));
    let klm = &(&k + &l) + &m;
    let km = &k + &m;
    let t_img = &mu * &(&(&(&k + &(&c(3) * &m)) * &klm) + &km);
    let r_img = &mu * &(&(&(&(&c(3) * &k) + &m) * &klm) + &km);
    let sub = built.substitute(&[("r", r_img), ("t", t_img)], &KLM_MU)?;
    let mu_idx = 3;
    let only_mu_cubed = sub.terms().all(|(e, _)| e[mu_idx] == 3);
    let substituted = MPoly::from_terms(&KLM, sub.terms().map(|(e, c)| (e[..3].to_vec(), c.clone())));

    let (appendix, inner_parse_notes) = parse_polynomial(APPENDIX_INNER, &KLMRT)?;
    let (appendix_substituted, _) = parse_polynomial(APPENDIX_SUBSTITUTED, &KLM)?;
    let Positivity { all_positive, witness } = substituted.all_coeffs_positive();

    let report = P3Report {
        orientation: "P3 = LHS - RHS of the n = 3 identity".into(),
        divisible_by_prefactor: true,
        only_mu_cubed,
        substituted_terms: substituted.len(),
        all_positive,
        negative_witness: witness.map(|(e, c)| format!("{c}*{}", substituted.monomial_string(&e))),
        coeff_k5_l: substituted.coeff_of(&[5, 1, 0]),
        coeff_l2_m8: substituted.coeff_of(&[0, 2, 8]),
        inner_parse_notes,
        inner_diff: monomial_diff(&inner, &appendix),
        substituted_diff: monomial_diff(&substituted, &appendix_substituted),
    };
    Ok((P3Data { built, inner, appendix, substituted, appendix_substituted }, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parser_repairs() {
        let (p, notes) = parse_polynomial("2 k l -- 3 m 4 k", &KLM).unwrap();
        let want = MPoly::from_terms(&KLM, [(vec![1, 1, 0], ri(2)), (vec![0, 0, 1], ri(-3)), (vec![1, 0, 0], ri(4))]);
        assert_eq!(p, want);
        assert_eq!(notes.len(), 2);
        assert!(parse_polynomial("2 x", &KLM).is_err());
    }

    #[test]
    fn p3_vanishes_at_l_zero() {
        let p = p3_build();
        assert!(p.eval_ints(&[1, 0, 1, 1, 1]).is_zero());
        assert!(p.div_exact(&p3_prefactor()).is_some());
    }

    #[test]
    fn n2_factorisation() {
        let v = |s| MPoly::var(&KLMRT, s);
        let km = &v("k") + &v("m");
        let map = [
            ("r", &km * &v("r")),
            ("s", &v("l") * &(&v("r") + &v("t"))),
            ("t", &km * &v("t")),
        ];
        let res2 = lowest_q_poly(2).substitute(&map, &KLMRT).unwrap();
        let factor = &(&MPoly::constant(&KLMRT, ri(2)) * &v("l")) * &(&v("r") + &v("t"));
        let linear = res2.div_exact(&factor).unwrap();
        assert!(linear.degree_in("r").unwrap() <= 1 && linear.degree_in("t").unwrap() <= 1);
    }

    #[test]
    fn certificate() {
        let (data, report) = p3_substitute_and_certify().unwrap();
        assert!(report.all_positive);
        assert!(report.only_mu_cubed);
        assert_eq!(report.coeff_k5_l, ri(48));
        assert_eq!(report.coeff_l2_m8, ri(1536));
        assert!(report.substituted_diff.is_empty());
        assert_eq!(report.inner_diff.len(), 1);
        assert_eq!(report.inner_diff[0].monomial, "k*l^2*m*r^2");
        assert_eq!(report.inner_diff[0].derived, ri(-3));
        assert_eq!(report.inner_parse_notes.len(), 2);
        assert_eq!(data.substituted.len(), 135);
        assert!(report.ok());
    }
}
