//! Verification suites. Each returns its checks in a fixed order.

use num_traits::Zero;
use rayon::prelude::*;
use rc_lab::coeffsolve::{
    degree_in_c, det2x2_lemma, global_solve, induced_a_table, is_a2_kernel_direction, kappa_c_correspondence,
    solve_chain, ATable,
};
use rc_lab::exactcore::{factorial, poch, rat, ri, Rat};
use rc_lab::forms::{delta, e4, e6, named_forms, phi_zagier, GradedForm, ModularForm};
use rc_lab::nearlyholo::{canonical_rc, combi_bracket, lower, rc_bracket, verify_der_identity};
use rc_lab::rep::{lowest_weight_tensor, realize_and_multiply, tensor_lower, triple_kernel_dim, triple_slice_dim, xi_vector_concrete};
use rc_lab::starprod::{assoc_residual, ident_grid, StarCoefficients};
use rc_lab::uniq::{
    bracket_shift_residual, fine_det3, fine_det3_certificate, p3_substitute_and_certify, rc_uniqueness_check,
    uniqueness_search,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::Check;
use crate::Kind;

fn pairs(prec: usize) -> Vec<(&'static str, ModularForm, ModularForm)> {
    let d = delta(prec).expect("prec >= 2");
    vec![("E4,E6", e4(prec), e6(prec)), ("E4,Delta", e4(prec), d.clone()), ("E6,Delta", e6(prec), d)]
}

fn triples(prec: usize) -> Vec<(&'static str, ModularForm, ModularForm, ModularForm)> {
    let d = delta(prec).expect("prec >= 2");
    vec![("E4,E4,E6", e4(prec), e4(prec), e6(prec)), ("E4,E6,Delta", e4(prec), e6(prec), d)]
}

fn errored(name: &str, params: Value, e: impl ToString) -> Check {
    Check::fail(name, params, format!("error: {}", e.to_string()))
}

pub fn canonical_rc_checks(prec: usize, n_max: u32, phi: &ModularForm) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, f, g) in pairs(prec) {
        for n in 0..=n_max {
            let params = json!({ "pair": name, "n": n });
            let check = match (canonical_rc(&f, &g, n, phi), rc_bracket(&f, &g, n)) {
                (Ok(a), Ok(b)) if a == b => Check::pass("canonical-rc", params),
                (Ok(a), Ok(b)) => {
                    let d = a.sub(&b);
                    let v = d.series.valuation().unwrap_or(0);
                    Check::fail("canonical-rc", params, format!("differs at q^{v} by {}", d.series.coeff(v)))
                }
                (Err(e), _) | (_, Err(e)) => errored("canonical-rc", params, e),
            };
            out.push(check);
        }
    }
    out
}

pub fn combi(prec: usize, n_max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, f, g) in pairs(prec) {
        for n in 0..=n_max {
            let params = json!({ "pair": name, "n": n, "prec": prec });
            let check = match (combi_bracket(&f, &g, n), rc_bracket(&f, &g, n)) {
                (Ok(c), Ok(b)) if c.to_form().as_ref() == Some(&b) => Check::pass("combi", params),
                (Ok(c), Ok(_)) => Check::fail("combi", params, format!("Y-degree {}", c.y_degree())),
                (Err(e), _) | (_, Err(e)) => errored("combi", params, e),
            };
            out.push(check);
        }
    }
    out
}

pub fn der(prec: usize, m_max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, f) in named_forms(prec) {
        for m in 0..=m_max {
            let params = json!({ "form": name, "m": m });
            out.push(Check::new("der-identity", params, verify_der_identity(&f, m), None));
        }
    }
    out
}

pub fn casimir(n_max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for w in [2u32, 4, 6, 12] {
        let ev = rc_lab::rep::casimir_eigenvalue(w);
        let k = i64::from(w / 2);
        for n in 0..=n_max {
            let v = rc_lab::rep::DSVector::basis(w, n);
            let ok = rc_lab::rep::casimir(&v) == v.scale(&ev) && ev == ri(4 * k * (k - 1));
            out.push(Check::new("casimir", json!({ "weight": w, "n": n }), ok, None));
        }
    }
    out
}

pub fn lowest_weight(prec: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for (wk, wl) in [(4u32, 6u32), (4, 12), (6, 12), (2, 8)] {
        for n in 0..=8 {
            let ok = tensor_lower(&lowest_weight_tensor(wk, wl, n)).is_zero();
            out.push(Check::new("lowest-tensor", json!({ "weights": [wk, wl], "n": n }), ok, None));
        }
    }
    let (f, g) = (e4(prec), e6(prec));
    for n in 0..=4 {
        let params = json!({ "pair": "E4,E6", "n": n });
        let want = rc_bracket(&f, &g, n).map(|b| b.scale(&(Rat::from_integer(1.into()) / (poch(&ri(4), n) * poch(&ri(6), n)))));
        let check = match (realize_and_multiply(&lowest_weight_tensor(4, 6, n), &f, &g), want) {
            (Ok(a), Ok(b)) => Check::new("realisation", params, a.to_form() == Some(b), None),
            (Err(e), _) | (_, Err(e)) => errored("realisation", params, e),
        };
        out.push(check);
    }
    out
}

pub fn triple_space(prec: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=8u32 {
        let (slice, kernel) = (triple_slice_dim(n), triple_kernel_dim((4, 4, 6), n));
        let ok = slice == ((n + 1) * (n + 2) / 2) as usize && kernel == (n + 1) as usize;
        let witness = (!ok).then(|| format!("slice {slice}, kernel {kernel}"));
        out.push(Check::new("triple-dims", json!({ "n": n }), ok, witness));
    }
    for (name, f, g, h) in triples(prec) {
        for n in 0..=3 {
            for p in 0..=n {
                let params = json!({ "triple": name, "n": n, "p": p });
                out.push(match xi_vector_concrete(&f, &g, &h, n, p) {
                    Ok(xi) => Check::new("xi-lowest", params, lower(&xi).is_zero(), None),
                    Err(e) => errored("xi-lowest", params, e),
                });
            }
        }
    }
    out
}

fn eholzer_table(n_max: u32, bound: u32) -> rc_lab::Result<ATable> {
    ATable::from_fn(n_max, bound, |n, wx, wy| {
        Ok(poch(&ri(i64::from(wx)), n) * poch(&ri(i64::from(wy)), n) / factorial(n))
    })
}

pub fn ident(kind: Kind, kappas: &[Rat], n_max: u32, grid: u32) -> Vec<Check> {
    let bound = 3 * grid + n_max;
    let tables: Vec<(String, rc_lab::Result<ATable>)> = match kind {
        Kind::Eholzer => vec![("eholzer".into(), eholzer_table(n_max, bound))],
        Kind::Cmz => kappas.iter().map(|k| (k.to_string(), induced_a_table(k, n_max, bound))).collect(),
    };
    let mut out = Vec::new();
    for (label, table) in tables {
        let recs = table.and_then(|t| ident_grid(&t, n_max, grid));
        match recs {
            Ok(recs) => out.extend(recs.into_iter().map(|r| {
                let params = json!({ "kappa": label, "n": r.n, "p": r.p, "k": r.k, "l": r.l, "m": r.m });
                if r.residual.is_zero() {
                    Check::pass("ident", params)
                } else {
                    Check::fail("ident", params, format!("residual {}", r.residual))
                }
            })),
            Err(e) => out.push(errored("ident", json!({ "kappa": label }), e)),
        }
    }
    out
}

pub fn eholzer_assoc(order: u32, prec: usize) -> Vec<Check> {
    let eh = StarCoefficients::eholzer();
    triples(prec)
        .into_iter()
        .map(|(name, f, g, h)| {
            let params = json!({ "triple": name, "order": order, "prec": prec });
            let (f, g, h) = (GradedForm::from(f), GradedForm::from(g), GradedForm::from(h));
            match assoc_residual(&f, &g, &h, &eh, order) {
                Ok(r) if r.is_zero() => Check::pass("eholzer-assoc", params),
                Ok(r) => {
                    let n = r.terms().iter().position(|t| !t.is_zero()).unwrap_or(0);
                    Check::fail("eholzer-assoc", params, format!("nonzero at hbar^{n}"))
                }
                Err(e) => errored("eholzer-assoc", params, e),
            }
        })
        .collect()
}

pub fn cmz_unique(n_max: u32, grid: u32, c: &Rat) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let params = json!({ "n": n, "grid": grid, "c": c.to_string() });
        let check = match global_solve(n, grid, c) {
            Ok(g) => {
                let want = usize::from(n == 2);
                let direction = n != 2 || g.kernel.first().is_some_and(|v| is_a2_kernel_direction(&g.variables, v));
                let data = json!({ "unknowns": g.unknowns, "identities": g.rows, "nullity": g.nullity });
                let check = if g.nullity != want {
                    Check::fail("nullity", params, format!("nullity {} (expected {want})", g.nullity))
                } else if !direction {
                    Check::fail("nullity", params, "kernel is not along 2k*2l/(2k+2l+1)")
                } else {
                    Check::pass("nullity", params)
                };
                check.with_data(data)
            }
            Err(e) => errored("nullity", params, e),
        };
        out.push(check);
    }
    match solve_chain(c, n_max.max(2), 3 * grid + 1) {
        Ok((_, levels)) => out.push(
            Check::pass("chain", json!({ "n_max": n_max, "c": c.to_string() }))
                .with_data(serde_json::to_value(levels).expect("serialisable")),
        ),
        Err(e) => out.push(errored("chain", json!({ "n_max": n_max }), e)),
    }
    let samples: Vec<Rat> = (0..7).map(|i| ri(i - 3)).collect();
    for (n, want) in [(2u32, 1u32), (3, 1), (4, 2)] {
        if n > n_max.max(2) {
            break;
        }
        let params = json!({ "n": n, "weights": [4, 6] });
        out.push(match degree_in_c(n, 4, 6, &samples) {
            Ok(d) if d == want => Check::pass("degree-in-c", params),
            Ok(d) => Check::fail("degree-in-c", params, format!("degree {d}, expected {want}")),
            Err(e) => errored("degree-in-c", params, e),
        });
    }
    out
}

pub fn kappa_c(kappas: &[Rat], grid: u32) -> Vec<Check> {
    kappas
        .iter()
        .map(|k| {
            let params = json!({ "kappa": k.to_string(), "grid": grid });
            match kappa_c_correspondence(k, grid) {
                Ok(r) if r.consistent => Check::pass("kappa-c", params),
                Ok(r) => {
                    let induced = r.c_induced.map_or("outside the family".to_string(), |c| c.to_string());
                    Check::fail(
                        "kappa-c",
                        params,
                        format!("-3+4k-k^2 gives c = {}, induced A_2 has c = {induced}", r.c_formula),
                    )
                }
                Err(e) => errored("kappa-c", params, e),
            }
        })
        .collect()
}

pub fn det2x2(n_range: std::ops::RangeInclusive<u32>, bound: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for n in n_range {
        let mut bad = None;
        for k in 1..=bound {
            for l in 1..=bound {
                for m in 1..=bound {
                    match det2x2_lemma(n, k, l, m) {
                        Ok(d) if d.closed == d.direct && d.closed < Rat::zero() => {}
                        Ok(d) => bad = bad.or(Some(format!("({k},{l},{m}): closed {} direct {}", d.closed, d.direct))),
                        Err(e) => bad = bad.or(Some(e.to_string())),
                    }
                }
            }
        }
        let params = json!({ "n": n, "bound": bound });
        out.push(Check::new("det2x2", params, bad.is_none(), bad));
    }
    out
}

pub fn det3(bound: i64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut bad = None;
    for k in 1..=bound {
        for m in k..=bound {
            for l in 1..=bound {
                let d = fine_det3(k, l, m);
                if d >= Rat::zero() && bad.is_none() {
                    bad = Some(format!("({k},{l},{m}) -> {d}"));
                }
            }
        }
    }
    out.push(Check::new("det3-negative", json!({ "bound": bound }), bad.is_none(), bad));
    let cert = fine_det3_certificate();
    let ok = cert.as_ref().is_some_and(|(_, p)| p.all_positive);
    let witness = match &cert {
        None => Some("not divisible by -32 l^2".to_string()),
        Some((_, p)) if !p.all_positive => p.witness.as_ref().map(|w| format!("non-positive term {w:?}")),
        _ => None,
    };
    out.push(Check::new("det3-certificate", json!({}), ok, witness));
    out
}

pub fn fine(grid: u32, n_max: u32, prec: usize) -> Vec<Check> {
    let forms = named_forms(prec);
    let mut out = Vec::new();
    for (fname, f) in &forms {
        for (gname, g) in &forms {
            for (hname, h) in &forms {
                let params = json!({ "triple": format!("{fname},{gname},{hname}"), "n_max": n_max });
                let mut first = None;
                let mut err = None;
                for n in 1..=n_max {
                    match bracket_shift_residual(f, g, h, n) {
                        Ok(r) if !r.is_zero() => {
                            first = Some(n);
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            err = Some(e.to_string());
                            break;
                        }
                    }
                }
                out.push(match (first, err) {
                    (_, Some(e)) => errored("shift-residual", params, e),
                    (Some(n), None) => Check::pass("shift-residual", params).with_data(json!({ "first_nonzero_n": n })),
                    (None, None) => Check::fail("shift-residual", params, "residual vanishes for every n"),
                });
            }
        }
    }
    out.extend(det3(i64::from(grid)));
    out
}

pub fn p3() -> (Vec<Check>, String) {
    match p3_substitute_and_certify() {
        Ok((_, report)) => {
            let mut text = format!(
                "orientation: {}\nsubstituted terms: {}, all positive: {}\nk^5 l: {}, l^2 m^8: {}\n",
                report.orientation, report.substituted_terms, report.all_positive, report.coeff_k5_l, report.coeff_l2_m8
            );
            text.push_str("braced factor, derived vs printed:\n");
            for d in &report.inner_diff {
                text.push_str(&format!("  {}  derived {}  printed {}\n", d.monomial, d.derived, d.appendix));
            }
            for n in &report.inner_parse_notes {
                text.push_str(&format!("  note on term {}: {}\n", n.term, n.note));
            }
            text.push_str(&format!("substituted display mismatches: {}\n", report.substituted_diff.len()));
            let witness = (!report.ok()).then(|| {
                report.negative_witness.clone().unwrap_or_else(|| "structure check failed".to_string())
            });
            let check = Check::new("p3", json!({}), report.ok(), witness)
                .with_data(serde_json::to_value(&report).expect("serialisable"));
            (vec![check], text)
        }
        Err(e) => (vec![errored("p3", json!({}), e)], String::new()),
    }
}

pub fn uniqueness(seed: u64, instances: usize, order: u32, prec: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let f = GradedForm::from_parts([e4(prec), e6(prec)]);
    let g = GradedForm::from_parts([e6(prec), delta(prec).expect("prec >= 2")]);
    for c in [ri(3), rat(-2, 5)] {
        let params = json!({ "c": c.to_string(), "order": order });
        let r = rc_uniqueness_check(&f.scale(&c), &g, &f, &g.scale(&c), order, prec);
        let ok = r.equal && r.c.as_ref() == Some(&c);
        let witness = (!ok).then(|| format!("recovered {:?}", r.c.map(|c| c.to_string())));
        out.push(Check::new("proportional", params, ok, witness));
    }
    let report = uniqueness_search(seed, instances, order, prec);
    let params = json!({ "seed": seed, "instances": instances, "order": order, "prec": prec });
    let ok = report.counterexamples == 0;
    let witness = (!ok).then(|| format!("{} counterexamples", report.counterexamples));
    out.push(Check::new("search", params, ok, witness).with_data(serde_json::to_value(&report).expect("serialisable")));
    out
}

type Suite<'a> = (&'static str, Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>);

/// One summary check per suite, in a fixed order regardless of which
/// finishes first.
pub fn all(cfg: &RunConfig) -> Vec<Check> {
    let prec = cfg.prec;
    let suites: Vec<Suite> = vec![
        ("canonical-rc", Box::new(move || canonical_rc_checks(prec, 6, &phi_zagier(prec)))),
        ("combi", Box::new(move || combi(prec, 5))),
        ("der-identity", Box::new(move || der(prec, 5))),
        ("casimir", Box::new(|| casimir(10))),
        ("lowest-weight", Box::new(move || lowest_weight(prec))),
        ("triple-space", Box::new(move || triple_space(prec))),
        ("ident", Box::new(|| ident(Kind::Cmz, &cfg.kappa_samples, 5, cfg.grid_bound))),
        ("eholzer-assoc", Box::new(move || eholzer_assoc(cfg.hbar_order, prec))),
        ("cmz-unique", Box::new(|| cmz_unique(5, 6, &rat(-5, 4)))),
        ("kappa-c", Box::new(|| kappa_c(&cfg.kappa_samples, cfg.grid_bound))),
        ("determinants", Box::new(|| {
            let mut v = det2x2(3..=6, 5);
            v.extend(det3(6));
            v
        })),
        ("p3", Box::new(|| p3().0)),
        ("uniqueness", Box::new(move || uniqueness(cfg.seed, 1000, 3, prec))),
    ];
    suites
        .par_iter()
        .map(|(name, run)| summarise(name, run()))
        .collect()
}

fn summarise(name: &str, checks: Vec<Check>) -> Check {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let data = json!({ "checks": checks.len(), "failed": failed.len() });
    let witness = failed.first().map(|c| {
        let w = c.witness.clone().unwrap_or_default();
        format!("{} {}{}", c.name, c.params, if w.is_empty() { String::new() } else { format!(": {w}") })
    });
    Check::new(name, json!({}), failed.is_empty(), witness).with_data(data)
}
