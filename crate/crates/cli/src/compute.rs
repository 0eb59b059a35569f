//! Subcommands that compute and print rather than verify.

use num_traits::Zero;
use rc_lab::coeffsolve::{global_solve, is_a2_kernel_direction};
use rc_lab::exactcore::Rat;
use rc_lab::forms::{parse_form, GradedForm, ModularForm};
use rc_lab::nearlyholo::rc_bracket;
use rc_lab::rep::{casimir, casimir_eigenvalue, triple_kernel_dim, triple_lower_rank, triple_slice_dim, DSVector};
use rc_lab::starprod::{star_product, StarCoefficients};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{Check, Report};
use crate::Kind;

fn parse(spec: &str, prec: usize) -> Result<ModularForm, String> {
    parse_form(spec, prec).map_err(|e| e.to_string())
}

fn parse_graded(spec: &str, prec: usize) -> Result<GradedForm, String> {
    let mut out = GradedForm::zero();
    for term in spec.split('+') {
        out = out.add(&GradedForm::from(parse(term, prec)?));
    }
    Ok(out)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

pub fn form(echo: Vec<String>, cfg: RunConfig, spec: &str) -> Result<Report, String> {
    let f = parse(spec, cfg.prec)?;
    let mut r = Report::new(echo, cfg);
    r.text = Some(format!("{spec} (weight {}): {}", f.weight, f.series));
    r.result = Some(to_value(&f));
    Ok(r)
}

pub fn bracket(echo: Vec<String>, cfg: RunConfig, f: &str, g: &str, n: u32) -> Result<Report, String> {
    let (ff, gg) = (parse(f, cfg.prec)?, parse(g, cfg.prec)?);
    let b = rc_bracket(&ff, &gg, n).map_err(|e| e.to_string())?;
    let mut r = Report::new(echo, cfg);
    r.text = Some(format!("[{f}, {g}]_{n} (weight {}): {}", b.weight, b.series));
    r.result = Some(to_value(&b));
    Ok(r)
}

pub fn star(
    echo: Vec<String>,
    cfg: RunConfig,
    kind: Kind,
    kappa: Option<Rat>,
    f: &str,
    g: &str,
) -> Result<Report, String> {
    let (ff, gg) = (parse_graded(f, cfg.prec)?, parse_graded(g, cfg.prec)?);
    let (coeffs, label) = match kind {
        Kind::Eholzer => (StarCoefficients::eholzer(), "eholzer".to_string()),
        Kind::Cmz => {
            let kappa = kappa.ok_or("--kind cmz needs --kappa")?;
            let label = format!("cmz kappa={kappa}");
            (StarCoefficients::cmz(kappa), label)
        }
    };
    let prod = star_product(&ff, &gg, &coeffs, cfg.hbar_order).map_err(|e| e.to_string())?;
    let mut text = format!("{label}, gauge {}\n", coeffs.gauge);
    for (n, t) in prod.terms().iter().enumerate() {
        text.push_str(&format!("hbar^{n}: {t}\n"));
    }
    let mut r = Report::new(echo, cfg);
    r.text = Some(text);
    r.result = Some(json!({
        "kind": label,
        "gauge": coeffs.gauge.to_string(),
        "terms": to_value(&prod)["terms"].clone(),
    }));
    Ok(r)
}

pub fn rep_casimir(echo: Vec<String>, cfg: RunConfig, weight: u32, n_max: u32) -> Result<Report, String> {
    if weight == 0 || weight % 2 == 1 {
        return Err(format!("weight must be positive and even, got {weight}"));
    }
    let ev = casimir_eigenvalue(weight);
    let mut r = Report::new(echo, cfg);
    for n in 0..=n_max {
        let v = DSVector::basis(weight, n);
        let got = casimir(&v);
        let params = json!({ "weight": weight, "n": n });
        if got == v.scale(&ev) {
            r.push(Check::pass("casimir", params));
        } else {
            r.push(Check::fail("casimir", params, format!("coefficient {} != {ev}", got.coeff(n))));
        }
    }
    r.text = Some(format!("eigenvalue on lowest weight {weight}: {ev}"));
    r.result = Some(json!({ "weight": weight, "eigenvalue": ev.to_string() }));
    Ok(r)
}

pub fn rep_kernel_dims(echo: Vec<String>, cfg: RunConfig, weights: (u32, u32, u32), n_max: u32) -> Result<Report, String> {
    let mut rows = Vec::new();
    let mut text = String::from("n  slice  rank  kernel\n");
    let mut r = Report::new(echo, cfg);
    for n in 0..=n_max {
        let (slice, rank, kernel) = (triple_slice_dim(n), triple_lower_rank(weights, n), triple_kernel_dim(weights, n));
        text.push_str(&format!("{n:<2} {slice:<6} {rank:<5} {kernel}\n"));
        rows.push(json!({ "n": n, "slice": slice, "rank": rank, "kernel": kernel }));
        let params = json!({ "n": n, "weights": [weights.0, weights.1, weights.2] });
        let expected = (n as usize + 1, (n as usize + 1) * (n as usize + 2) / 2);
        if (kernel, slice) == expected {
            r.push(Check::pass("kernel-dim", params));
        } else {
            r.push(Check::fail("kernel-dim", params, format!("slice {slice}, kernel {kernel}")));
        }
    }
    r.text = Some(text);
    r.result = Some(Value::Array(rows));
    Ok(r)
}

pub fn solve_an(echo: Vec<String>, cfg: RunConfig, n: u32, grid: u32, c: &Rat) -> Result<Report, String> {
    if n < 2 {
        return Err("levels 0 and 1 are fixed; use --n 2 or higher".into());
    }
    let g = global_solve(n, grid, c).map_err(|e| e.to_string())?;
    let kernel: Vec<Value> = g
        .kernel
        .iter()
        .map(|v| {
            let entries: Vec<Value> = g
                .variables
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|((wx, wy), x)| json!([wx, wy, x.to_string()]))
                .collect();
            Value::Array(entries)
        })
        .collect();
    let a2_direction = n == 2 && g.kernel.len() == 1 && is_a2_kernel_direction(&g.variables, &g.kernel[0]);
    let mut text = format!(
        "A_{n} on half weights 1..{grid}, c = {c}: {} unknowns, {} identities, nullity {}\n",
        g.unknowns, g.rows, g.nullity
    );
    if n == 2 {
        text.push_str(&format!("kernel along 2k*2l/(2k+2l+1): {a2_direction}\n"));
    }
    let mut r = Report::new(echo, cfg);
    r.text = Some(text);
    r.result = Some(json!({
        "n": n,
        "grid": grid,
        "c": c.to_string(),
        "unknowns": g.unknowns,
        "identities": g.rows,
        "nullity": g.nullity,
        "kernel": kernel,
        "a2_direction": a2_direction,
    }));
    Ok(r)
}
