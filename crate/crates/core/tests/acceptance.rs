//! The acceptance suite. Every criterion runs at exact tolerance and prints
//! one PASS/FAIL line. It runs without the libtest harness so the lines
//! always reach the output. Criteria 1 and 10 do not hold as stated; they are
//! run as stated and their failure is expected (see `EXPECTED_FAILURES`).

use std::time::Instant;

use num_traits::{One, Zero};
use rc_lab::coeffsolve::{
    degree_in_c, det2x2_lemma, global_solve, induced_a_table, induced_c, is_a2_kernel_direction,
    kappa_c_correspondence,
};
use rc_lab::exactcore::{poch, rat, ri, Rat};
use rc_lab::forms::{delta, e4, e6, phi_zagier, GradedForm, ModularForm};
use rc_lab::nearlyholo::{canonical_rc, combi_bracket, lower, rc_bracket, verify_der_identity};
use rc_lab::rep::{
    casimir, casimir_eigenvalue, lowest_weight_tensor, realize_and_multiply, tensor_lower, triple_kernel_dim,
    triple_slice_dim, xi_vector_concrete, DSVector,
};
use rc_lab::starprod::{assoc_residual, ident_grid, StarCoefficients};
use rc_lab::uniq::{fine_det3, fine_det3_certificate, p3_substitute_and_certify, rc_uniqueness_check, uniqueness_search};

/// Criteria that cannot hold as stated; the reasons are printed with them.
const EXPECTED_FAILURES: [u32; 2] = [1, 10];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pairs(prec: usize) -> Vec<(&'static str, ModularForm, ModularForm)> {
    let d = delta(prec).unwrap();
    vec![
        ("(E4,E6)", e4(prec), e6(prec)),
        ("(E4,Delta)", e4(prec), d.clone()),
        ("(E6,Delta)", e6(prec), d),
    ]
}

fn c1_canonical_rc() -> Outcome {
    let prec = 30;
    let run = |phi: &ModularForm| {
        let mut bad = Vec::new();
        for (name, f, g) in pairs(prec) {
            for n in 0..=6 {
                if canonical_rc(&f, &g, n, phi).unwrap() != rc_bracket(&f, &g, n).unwrap() {
                    bad.push(format!("{name} n={n}"));
                }
            }
        }
        bad
    };
    let printed = run(&phi_zagier(prec));
    if printed.is_empty() {
        return outcome(true, "Phi = E4/144, n <= 6, 3 pairs");
    }
    let flipped = run(&phi_zagier(prec).scale(&ri(-1)));
    outcome(
        false,
        format!(
            "Phi = E4/144 fails at {} of 21 cases (first: {}); Phi = -E4/144 fails at {}",
            printed.len(),
            printed[0],
            flipped.len()
        ),
    )
}

fn c2_combi() -> Outcome {
    for (name, f, g) in pairs(25) {
        for n in 0..=5 {
            let c = combi_bracket(&f, &g, n).unwrap();
            if !c.is_holomorphic() || c.to_form().unwrap() != rc_bracket(&f, &g, n).unwrap() {
                return outcome(false, format!("{name} n={n}"));
            }
        }
    }
    outcome(true, "3 pairs, n <= 5, prec 25")
}

fn c3_der() -> Outcome {
    let prec = 25;
    for f in [e4(prec), e6(prec), delta(prec).unwrap()] {
        for m in 0..=5 {
            if !verify_der_identity(&f, m) {
                return outcome(false, format!("weight {} m={m}", f.weight));
            }
        }
    }
    outcome(true, "E4, E6, Delta; m <= 5")
}

fn c4_casimir() -> Outcome {
    for w in [2u32, 4, 6, 12] {
        let ev = ri(i64::from(w / 2) * 4 * (i64::from(w / 2) - 1));
        if casimir_eigenvalue(w) != ev {
            return outcome(false, format!("eigenvalue formula at 2k={w}"));
        }
        for n in 0..=10 {
            let v = DSVector::basis(w, n);
            if casimir(&v) != v.scale(&ev) {
                return outcome(false, format!("2k={w} n={n}"));
            }
        }
    }
    outcome(true, "2k in {2,4,6,12}, n <= 10")
}

fn c5_lowest_weight() -> Outcome {
    for (wk, wl) in [(4, 6), (4, 12), (6, 12), (2, 8)] {
        for n in 0..=8 {
            if !tensor_lower(&lowest_weight_tensor(wk, wl, n)).is_zero() {
                return outcome(false, format!("kernel ({wk},{wl}) n={n}"));
            }
        }
    }
    let prec = 20;
    let (f, g) = (e4(prec), e6(prec));
    for n in 0..=4 {
        let v = lowest_weight_tensor(4, 6, n);
        let got = realize_and_multiply(&v, &f, &g).unwrap();
        let norm = poch(&ri(4), n) * poch(&ri(6), n);
        let want = rc_bracket(&f, &g, n).unwrap().scale(&(Rat::one() / norm));
        if got.to_form() != Some(want) {
            return outcome(false, format!("realisation n={n}"));
        }
    }
    outcome(true, "kernel n <= 8; realisation (E4,E6) n <= 4")
}

fn c6_triples() -> Outcome {
    for n in 0..=8u32 {
        let slice = triple_slice_dim(n);
        let kernel = triple_kernel_dim((4, 4, 6), n);
        if slice as u32 != (n + 1) * (n + 2) / 2 || kernel as u32 != n + 1 {
            return outcome(false, format!("n={n}: slice {slice}, kernel {kernel}"));
        }
    }
    let prec = 15;
    let triples = [
        ("(E4,E4,E6)", e4(prec), e4(prec), e6(prec)),
        ("(E4,E6,Delta)", e4(prec), e6(prec), delta(prec).unwrap()),
    ];
    for (name, f, g, h) in &triples {
        for n in 0..=3 {
            for p in 0..=n {
                if !lower(&xi_vector_concrete(f, g, h, n, p).unwrap()).is_zero() {
                    return outcome(false, format!("xi {name} n={n} p={p}"));
                }
            }
        }
    }
    outcome(true, "dims n <= 8; xi n <= 3 on 2 triples")
}

fn c7_cmz_identities() -> Outcome {
    for kappa in [rat(1, 2), rat(3, 2), ri(2), rat(5, 2)] {
        let table = induced_a_table(&kappa, 5, 3 * 4 + 5).unwrap();
        let recs = ident_grid(&table, 5, 4).unwrap();
        if let Some(r) = recs.iter().find(|r| !r.residual.is_zero()) {
            return outcome(false, format!("kappa={kappa} (n,p,k,l,m)=({},{},{},{},{})", r.n, r.p, r.k, r.l, r.m));
        }
    }
    outcome(true, "kappa in {1/2,3/2,2,5/2}; n <= 5, all p, k,l,m in 1..4")
}

fn c8_eholzer_assoc() -> Outcome {
    let prec = 20;
    let eh = StarCoefficients::eholzer();
    let triples = [
        ("(E4,E4,E6)", e4(prec), e4(prec), e6(prec)),
        ("(E4,E6,Delta)", e4(prec), e6(prec), delta(prec).unwrap()),
    ];
    for (name, f, g, h) in triples {
        let (f, g, h) = (GradedForm::from(f), GradedForm::from(g), GradedForm::from(h));
        if !assoc_residual(&f, &g, &h, &eh, 4).unwrap().is_zero() {
            return outcome(false, name);
        }
    }
    outcome(true, "order 4, prec 20")
}

fn c9_uniqueness_of_coefficients() -> Outcome {
    let c = rat(-5, 4);
    let mut nullities = Vec::new();
    for n in 2..=5 {
        let g = global_solve(n, 6, &c).unwrap();
        if n == 2 && !is_a2_kernel_direction(&g.variables, &g.kernel[0]) {
            return outcome(false, "n=2 kernel is not 2k*2l/(2k+2l+1)");
        }
        nullities.push(g.nullity);
    }
    if nullities != [1, 0, 0, 0] {
        return outcome(false, format!("nullities {nullities:?}"));
    }
    let samples: Vec<Rat> = (0..7).map(|i| ri(i - 3)).collect();
    let degrees: Vec<u32> = (2..=4).map(|n| degree_in_c(n, 4, 6, &samples).unwrap()).collect();
    if degrees != [1, 1, 2] {
        return outcome(false, format!("degrees in c {degrees:?}"));
    }
    outcome(true, "nullities [1,0,0,0] at X=6; degrees in c [1,1,2]")
}

fn c10_kappa_c() -> Outcome {
    let mut bad = Vec::new();
    for kappa in [rat(1, 2), rat(3, 2), ri(2), rat(5, 2)] {
        let r = kappa_c_correspondence(&kappa, 4).unwrap();
        if !r.consistent {
            let induced = induced_c(&kappa, 4).unwrap().map(|c| c.to_string()).unwrap_or("none".into());
            bad.push(format!("kappa={kappa}: formula c={}, induced c={induced}", r.c_formula));
        }
    }
    if bad.is_empty() {
        outcome(true, "c = -3+4k-k^2 on 4 samples")
    } else {
        outcome(false, bad.join("; "))
    }
}

fn c11_determinants() -> Outcome {
    for n in 3..=6 {
        for k in 1..=5 {
            for l in 1..=5 {
                for m in 1..=5 {
                    let d = det2x2_lemma(n, k, l, m).unwrap();
                    if d.closed != d.direct || d.closed >= Rat::zero() {
                        return outcome(false, format!("2x2 at (n,k,l,m)=({n},{k},{l},{m})"));
                    }
                }
            }
        }
    }
    for k in 1..=6 {
        for m in k..=6 {
            for l in 1..=6 {
                if fine_det3(k, l, m) >= Rat::zero() {
                    return outcome(false, format!("3x3 at (k,l,m)=({k},{l},{m})"));
                }
            }
        }
    }
    let certified = fine_det3_certificate().is_some_and(|(_, pos)| pos.all_positive);
    if !certified {
        return outcome(false, "3x3 is not -32 l^2 times a positive polynomial");
    }
    outcome(true, "2x2 closed = direct < 0; 3x3 < 0 on 1..6")
}

fn c12_p3() -> Outcome {
    let (_, report) = p3_substitute_and_certify().unwrap();
    let detail = format!(
        "{} positive terms; k^5 l -> {}, l^2 m^8 -> {}; braced-factor diffs: {}",
        report.substituted_terms,
        report.coeff_k5_l,
        report.coeff_l2_m8,
        report
            .inner_diff
            .iter()
            .map(|d| format!("{} (derived {}, printed {})", d.monomial, d.derived, d.appendix))
            .collect::<Vec<_>>()
            .join(", ")
    );
    outcome(report.ok(), detail)
}

fn c13_rc_uniqueness() -> Outcome {
    let prec = 15;
    let f = GradedForm::from_parts([e4(prec), e6(prec)]);
    let g = GradedForm::from_parts([e6(prec), delta(prec).unwrap()]);
    for c in [ri(3), rat(-2, 5)] {
        let r = rc_uniqueness_check(&f.scale(&c), &g, &f, &g.scale(&c), 3, prec);
        if r.c != Some(c.clone()) {
            return outcome(false, format!("did not recover C={c}"));
        }
    }
    let report = uniqueness_search(2024, 1000, 3, prec);
    let pass = report.counterexamples == 0 && report.recovered > 0;
    outcome(
        pass,
        format!(
            "{} instances: {} equal, {} proportional recovered, {} separated by brackets, {} counterexamples",
            report.instances, report.equal_pairs, report.recovered, report.separated_by_brackets, report.counterexamples
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 13] = [
        (1, "canonical RC identity", c1_canonical_rc),
        (2, "combi bracket", c2_combi),
        (3, "derivative expansion", c3_der),
        (4, "Casimir eigenvalue", c4_casimir),
        (5, "lowest-weight vectors", c5_lowest_weight),
        (6, "triple-space dimensions and xi", c6_triples),
        (7, "CMZ identities", c7_cmz_identities),
        (8, "Eholzer associativity", c8_eholzer_assoc),
        (9, "uniqueness of coefficients", c9_uniqueness_of_coefficients),
        (10, "kappa-c correspondence", c10_kappa_c),
        (11, "determinant certificates", c11_determinants),
        (12, "P3 positivity", c12_p3),
        (13, "unique factorisation", c13_rc_uniqueness),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {id:>2} {name} [{:.1}s]: {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    if failed != EXPECTED_FAILURES {
        eprintln!("unexpected set of failing criteria: {failed:?}, expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
    println!("acceptance: failing set {failed:?} as expected");
}
