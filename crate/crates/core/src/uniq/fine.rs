//! Certificates for the case analysis on `[fg, h]_n = [f, gh]_n`.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactcore::{binom_int, poch, ri, MPoly, Positivity, Rat};
use crate::forms::ModularForm;
use crate::nearlyholo::rc_bracket;

/// `[f·g, h]_n - [f, g·h]_n`.
pub fn bracket_shift_residual(f: &ModularForm, g: &ModularForm, h: &ModularForm, n: u32) -> Result<ModularForm> {
    let prec = f.prec().min(g.prec()).min(h.prec());
    let (f, g, h) = (f.truncate(prec), g.truncate(prec), h.truncate(prec));
    let left = rc_bracket(&f.mul(&g), &h, n)?;
    let right = rc_bracket(&f, &g.mul(&h), n)?;
    Ok(left.sub(&right))
}

const KLM: [&str; 3] = ["k", "l", "m"];

fn mpoch(a: &MPoly, n: u32) -> MPoly {
    let vars: Vec<&str> = a.vars().iter().map(String::as_str).collect();
    let mut acc = MPoly::constant(&vars, Rat::one());
    for i in 0..n {
        let shifted = a + &MPoly::constant(&vars, ri(i64::from(i)));
        acc = &acc * &shifted;
    }
    acc
}

fn sign(n: u32) -> Rat {
    if n % 2 == 0 {
        ri(1)
    } else {
        ri(-1)
    }
}

/// Row `n` (`n = 1, 2, 3`) of the 3×3 matrix, as polynomials in `k, l, m`:
/// `[(-1)ⁿ(2m)_n - (-1)ⁿ(2l+2m)_n, (-1)ⁿ(2m)_n - (2k)_n, (2k+2l)_n - (2k)_n]`.
fn det3_row(n: u32) -> [MPoly; 3] {
    let v = |s| MPoly::var(&KLM, s);
    let two = MPoly::constant(&KLM, ri(2));
    let (k2, l2, m2) = (&two * &v("k"), &two * &v("l"), &two * &v("m"));
    let s = MPoly::constant(&KLM, sign(n));
    let pm = mpoch(&m2, n);
    let pk = mpoch(&k2, n);
    [
        &(&s * &pm) - &(&s * &mpoch(&(&l2 + &m2), n)),
        &(&s * &pm) - &pk,
        &mpoch(&(&k2 + &l2), n) - &pk,
    ]
}

fn det3<T>(m: &[[T; 3]; 3]) -> T
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Sub<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    let minor = |a: &T, b: &T, c: &T, d: &T| &(a * d) - &(b * c);
    let t0 = &m[0][0] * &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
    let t1 = &m[0][1] * &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
    let t2 = &m[0][2] * &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
    &(&t0 - &t1) + &t2
}

/// The determinant as a polynomial in `k, l, m`.
pub fn fine_det3_poly() -> MPoly {
    det3(&[det3_row(1), det3_row(2), det3_row(3)])
}

/// The determinant at integer `(k, l, m)`, evaluated directly from the
/// Pochhammer entries.
pub fn fine_det3(k: i64, l: i64, m: i64) -> Rat {
    let p = |a: i64, n: u32| poch(&ri(a), n);
    let row = |n: u32| {
        let s = sign(n);
        [
            &s * p(2 * m, n) - &s * p(2 * l + 2 * m, n),
            &s * p(2 * m, n) - p(2 * k, n),
            p(2 * k + 2 * l, n) - p(2 * k, n),
        ]
    };
    det3(&[row(1), row(2), row(3)])
}

/// `det = -32 l² Q`; returns `Q` and whether all its coefficients are
/// positive, which makes the determinant negative for all positive `k, l, m`.
pub fn fine_det3_certificate() -> Option<(MPoly, Positivity)> {
    let det = fine_det3_poly();
    let l = MPoly::var(&KLM, "l");
    let factor = &MPoly::constant(&KLM, ri(-32)) * &(&l * &l);
    let q = det.div_exact(&factor)?;
    let pos = q.all_coeffs_positive();
    Some((q, pos))
}

/// Residual of the lowest-order identity in `q`:
///
/// ```text
/// Σ_p (-1)^p C(n,p) (2k+2l+p)_{n-p} (2m+n-p)_p (r+s)^p t^{n-p}
/// - Σ_q (-1)^q C(n,q) (2k+q)_{n-q} (2l+2m+n-q)_q r^q (s+t)^{n-q}
/// ```
pub fn lowest_q_identity(n: u32, k: &Rat, l: &Rat, m: &Rat, r: &Rat, s: &Rat, t: &Rat) -> Rat {
    let two = ri(2);
    let pw = |x: &Rat, e: u32| (0..e).fold(Rat::one(), |acc, _| acc * x);
    let mut acc = Rat::zero();
    for p in 0..=n {
        let c = sign(p) * binom_int(i64::from(n), i64::from(p));
        let a = poch(&(&two * k + &two * l + ri(i64::from(p))), n - p);
        let b = poch(&(&two * m + ri(i64::from(n - p))), p);
        acc += c * a * b * pw(&(r + s), p) * pw(t, n - p);
    }
    for q in 0..=n {
        let c = sign(q) * binom_int(i64::from(n), i64::from(q));
        let a = poch(&(&two * k + ri(i64::from(q))), n - q);
        let b = poch(&(&two * l + &two * m + ri(i64::from(n - q))), q);
        acc -= c * a * b * pw(r, q) * pw(&(s + t), n - q);
    }
    acc
}

pub const KLMRST: [&str; 6] = ["k", "l", "m", "r", "s", "t"];

/// [`lowest_q_identity`] with every argument symbolic.
pub fn lowest_q_poly(n: u32) -> MPoly {
    let v = |s| MPoly::var(&KLMRST, s);
    let c = |x: i64| MPoly::constant(&KLMRST, ri(x));
    let two = c(2);
    let (k2, l2, m2) = (&two * &v("k"), &two * &v("l"), &two * &v("m"));
    let (r, s, t) = (v("r"), v("s"), v("t"));
    let mut acc = MPoly::zero(&KLMRST);
    for p in 0..=n {
        let coef = MPoly::constant(&KLMRST, sign(p) * binom_int(i64::from(n), i64::from(p)));
        let a = mpoch(&(&(&k2 + &l2) + &c(i64::from(p))), n - p);
        let b = mpoch(&(&m2 + &c(i64::from(n - p))), p);
        let term = &(&(&coef * &a) * &b) * &(&(&r + &s).pow(p) * &t.pow(n - p));
        acc = &acc + &term;
    }
    for q in 0..=n {
        let coef = MPoly::constant(&KLMRST, sign(q) * binom_int(i64::from(n), i64::from(q)));
        let a = mpoch(&(&k2 + &c(i64::from(q))), n - q);
        let b = mpoch(&(&(&l2 + &m2) + &c(i64::from(n - q))), q);
        let term = &(&(&coef * &a) * &b) * &(&r.pow(q) * &(&s + &t).pow(n - q));
        acc = &acc - &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;
    use crate::forms::{e4, e6, ModularForm};

    #[test]
    fn shift_residual() {
        let p = 12;
        let c = ModularForm::constant(ri(5), p);
        for n in 0..=3 {
            assert!(bracket_shift_residual(&e4(p), &c, &e6(p), n).unwrap().is_zero());
        }
        let r = bracket_shift_residual(&e4(p), &e4(p), &e6(p), 1).unwrap();
        assert_eq!(r.weight, 16);
        assert!(!r.series.coeff(1).is_zero());
    }

    #[test]
    fn det3_negative_and_factored() {
        assert!(fine_det3(1, 1, 1) < Rat::zero());
        assert!(fine_det3(1, 2, 3) < Rat::zero());
        let poly = fine_det3_poly();
        for (k, l, m) in [(1, 1, 1), (2, 3, 5), (4, 1, 6)] {
            assert_eq!(poly.eval_ints(&[k, l, m]), fine_det3(k, l, m));
        }
        let l2 = &MPoly::var(&KLM, "l") * &MPoly::var(&KLM, "l");
        assert!(poly.div_exact(&l2).is_some());
        let (_, pos) = fine_det3_certificate().unwrap();
        assert!(pos.all_positive);
    }

    #[test]
    fn lowest_q_n1() {
        let n1 = lowest_q_poly(1);
        let v = |s| MPoly::var(&KLMRST, s);
        let two = MPoly::constant(&KLMRST, ri(2));
        let want = &two * &(&(&v("l") * &(&v("r") + &v("t"))) - &(&(&v("k") + &v("m")) * &v("s")));
        assert_eq!(n1, want);
    }

    #[test]
    fn lowest_q_matches_poly() {
        let p = lowest_q_poly(3);
        let pt = [ri(2), ri(1), ri(3), rat(1, 2), ri(-2), ri(5)];
        assert_eq!(p.eval(&pt), lowest_q_identity(3, &pt[0], &pt[1], &pt[2], &pt[3], &pt[4], &pt[5]));
    }

    #[test]
    fn lowest_q_n2_vanishes_on_the_curve() {
        for (k, l, m) in [(1, 1, 1), (2, 1, 3), (3, 4, 1)] {
            let (kr, lr, mr) = (ri(k), ri(l), ri(m));
            let t = ri((k + 3 * m) * (k + l + m) + (k + m));
            let r = ri((3 * k + m) * (k + l + m) + (k + m));
            let s = &lr * (&r + &t) / (&kr + &mr);
            assert!(lowest_q_identity(2, &kr, &lr, &mr, &r, &s, &t).is_zero());
        }
    }
}
