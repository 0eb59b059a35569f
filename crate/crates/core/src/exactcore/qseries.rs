//! Truncated q-expansions with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{ri, Rat};

/// `c_0 + c_1 q + … + c_{prec-1} q^{prec-1} + O(q^prec)`.
///
/// Binary operations truncate to the smaller precision of their operands;
/// nothing ever extends a precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQSeries", into = "RawQSeries")]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct RawQSeries {
    prec: usize,
    #[serde(with = "super::rat::serde_rat_vec")]
    coeffs: Vec<Rat>,
}

impl TryFrom<RawQSeries> for QSeries {
    type Error = String;

    fn try_from(raw: RawQSeries) -> Result<Self, String> {
        if raw.prec == 0 || raw.coeffs.len() != raw.prec {
            return Err(format!(
                "prec {} does not match {} coefficients",
                raw.prec,
                raw.coeffs.len()
            ));
        }
        Ok(QSeries { coeffs: raw.coeffs })
    }
}

impl From<QSeries> for RawQSeries {
    fn from(q: QSeries) -> Self {
        RawQSeries { prec: q.prec(), coeffs: q.coeffs }
    }
}

impl QSeries {
    /// Panics on an empty coefficient list: a series always knows at least
    /// its constant term.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "QSeries needs prec >= 1");
        QSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ri(c)).collect())
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(vec![Rat::zero(); prec])
    }

    pub fn constant(c: Rat, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Rat::one(), prec)
    }

    /// `c q^n`, or the zero series when `n >= prec`.
    pub fn monomial(c: Rat, n: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if n < prec {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1 && prec <= self.prec(), "cannot extend precision");
        Self::new(self.coeffs[..prec].to_vec())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `D = q d/dq`: multiplies the coefficient of `q^n` by `n`.
    pub fn derive(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * ri(n as i64))
                .collect(),
        )
    }

    pub fn derive_n(&self, times: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..times {
            out = out.derive();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.prec());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    /// Schoolbook Cauchy product truncated to the smaller precision.
    fn mul(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let mut out = vec![Rat::zero(); prec];
        for (i, a) in self.coeffs.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(prec - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_identity_and_inverse() {
        let a = QSeries::from_ints(&[1, 1, 0, 0, 0]);
        assert_eq!(&a + &QSeries::zero(5), a);
        assert!((&a + &(-&a)).is_zero());
        assert_eq!((&a + &(-&a)).prec(), 5);
    }

    #[test]
    fn add_truncates_to_min_prec() {
        let e4 = QSeries::from_ints(&[1, 240, 2160]);
        let e6 = QSeries::from_ints(&[1, -504]);
        assert_eq!(&e4 + &e6, QSeries::from_ints(&[2, -264]));
    }

    #[test]
    fn products() {
        let one_plus_q = QSeries::from_ints(&[1, 1, 0]);
        assert_eq!(one_plus_q.pow(2), QSeries::from_ints(&[1, 2, 1]));
        let e4 = QSeries::from_ints(&[1, 240, 2160]);
        assert_eq!(&e4 * &QSeries::one(3), e4);
        assert_eq!(&e4 * &e4, QSeries::from_ints(&[1, 480, 61920]));
    }

    #[test]
    fn derivative() {
        assert!(QSeries::constant(ri(7), 4).derive().is_zero());
        let q = QSeries::monomial(ri(1), 1, 4);
        assert_eq!(q.derive(), q);
        let e4 = QSeries::from_ints(&[1, 240, 2160]);
        assert_eq!(e4.derive(), QSeries::from_ints(&[0, 240, 4320]));
    }

    #[test]
    fn json_shape() {
        let s = QSeries::new(vec![ri(1), Rat::new(5.into(), 3.into())]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"prec":2,"coeffs":["1","5/3"]}"#);
        let back: QSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<QSeries>(r#"{"prec":3,"coeffs":["1"]}"#).is_err());
    }
}
