//! Arbitrary-precision rationals.
//!
//! [`Rat`] is `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator, so structural equality is value
//! equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `n` as a rational.
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Rising factorial `(a)_n = a(a+1)…(a+n-1)`, with `(a)_0 = 1`.
pub fn poch(a: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x += Rat::one();
    }
    acc
}

pub fn factorial(n: u32) -> Rat {
    poch(&Rat::one(), n)
}

/// Generalised binomial `C(a, j) = a(a-1)…(a-j+1)/j!` for rational `a`.
pub fn binom(a: &Rat, j: u32) -> Rat {
    let mut num = Rat::one();
    let mut x = a.clone();
    for _ in 0..j {
        num *= &x;
        x -= Rat::one();
    }
    num / factorial(j)
}

/// Binomial with integer arguments; zero when `j < 0`.
pub fn binom_int(a: i64, j: i64) -> Rat {
    if j < 0 {
        return Rat::zero();
    }
    binom(&ri(a), j as u32)
}

pub(crate) mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rat(0, 7), Rat::zero());
        assert_eq!(*rat(0, 7).denom(), BigInt::one());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-5/3", "240", "1/144"] {
            assert_eq!(parse_rat(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(5, 2), ri(10));
        assert_eq!(binom_int(3, 5), ri(0));
        assert_eq!(binom_int(-1, 3), ri(-1));
        assert_eq!(binom(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(poch(&ri(4), 3), ri(120));
        assert_eq!(poch(&ri(0), 2), ri(0));
        assert_eq!(factorial(5), ri(120));
    }
}
