use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Shorthand for the integer `v` as a rational.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^e` for a possibly negative exponent.
pub fn pow2(e: i64) -> BigRational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// Bit size `1 + ceil(log2(|p|+1)) + ceil(log2(q+1))` of `p/q` in lowest terms.
///
/// `ceil(log2(n+1))` is exactly the bit length of `n`, so no logarithms are taken.
pub fn encoding_size(q: &BigRational) -> u64 {
    1 + q.numer().magnitude().bits() + q.denom().magnitude().bits()
}

/// Total encoding size of a rational vector.
pub fn vector_size(v: &[BigRational]) -> u64 {
    v.iter().map(encoding_size).sum()
}

/// Exact square root when both numerator and denominator are perfect squares.
pub fn rational_sqrt(q: &BigRational) -> Result<Option<BigRational>> {
    if q.is_negative() {
        return Err(Error::Contract(format!("rational_sqrt of negative value {q}")));
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Ok(Some(BigRational::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        )))
    } else {
        Ok(None)
    }
}

pub fn floor_to_int(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_to_int(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Largest multiple of `2^-bits` not exceeding `q`.
pub fn dyadic_floor(q: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    BigRational::new(floor_to_int(&(q * BigRational::from_integer(scale.clone()))), scale)
}

/// Smallest multiple of `2^-bits` not below `q`.
pub fn dyadic_ceil(q: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    BigRational::new(ceil_to_int(&(q * BigRational::from_integer(scale.clone()))), scale)
}

/// Nearest multiple of `2^-bits`, ties rounded up.
pub fn dyadic_round(q: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone()) + BigRational::new(1.into(), 2.into());
    BigRational::new(floor_to_int(&scaled), scale)
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"-1.259"` or `"1e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let mut value = BigRational::new(digits, num_traits::pow(BigInt::from(10), fp.len()));
    let ten = BigRational::from_integer(BigInt::from(10));
    if exp >= 0 {
        value *= num_traits::pow(ten, exp as usize);
    } else {
        value /= num_traits::pow(ten, exp.unsigned_abs() as usize);
    }
    Ok(if neg { -value } else { value })
}

/// Canonical `"num/den"` text.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Serde adapter writing a rational as a `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatStr(pub BigRational);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rational(&s).map(RatStr).map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(RatStr(int(i))),
        }
    }
}

pub(crate) fn biguint_to_rat(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, v))
}

#[allow(dead_code)]
pub(crate) fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(encoding_size(&int(0)), 2);
        assert_eq!(encoding_size(&rat(1, 65536)), 19);
        assert_eq!(encoding_size(&rat(-3, 2)), 5);
        assert_eq!(encoding_size(&int(1)), 3);
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(4, 9)).unwrap(), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&int(2)).unwrap(), None);
        assert_eq!(rational_sqrt(&int(0)).unwrap(), Some(int(0)));
        assert_eq!(rational_sqrt(&rat(9, 2)).unwrap(), None);
        assert!(rational_sqrt(&int(-1)).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1.259").unwrap(), rat(1259, 1000));
        assert_eq!(parse_rational("-137/50").unwrap(), rat(-137, 50));
        assert_eq!(parse_rational("-2.74").unwrap(), rat(-137, 50));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        let q = rat(-7, 3);
        assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn rounding() {
        let q = rat(1, 3);
        assert_eq!(dyadic_floor(&q, 2), rat(1, 4));
        assert_eq!(dyadic_ceil(&q, 2), rat(1, 2));
        assert_eq!(dyadic_round(&q, 2), rat(1, 4));
        assert_eq!(floor_to_int(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil_to_int(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(pow2(-3), rat(1, 8));
    }
}
