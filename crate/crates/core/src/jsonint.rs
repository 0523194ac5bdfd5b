//! Serde adapters serializing integers and rationals as decimal strings.
//!
//! All file formats in this workspace carry integers in decimal, never as
//! JSON numbers, so arbitrary-precision values survive any JSON tooling.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub mod biguint_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| D::Error::custom("expected a decimal integer string"))
    }
}

pub mod bigint_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| D::Error::custom("expected a decimal integer string"))
    }
}

pub mod rational_dec {
    use super::*;

    /// Rationals serialize as `"num/den"` in lowest terms (`"3"` when integral).
    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

pub fn rational_to_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p/q"`, a plain integer, or a decimal literal like `"0.4"`
/// (kept exact: `0.4` becomes `2/5`).
pub fn parse_rational(raw: &str) -> Result<BigRational, String> {
    let raw = raw.trim();
    if let Some((n, d)) = raw.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {raw:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {raw:?}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {raw:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = raw.split_once('.') {
        let (neg, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int),
        };
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if frac.is_empty() || !digits_ok(frac) || !digits_ok(int) {
            return Err(format!("bad decimal in {raw:?}"));
        }
        let int_val: BigUint = if int.is_empty() { BigUint::from(0u32) } else { int.parse().unwrap() };
        let frac_val: BigUint = frac.parse().unwrap();
        let scale = BigUint::from(10u32).pow(frac.len() as u32);
        let mut num = BigInt::from(int_val * &scale + frac_val);
        if neg {
            num = -num;
        }
        return Ok(BigRational::new(num, BigInt::from(scale)));
    }
    let n: BigInt = raw.parse().map_err(|_| format!("bad rational {raw:?}"))?;
    Ok(BigRational::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_parse_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("1.1538").unwrap(), BigRational::new(5769.into(), 5000.into()));
        assert_eq!(parse_rational("3/7").unwrap(), BigRational::new(3.into(), 7.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), BigRational::from(BigInt::from(2)));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
