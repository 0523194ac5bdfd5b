//! Gaussian integers and the Pythagorean-triple correspondence
//! (B, A, d) = (N(z), |Re(z²)|, |Im(z²)|) for primitive z.

use super::NtError;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianInteger {
    #[serde(with = "crate::jsonint::bigint_dec")]
    pub re: BigInt,
    #[serde(with = "crate::jsonint::bigint_dec")]
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInteger { re: re.into(), im: im.into() }
    }

    pub fn norm(&self) -> BigUint {
        (&self.re * &self.re + &self.im * &self.im).magnitude().clone()
    }

    pub fn mul(&self, other: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn conj(&self) -> GaussianInteger {
        GaussianInteger { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn pow(&self, k: u64) -> GaussianInteger {
        let mut acc = GaussianInteger::new(1, 0);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

/// The Pythagorean triple attached to a primitive Gaussian integer:
/// returns (B, A, d) = (N(z), |Re(z²)|, |Im(z²)|), satisfying A² + d² = B².
/// Which of the two legs plays the "A" role is the caller's choice.
pub fn gaussian_triple(z: &GaussianInteger) -> Result<(BigUint, BigUint, BigUint), NtError> {
    let g = z.re.magnitude().gcd(z.im.magnitude());
    if !g.is_one() {
        return Err(NtError::NotPrimitive);
    }
    let b = z.norm();
    let z2 = z.mul(z);
    let a = z2.re.magnitude().clone();
    let d = z2.im.magnitude().clone();
    debug_assert_eq!(&a * &a + &d * &d, &b * &b);
    Ok((b, a, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(re: i64, im: i64) -> (u64, u64, u64) {
        let (b, a, d) = gaussian_triple(&GaussianInteger::new(re, im)).unwrap();
        (
            b.to_string().parse().unwrap(),
            a.to_string().parse().unwrap(),
            d.to_string().parse().unwrap(),
        )
    }

    #[test]
    fn spec_examples() {
        assert_eq!(triple(2, 1), (5, 3, 4));
        // z = (2+i)² = 3+4i.
        assert_eq!(triple(3, 4), (25, 7, 24));
    }

    #[test]
    fn non_primitive_rejected() {
        assert_eq!(
            gaussian_triple(&GaussianInteger::new(2, 4)),
            Err(NtError::NotPrimitive)
        );
    }

    #[test]
    fn big_power_identity() {
        // z = (2+i)^105: the identity A² + d² = B² holds as a big-integer
        // identity, with B = 5^105.
        let z = GaussianInteger::new(2, 1).pow(105);
        let (b, a, d) = gaussian_triple(&z).unwrap();
        assert_eq!(b, BigUint::from(5u32).pow(105));
        assert_eq!(&a * &a + &d * &d, &b * &b);
    }
}
