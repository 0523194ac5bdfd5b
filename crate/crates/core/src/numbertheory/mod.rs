//! Arbitrary-precision number-theoretic primitives shared by every other
//! module: primality, factoring with a pluggable hint oracle, modular square
//! roots, Cornacchia, smoothness testing, and Gaussian integers.
//!
//! Everything here is a pure function of its inputs; random choices (the
//! Miller–Rabin bases, the rho polynomial constants) come from fixed seeds so
//! results are deterministic across runs.

mod cornacchia;
mod factor;
mod gaussian;
pub mod modular;
mod primality;
mod smooth;
mod sqrt_mod;

pub use cornacchia::cornacchia_sum_two_squares;
pub use factor::{factor, factor_with_config, FactorConfig};
pub use gaussian::{gaussian_triple, GaussianInteger};
pub use modular::{inv_mod, legendre};
pub use primality::is_probable_prime;
pub use smooth::{is_powersmooth, is_smooth};
pub use sqrt_mod::sqrt_mod;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NtError {
    /// The factoring effort budget ran out. Retry with a different target or
    /// supply verified factor hints.
    #[error("factoring budget exhausted on cofactor with {bits} bits")]
    FactoringTimeout { bits: u64 },
    /// `gaussian_triple` was handed z = re + im·i with gcd(re, im) ≠ 1, which
    /// would produce a non-primitive triple.
    #[error("gaussian integer is not primitive: gcd(re, im) != 1")]
    NotPrimitive,
    /// A claimed factor hint failed verification (does not divide, or is not
    /// prime).
    #[error("factor hint {hint} rejected: {reason}")]
    BadHint { hint: BigUint, reason: &'static str },
}

/// A complete factorization `value = ∏ primeᵉ`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub value: BigUint,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub prime: BigUint,
    pub exponent: u32,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization { value: BigUint::one(), factors: Vec::new() }
    }

    /// Assembles a factorization from (prime, exponent) pairs, sorting and
    /// merging duplicates, and recomputing the value.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (BigUint, u32)>) -> Self {
        let mut map: std::collections::BTreeMap<BigUint, u32> = Default::default();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        let mut value = BigUint::one();
        let factors: Vec<FactorEntry> = map
            .into_iter()
            .map(|(prime, exponent)| {
                value *= prime.pow(exponent);
                FactorEntry { prime, exponent }
            })
            .collect();
        Factorization { value, factors }
    }

    /// Recomputes ∏ primeᵉ and checks it against `value`, that each prime is
    /// probably prime, and that primes strictly increase.
    pub fn is_valid(&self) -> bool {
        let mut prod = BigUint::one();
        let mut prev: Option<&BigUint> = None;
        for entry in &self.factors {
            if entry.exponent == 0 || !is_probable_prime(&entry.prime) {
                return false;
            }
            if let Some(prev) = prev {
                if prev >= &entry.prime {
                    return false;
                }
            }
            prev = Some(&entry.prime);
            prod *= entry.prime.pow(entry.exponent);
        }
        prod == self.value
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|f| &f.prime)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors.iter().find(|f| &f.prime == p).map_or(0, |f| f.exponent)
    }

    /// Largest prime factor, if any.
    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|f| &f.prime)
    }

    /// All divisors, ascending. Only sensible for small factorizations.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for entry in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (entry.exponent as usize + 1));
            let mut pk = BigUint::one();
            for _ in 0..=entry.exponent {
                for d in &divs {
                    next.push(d * &pk);
                }
                pk *= &entry.prime;
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_validity() {
        let f = Factorization::from_pairs([(BigUint::from(2u32), 2), (BigUint::from(3u32), 1)]);
        assert_eq!(f.value, BigUint::from(12u32));
        assert!(f.is_valid());

        let bogus = Factorization {
            value: BigUint::from(12u32),
            factors: vec![FactorEntry { prime: BigUint::from(4u32), exponent: 1 }],
        };
        assert!(!bogus.is_valid());
    }

    #[test]
    fn divisors_enumeration() {
        let f = Factorization::from_pairs([(BigUint::from(2u32), 2), (BigUint::from(3u32), 1)]);
        let divs: Vec<u32> = f.divisors().iter().map(|d| d.to_string().parse().unwrap()).collect();
        assert_eq!(divs, vec![1, 2, 3, 4, 6, 12]);
    }
}
