//! Arithmetic in F_p² = F_p(i), i² = -1, for p ≡ 3 (mod 4).
//!
//! Elements are pairs (c0, c1) representing c0 + c1·i with both residues
//! reduced mod p. The context struct owns the prime and hands out all
//! operations; elements are plain data.

use crate::numbertheory::modular::inv_mod;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct Fp2 {
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub c0: BigUint,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub c1: BigUint,
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{}+{}i", self.c0, self.c1)
        }
    }
}

/// The field F_p² for a fixed prime p ≡ 3 (mod 4).
#[derive(Debug, Clone)]
pub struct Fp2Field {
    pub p: BigUint,
}

impl Fp2Field {
    /// Requires p ≡ 3 (mod 4) so that x² + 1 is irreducible over F_p.
    pub fn new(p: BigUint) -> Self {
        assert!(
            &p % 4u32 == BigUint::from(3u32),
            "F_p(i) needs p = 3 mod 4, got p = {p}"
        );
        Fp2Field { p }
    }

    pub fn zero(&self) -> Fp2 {
        Fp2 { c0: BigUint::zero(), c1: BigUint::zero() }
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { c0: BigUint::one(), c1: BigUint::zero() }
    }

    /// The imaginary unit i (a square root of -1).
    pub fn i(&self) -> Fp2 {
        Fp2 { c0: BigUint::zero(), c1: BigUint::one() }
    }

    pub fn from_u64(&self, v: u64) -> Fp2 {
        Fp2 { c0: BigUint::from(v) % &self.p, c1: BigUint::zero() }
    }

    pub fn from_parts(&self, c0: BigUint, c1: BigUint) -> Fp2 {
        Fp2 { c0: c0 % &self.p, c1: c1 % &self.p }
    }

    pub fn add(&self, a: &Fp2, b: &Fp2) -> Fp2 {
        Fp2 {
            c0: self.add_p(&a.c0, &b.c0),
            c1: self.add_p(&a.c1, &b.c1),
        }
    }

    pub fn sub(&self, a: &Fp2, b: &Fp2) -> Fp2 {
        Fp2 {
            c0: self.sub_p(&a.c0, &b.c0),
            c1: self.sub_p(&a.c1, &b.c1),
        }
    }

    pub fn neg(&self, a: &Fp2) -> Fp2 {
        Fp2 { c0: self.neg_p(&a.c0), c1: self.neg_p(&a.c1) }
    }

    pub fn mul(&self, a: &Fp2, b: &Fp2) -> Fp2 {
        // (a0 + a1 i)(b0 + b1 i) = a0b0 - a1b1 + (a0b1 + a1b0) i
        let t0 = &a.c0 * &b.c0 % &self.p;
        let t1 = &a.c1 * &b.c1 % &self.p;
        let t2 = (&a.c0 * &b.c1 + &a.c1 * &b.c0) % &self.p;
        Fp2 { c0: self.sub_p(&t0, &t1), c1: t2 }
    }

    pub fn square(&self, a: &Fp2) -> Fp2 {
        self.mul(a, a)
    }

    pub fn mul_small(&self, a: &Fp2, k: u64) -> Fp2 {
        let k = BigUint::from(k);
        Fp2 { c0: &a.c0 * &k % &self.p, c1: &a.c1 * &k % &self.p }
    }

    /// Frobenius x ↦ x^p, i.e. conjugation c0 - c1·i.
    pub fn frobenius(&self, a: &Fp2) -> Fp2 {
        Fp2 { c0: a.c0.clone(), c1: self.neg_p(&a.c1) }
    }

    /// Norm to F_p: c0² + c1².
    pub fn norm(&self, a: &Fp2) -> BigUint {
        (&a.c0 * &a.c0 + &a.c1 * &a.c1) % &self.p
    }

    pub fn inv(&self, a: &Fp2) -> Option<Fp2> {
        if a.c0.is_zero() && a.c1.is_zero() {
            return None;
        }
        let n = self.norm(a);
        let n_inv = inv_mod(&n, &self.p)?;
        Some(Fp2 {
            c0: &a.c0 * &n_inv % &self.p,
            c1: self.neg_p(&(&a.c1 * &n_inv % &self.p)),
        })
    }

    pub fn div(&self, a: &Fp2, b: &Fp2) -> Option<Fp2> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Fp2, e: &BigUint) -> Fp2 {
        let mut acc = self.one();
        let mut base = a.clone();
        for idx in 0..e.bits() {
            if e.bit(idx) {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
        }
        acc
    }

    /// Multiplicative order of a, given a multiple `exponent_multiple` of it
    /// with known factorization.
    pub fn mult_order(
        &self,
        a: &Fp2,
        exponent_multiple: &crate::numbertheory::Factorization,
    ) -> BigUint {
        let mut order = exponent_multiple.value.clone();
        debug_assert!(self.pow(a, &order).is_one_el());
        for entry in &exponent_multiple.factors {
            for _ in 0..entry.exponent {
                let candidate = &order / &entry.prime;
                if self.pow(a, &candidate).is_one_el() {
                    order = candidate;
                } else {
                    break;
                }
            }
        }
        order
    }

    /// Square root in F_p², if one exists. Deterministic choice.
    pub fn sqrt(&self, a: &Fp2) -> Option<Fp2> {
        if a.c0.is_zero() && a.c1.is_zero() {
            return Some(self.zero());
        }
        let p = &self.p;
        if a.c1.is_zero() {
            // sqrt of a rational element: either sqrt(c0) in F_p or
            // i·sqrt(-c0).
            if let Some(r) = self.sqrt_fp(&a.c0) {
                return Some(Fp2 { c0: r, c1: BigUint::zero() });
            }
            let neg = self.neg_p(&a.c0);
            let r = self.sqrt_fp(&neg)?;
            return Some(Fp2 { c0: BigUint::zero(), c1: r });
        }
        // x = u + vi with x² = a: u² - v² = a0, 2uv = a1. The norm gives
        // u² + v² = m where m² = a0² + a1², so u² = (a0 + m)/2.
        let norm = (&a.c0 * &a.c0 + &a.c1 * &a.c1) % p;
        let m = self.sqrt_fp(&norm)?;
        let inv2 = inv_mod(&BigUint::from(2u32), p).unwrap();
        for m_candidate in [m.clone(), self.neg_p(&m)] {
            let u_sq = (self.add_p(&a.c0, &m_candidate) * &inv2) % p;
            if let Some(u) = self.sqrt_fp(&u_sq) {
                if u.is_zero() {
                    continue;
                }
                let v = (&a.c1 * inv_mod(&(self.add_p(&u, &u)), p).unwrap()) % p;
                let cand = Fp2 { c0: u, c1: v };
                if self.square(&cand) == *a {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Square root in the base field F_p (p ≡ 3 mod 4), if it exists.
    fn sqrt_fp(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            return Some(BigUint::zero());
        }
        let exp = (&self.p + BigUint::one()) >> 2;
        let r = a.modpow(&exp, &self.p);
        ((&r * &r) % &self.p == *a).then_some(r)
    }

    fn add_p(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }

    fn sub_p(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.p - b
        }
    }

    fn neg_p(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.p - a
        }
    }
}

impl Fp2 {
    pub fn is_zero_el(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one_el(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f59() -> Fp2Field {
        Fp2Field::new(BigUint::from(59u32))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = f59();
        let i = f.i();
        let minus_one = f.neg(&f.one());
        assert_eq!(f.square(&i), minus_one);
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = f59();
        let a = f.from_parts(BigUint::from(17u32), BigUint::from(42u32));
        let b = f.from_parts(BigUint::from(3u32), BigUint::from(58u32));
        let c = f.from_parts(BigUint::from(31u32), BigUint::from(7u32));
        // distributivity
        let lhs = f.mul(&a, &f.add(&b, &c));
        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
        assert_eq!(lhs, rhs);
        // inverse
        let inv = f.inv(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one_el());
    }

    #[test]
    fn sqrt_round_trip_exhaustive_small() {
        let f = f59();
        let mut squares = 0u32;
        for c0 in 0..59u32 {
            for c1 in 0..59u32 {
                let a = f.from_parts(BigUint::from(c0), BigUint::from(c1));
                if let Some(r) = f.sqrt(&a) {
                    assert_eq!(f.square(&r), a, "bad sqrt at {c0}+{c1}i");
                    squares += 1;
                }
            }
        }
        // Exactly (q-1)/2 + 1 squares in F_q*, q = 59².
        assert_eq!(squares, (59 * 59 - 1) / 2 + 1);
    }

    #[test]
    fn frobenius_is_p_power() {
        let f = f59();
        let a = f.from_parts(BigUint::from(17u32), BigUint::from(42u32));
        let expected = f.pow(&a, &BigUint::from(59u32));
        assert_eq!(f.frobenius(&a), expected);
    }
}
