//! Modular inverses, Legendre symbols, and Tonelli–Shanks square roots
//! modulo an odd prime. Building blocks for the composite square-root
//! machinery and the quadratic-form solvability tests.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Inverse of `a` modulo `m`, if gcd(a, m) = 1.
pub fn inv_mod(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from(a % m);
    let m_int = BigInt::from(m.clone());
    let e = a.extended_gcd(&m_int);
    if !e.gcd.is_one() {
        return None;
    }
    let mut x = e.x % &m_int;
    if x.is_negative() {
        x += &m_int;
    }
    Some(x.to_biguint().unwrap())
}

/// Legendre symbol (a | q) for odd prime q: 0, 1, or -1.
pub fn legendre(a: &BigUint, q: &BigUint) -> i32 {
    let a = a % q;
    if a.is_zero() {
        return 0;
    }
    let exp = (q - BigUint::one()) >> 1;
    let r = a.modpow(&exp, q);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// One square root of `a` modulo an odd prime `q`, for `a` a nonzero
/// quadratic residue. Tonelli–Shanks, deterministic (smallest nonresidue).
pub fn tonelli_shanks(a: &BigUint, q: &BigUint) -> Option<BigUint> {
    let a = a % q;
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    if legendre(&a, q) != 1 {
        return None;
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if q % 4u32 == BigUint::from(3u32) {
        let exp = (q + &one) >> 2;
        return Some(a.modpow(&exp, q));
    }
    // Write q - 1 = s · 2^e with s odd.
    let q_minus_1 = q - &one;
    let e = q_minus_1.trailing_zeros().unwrap();
    let s = &q_minus_1 >> e;
    // Smallest quadratic nonresidue.
    let mut z = two.clone();
    while legendre(&z, q) != -1 {
        z += &one;
    }
    let mut c = z.modpow(&s, q);
    let mut x = a.modpow(&((&s + &one) >> 1), q);
    let mut t = a.modpow(&s, q);
    let mut m = e;
    while !t.is_one() {
        // Smallest i with t^(2^i) = 1.
        let mut i = 0u64;
        let mut probe = t.clone();
        while !probe.is_one() {
            probe = (&probe * &probe) % q;
            i += 1;
        }
        let b = c.modpow(&(one.clone() << (m - i - 1)), q);
        x = x * &b % q;
        c = (&b * &b) % q;
        t = t * &c % q;
        m = i;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let m = BigUint::from(3119u32);
        for a in [1u32, 2, 7, 100, 3000] {
            let a = BigUint::from(a);
            let inv = inv_mod(&a, &m).unwrap();
            assert_eq!((a * inv) % &m, BigUint::one());
        }
        assert!(inv_mod(&BigUint::from(6u32), &BigUint::from(9u32)).is_none());
    }

    #[test]
    fn legendre_matches_exhaustive_squares() {
        for q in [7u32, 59, 3119] {
            let qb = BigUint::from(q);
            let squares: std::collections::HashSet<u32> =
                (1..q).map(|x| ((x as u64 * x as u64) % q as u64) as u32).collect();
            for a in 1..q.min(200) {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(&BigUint::from(a), &qb), expected, "a={a} q={q}");
            }
        }
    }

    #[test]
    fn tonelli_both_branches() {
        // q = 3 mod 4 branch.
        let q = BigUint::from(59u32);
        let r = tonelli_shanks(&BigUint::from(19u32), &q).unwrap();
        assert_eq!((&r * &r) % &q, BigUint::from(19u32));
        // q = 1 mod 4 branch.
        let q = BigUint::from(1009u32);
        for a in 2u32..60 {
            let ab = BigUint::from(a);
            if legendre(&ab, &q) == 1 {
                let r = tonelli_shanks(&ab, &q).unwrap();
                assert_eq!((&r * &r) % &q, ab);
            }
        }
    }
}
