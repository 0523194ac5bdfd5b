//! Complete square-root sets modulo prime powers and their products.
//!
//! `sqrt_mod` returns every residue x mod m with x² ≡ a, including the
//! degenerate cases where gcd(a, m) > 1: Tonelli–Shanks at odd primes,
//! the 4-root structure modulo 2^k for k ≥ 3, Hensel lifting to prime
//! powers, and a CRT product across the factorization of m. The empty set
//! is the answer when no root exists.

use super::modular::{inv_mod, tonelli_shanks};
use super::Factorization;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// All square roots of `a` modulo `m`, where `m_fact` is the factorization
/// of the modulus.
pub fn sqrt_mod(a: &BigUint, m_fact: &Factorization) -> BTreeSet<BigUint> {
    let m = &m_fact.value;
    if m.is_one() {
        return [BigUint::zero()].into();
    }
    let a = a % m;

    // Roots per prime-power component, then CRT every combination.
    let mut combined: Vec<BigUint> = vec![BigUint::zero()];
    let mut modulus_so_far = BigUint::one();
    for entry in &m_fact.factors {
        let qk = entry.prime.pow(entry.exponent);
        let local = sqrt_mod_prime_power(&(&a % &qk), &entry.prime, entry.exponent);
        if local.is_empty() {
            return BTreeSet::new();
        }
        let mut next = Vec::with_capacity(combined.len() * local.len());
        if modulus_so_far.is_one() {
            next = local.into_iter().collect();
        } else {
            // x ≡ r (mod M), x ≡ s (mod qk), gcd(M, qk) = 1.
            let m_inv = inv_mod(&modulus_so_far, &qk).expect("coprime prime powers");
            let new_mod = &modulus_so_far * &qk;
            for r in &combined {
                for s in &local {
                    let diff = (s + &qk - (r % &qk)) % &qk;
                    let t = (&diff * &m_inv) % &qk;
                    next.push((r + &modulus_so_far * t) % &new_mod);
                }
            }
        }
        combined = next;
        modulus_so_far *= &qk;
    }
    combined.into_iter().collect()
}

/// All square roots of `a` modulo q^k (a already reduced mod q^k).
fn sqrt_mod_prime_power(a: &BigUint, q: &BigUint, k: u32) -> BTreeSet<BigUint> {
    let qk = q.pow(k);
    if a.is_zero() {
        // x must be divisible by q^ceil(k/2); every such residue works.
        let step = q.pow((k + 1) / 2);
        let count = q.pow(k / 2);
        let mut out = BTreeSet::new();
        let mut t = BigUint::zero();
        while t < count {
            out.insert(&step * &t % &qk);
            t += 1u32;
        }
        return out;
    }

    // Split off the q-valuation: a = q^s · u with u a unit mod q^(k-s).
    let mut s = 0u32;
    let mut u = a.clone();
    while (&u % q).is_zero() {
        u /= q;
        s += 1;
    }
    if s % 2 == 1 {
        return BTreeSet::new();
    }
    let reduced_k = k - s;
    let q_red = q.pow(reduced_k);
    let unit_roots = if q == &BigUint::from(2u32) {
        unit_sqrt_mod_2_power(&(&u % &q_red), reduced_k)
    } else {
        unit_sqrt_mod_odd_power(&(&u % &q_red), q, reduced_k)
    };
    if unit_roots.is_empty() {
        return BTreeSet::new();
    }

    // x = q^(s/2) · (y + t·q^(k-s)) for each unit root y and lift offset t.
    let shift = q.pow(s / 2);
    let lift_count = q.pow(s / 2);
    let mut out = BTreeSet::new();
    for y in unit_roots {
        let mut t = BigUint::zero();
        while t < lift_count {
            let val = &shift * ((&y + &q_red * &t) % (&q_red * &lift_count));
            out.insert(val % &qk);
            t += 1u32;
        }
    }
    out
}

/// Square roots of a unit u modulo odd q^k: Tonelli–Shanks at q, Hensel
/// lift, giving exactly {v, q^k - v} or nothing.
fn unit_sqrt_mod_odd_power(u: &BigUint, q: &BigUint, k: u32) -> Vec<BigUint> {
    let root = match tonelli_shanks(&(u % q), q) {
        Some(r) => r,
        None => return Vec::new(),
    };
    let mut v = root;
    let mut modulus = q.clone();
    for _ in 1..k {
        // Newton step: v <- v - (v² - u) / (2v) mod modulus·q.
        let next_mod = &modulus * q;
        let two_v_inv = inv_mod(&((&v << 1) % &next_mod), &next_mod).expect("v unit, q odd");
        let v2 = (&v * &v) % &next_mod;
        let diff = (&v2 + &next_mod - (u % &next_mod)) % &next_mod;
        v = (&v + &next_mod - (&diff * &two_v_inv) % &next_mod) % &next_mod;
        modulus = next_mod;
    }
    debug_assert_eq!((&v * &v) % &modulus, u % &modulus);
    let neg = (&modulus - &v) % &modulus;
    if neg == v {
        vec![v]
    } else {
        vec![v, neg]
    }
}

/// Square roots of an odd unit u modulo 2^k.
fn unit_sqrt_mod_2_power(u: &BigUint, k: u32) -> Vec<BigUint> {
    let one = BigUint::one();
    match k {
        0 => vec![BigUint::zero()],
        1 => vec![one],
        2 => {
            if u % 4u32 == one {
                vec![one.clone(), BigUint::from(3u32)]
            } else {
                Vec::new()
            }
        }
        _ => {
            if u % 8u32 != one {
                return Vec::new();
            }
            // Lift v with v² ≡ u (mod 2^j) to mod 2^(j+1); v stays odd.
            let mut v = one.clone();
            for j in 3..k {
                let next_mod = BigUint::one() << (j + 1);
                let v2 = (&v * &v) % &next_mod;
                let u_red = u % &next_mod;
                if v2 != u_red {
                    v += BigUint::one() << (j - 1);
                }
                debug_assert_eq!((&v * &v) % &next_mod, u % &next_mod);
            }
            let m = BigUint::one() << k;
            let half = BigUint::one() << (k - 1);
            let mut roots: BTreeSet<BigUint> = BTreeSet::new();
            roots.insert(v.clone() % &m);
            roots.insert((&m - &v) % &m);
            roots.insert((&v + &half) % &m);
            roots.insert((&m - ((&v + &half) % &m)) % &m);
            roots.into_iter().collect()
        }
    }
}
