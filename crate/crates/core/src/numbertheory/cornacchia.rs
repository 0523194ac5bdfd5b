//! Two-squares decomposition given a factorization: n = x² + y².
//!
//! Representable iff every prime ≡ 3 (mod 4) divides n to an even power.
//! Each prime ≡ 1 (mod 4) is split into a Gaussian prime by the classic
//! gcd descent on a root of -1; the full decomposition then enumerates the
//! conjugate assignments per split prime so the returned pair is canonical
//! (smallest x, with x ≤ y).

use super::modular::tonelli_shanks;
use super::Factorization;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

type GInt = (BigInt, BigInt);

/// Canonical (x, y) with x² + y² = n and x ≤ y, or `None` when n is not a
/// sum of two squares. `n_fact` must be the factorization of n.
pub fn cornacchia_sum_two_squares(n_fact: &Factorization) -> Option<(BigUint, BigUint)> {
    let n = &n_fact.value;
    if n.is_zero() {
        return Some((BigUint::zero(), BigUint::zero()));
    }

    // Primes q ≡ 3 (mod 4) must occur evenly and contribute q^(e/2) to both
    // legs; 2 = -i(1+i)² is handled by its Gaussian factor below.
    let mut square_leg = BigUint::one();
    let mut split: Vec<(GInt, u32)> = Vec::new();
    for entry in &n_fact.factors {
        if entry.prime == BigUint::from(2u32) {
            split.push(((BigInt::one(), BigInt::one()), entry.exponent));
        } else if &entry.prime % 4u32 == BigUint::from(3u32) {
            if entry.exponent % 2 == 1 {
                return None;
            }
            square_leg *= entry.prime.pow(entry.exponent / 2);
        } else {
            let (x, y) = split_prime(&entry.prime);
            split.push(((BigInt::from(x), BigInt::from(y)), entry.exponent));
        }
    }

    // Enumerate w^j · conj(w)^(e-j) per split prime; ∏(e+1) combinations,
    // tiny for every workload here. Units only flip signs/swap legs, which
    // the canonicalization absorbs.
    let mut best: Option<(BigUint, BigUint)> = None;
    let mut partial: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    for ((wr, wi), e) in &split {
        let w = (wr.clone(), wi.clone());
        let wbar = (wr.clone(), -wi.clone());
        // powers[j] = w^j · wbar^(e-j)
        let mut powers = Vec::with_capacity(*e as usize + 1);
        let mut acc = gpow(&wbar, *e);
        powers.push(acc.clone());
        for _ in 0..*e {
            // multiply by w / wbar = w² / (w·wbar): stay integral by
            // recomputing from scratch only when needed; e is small.
            acc = gmul(&gdiv_exact(&acc, &wbar), &w);
            powers.push(acc.clone());
        }
        let mut next = Vec::with_capacity(partial.len() * powers.len());
        for z in &partial {
            for p in &powers {
                next.push(gmul(z, p));
            }
        }
        partial = next;
    }
    for z in partial {
        let mut x = z.0.magnitude() * &square_leg;
        let mut y = z.1.magnitude() * &square_leg;
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        debug_assert_eq!(&x * &x + &y * &y, *n);
        match &best {
            Some(b) if *b <= (x.clone(), y.clone()) => {}
            _ => best = Some((x, y)),
        }
    }
    best
}

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gpow(a: &GInt, e: u32) -> GInt {
    let mut r = (BigInt::one(), BigInt::zero());
    for _ in 0..e {
        r = gmul(&r, a);
    }
    r
}

/// a / b for Gaussian integers when b exactly divides a.
fn gdiv_exact(a: &GInt, b: &GInt) -> GInt {
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let re = (&a.0 * &b.0 + &a.1 * &b.1) / &norm;
    let im = (&a.1 * &b.0 - &a.0 * &b.1) / &norm;
    debug_assert_eq!(gmul(&(re.clone(), im.clone()), b), *a);
    (re, im)
}

/// Splits 2 or a prime p ≡ 1 (mod 4) as x² + y² = p by gcd descent.
fn split_prime(p: &BigUint) -> (BigUint, BigUint) {
    if *p == BigUint::from(2u32) {
        return (BigUint::one(), BigUint::one());
    }
    let r = tonelli_shanks(&(p - BigUint::one()), p).expect("p = 1 mod 4 splits");
    let sqrt_p = p.sqrt();
    let mut a = p.clone();
    let mut b = r;
    while b > sqrt_p {
        let t = &a % &b;
        a = std::mem::replace(&mut b, t);
    }
    let x = b;
    let y_sq = p - &x * &x;
    let y = y_sq.sqrt();
    debug_assert_eq!(&y * &y, y_sq);
    (x, y)
}
