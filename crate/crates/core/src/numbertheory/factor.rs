//! Factoring: trial division up to a configurable bound, then Pollard rho
//! with Brent cycling. Caller-supplied hints (claimed prime factors) are
//! verified by division and a primality test before being trusted.
//!
//! The rho stage runs in native u128 arithmetic whenever the cofactor fits,
//! which covers everything the property suites throw at it; wider cofactors
//! fall back to big-integer rho with the same deterministic parameters.

use super::primality::{is_probable_prime, mul_mod_u64, to_u64};
use super::{Factorization, NtError};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct FactorConfig {
    /// Trial-division cap; primes up to this bound are removed first.
    pub trial_bound: u64,
    /// Total rho iteration budget across all attempts.
    pub rho_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { trial_bound: 1_000_000, rho_budget: 1_000_000_000 }
    }
}

/// Factors `n ≥ 1` with the default configuration and optional hints.
pub fn factor(n: &BigUint, hints: &[BigUint]) -> Result<Factorization, NtError> {
    factor_with_config(n, hints, &FactorConfig::default())
}

pub fn factor_with_config(
    n: &BigUint,
    hints: &[BigUint],
    config: &FactorConfig,
) -> Result<Factorization, NtError> {
    assert!(!n.is_zero(), "factor() requires n >= 1");
    let mut pairs: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();

    // Hints first: each claimed factor must divide and be probably prime.
    for hint in hints {
        if hint <= &BigUint::one() {
            return Err(NtError::BadHint { hint: hint.clone(), reason: "not > 1" });
        }
        if !(&rest % hint).is_zero() {
            // A hint that no longer divides after earlier hints were stripped
            // is simply wrong for this input.
            return Err(NtError::BadHint { hint: hint.clone(), reason: "does not divide" });
        }
        if !is_probable_prime(hint) {
            return Err(NtError::BadHint { hint: hint.clone(), reason: "not prime" });
        }
        let mut e = 0u32;
        while (&rest % hint).is_zero() {
            rest /= hint;
            e += 1;
        }
        pairs.push((hint.clone(), e));
    }

    // Trial division over the shared prime table.
    for &q in trial_primes(config.trial_bound) {
        if q as u128 * q as u128 > u128_or_max(&rest) {
            break;
        }
        let qb = BigUint::from(q);
        if (&rest % &qb).is_zero() {
            let mut e = 0u32;
            while (&rest % &qb).is_zero() {
                rest /= &qb;
                e += 1;
            }
            pairs.push((qb, e));
        }
        if rest.is_one() {
            break;
        }
    }

    // Rho on what remains.
    let mut budget = config.rho_budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            pairs.push((m, 1));
            continue;
        }
        if let Some(root) = exact_sqrt(&m) {
            stack.push(root.clone());
            stack.push(root);
            continue;
        }
        let d = rho_split(&m, &mut budget).ok_or(NtError::FactoringTimeout { bits: m.bits() })?;
        stack.push(&m / &d);
        stack.push(d);
    }

    Ok(Factorization::from_pairs(pairs))
}

fn u128_or_max(n: &BigUint) -> u128 {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as u128,
        2 => (digits[1] as u128) << 64 | digits[0] as u128,
        _ => u128::MAX,
    }
}

fn to_u128(n: &BigUint) -> Option<u128> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0] as u128),
        2 => Some((digits[1] as u128) << 64 | digits[0] as u128),
        _ => None,
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn trial_primes(bound: u64) -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let cap = 1_000_000usize;
        let mut sieve = vec![true; cap + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut primes = Vec::new();
        for i in 2..=cap {
            if sieve[i] {
                primes.push(i as u64);
                for j in (i * i..=cap).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        primes
    });
    // The shared sieve stops at 10^6; larger trial bounds are clamped. The
    // rho stage picks up anything between the clamp and the requested bound.
    let end = table.partition_point(|&q| q <= bound);
    &table[..end]
}

/// Finds one nontrivial factor of composite `m`, charging iterations to
/// `budget`. Deterministic: Brent's variant with x₀ = 2 and c = 1, 2, 3, …
fn rho_split(m: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if m.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(n64) = to_u64(m) {
        return rho_u64(n64, budget).map(BigUint::from);
    }
    if let Some(n128) = to_u128(m) {
        return rho_u128(n128, budget).map(u128_to_biguint);
    }
    rho_big(m, budget)
}

fn u128_to_biguint(v: u128) -> BigUint {
    BigUint::from(v >> 64) << 64 | BigUint::from(v as u64)
}

fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    for c in 1..64u64 {
        if *budget == 0 {
            return None;
        }
        if let Some(d) = brent_cycle_u64(n, c, budget) {
            return Some(d);
        }
    }
    None
}

fn brent_cycle_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let chunk = 128.min(r - k);
            if *budget < chunk {
                *budget = 0;
                return None;
            }
            *budget -= chunk;
            for _ in 0..chunk {
                y = f(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += chunk;
        }
        r *= 2;
    }
    if g == n {
        // Backtrack one step at a time.
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// ---- u128 Montgomery arithmetic for the rho inner loop ----

struct Mont128 {
    n: u128,
    n_prime: u128, // -n^{-1} mod 2^128
    r2: u128,      // 2^256 mod n
}

impl Mont128 {
    fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1);
        // Newton iteration for the inverse of n modulo 2^128.
        let mut inv: u128 = n; // correct mod 2^3
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert!(n.wrapping_mul(inv) == 1);
        let n_prime = inv.wrapping_neg();
        // r2 = 2^256 mod n by repeated doubling of 2^128 mod n.
        let r = (u128::MAX % n) + 1; // 2^128 mod n (n > 1)
        let mut r2 = r % n;
        for _ in 0..128 {
            r2 = add_mod_u128(r2, r2, n);
        }
        Mont128 { n, n_prime, r2 }
    }

    #[inline]
    fn redc(&self, lo: u128, hi: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_prime);
        let (mn_lo, mn_hi) = mul_wide_u128(m, self.n);
        let (_, carry) = lo.overflowing_add(mn_lo);
        // True sum hi + mn_hi + carry is < 2n but may not fit in u128 when
        // n has 128 bits; on overflow subtract n in wrapping arithmetic.
        let (s1, o1) = hi.overflowing_add(mn_hi);
        let (s2, o2) = s1.overflowing_add(carry as u128);
        let mut t = s2;
        if o1 || o2 {
            t = t.wrapping_sub(self.n);
        } else if t >= self.n {
            t -= self.n;
        }
        t
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (lo, hi) = mul_wide_u128(a, b);
        self.redc(lo, hi)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn from_mont(&self, a: u128) -> u128 {
        self.redc(a, 0)
    }
}

#[inline]
fn mul_wide_u128(a: u128, b: u128) -> (u128, u128) {
    let (a_lo, a_hi) = (a as u64 as u128, a >> 64);
    let (b_lo, b_hi) = (b as u64 as u128, b >> 64);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & 0xFFFF_FFFF_FFFF_FFFF) + (hl & 0xFFFF_FFFF_FFFF_FFFF);
    let lo = (mid << 64) | (ll & 0xFFFF_FFFF_FFFF_FFFF);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (lo, hi)
}

#[inline]
fn add_mod_u128(a: u128, b: u128, n: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

fn rho_u128(n: u128, budget: &mut u64) -> Option<u128> {
    let mont = Mont128::new(n);
    for c in 1..64u128 {
        if *budget == 0 {
            return None;
        }
        if let Some(d) = brent_cycle_u128(&mont, c, budget) {
            return Some(d);
        }
    }
    None
}

fn brent_cycle_u128(mont: &Mont128, c: u128, budget: &mut u64) -> Option<u128> {
    let n = mont.n;
    let c_m = mont.to_mont(c);
    let f = |x: u128| add_mod_u128(mont.mul(x, x), c_m, n);
    let mut y = mont.to_mont(2);
    let mut r = 1u64;
    let mut q = mont.to_mont(1);
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let chunk = 256.min(r - k);
            if *budget < chunk {
                *budget = 0;
                return None;
            }
            *budget -= chunk;
            for _ in 0..chunk {
                y = f(y);
                q = mont.mul(q, x.abs_diff(y));
            }
            g = gcd_u128(mont.from_mont(q), n);
            k += chunk;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u128(mont.from_mont(x.abs_diff(ys)), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let chunk = 128.min(r - k);
                if *budget < chunk {
                    *budget = 0;
                    return None;
                }
                *budget -= chunk;
                for _ in 0..chunk {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += chunk;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
