//! Miller–Rabin primality testing, deterministic below 2⁶⁴ and fixed-seed
//! randomized above (64 rounds, false positive rate below 2⁻¹²⁸).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Bases making Miller–Rabin deterministic for all n < 3.3·10²⁴ ⊃ [0, 2⁶⁴).
const SMALL_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const WIDE_ROUNDS: usize = 64;
const RNG_SEED: [u8; 32] = *b"torq.primality.rng.v1...........";

/// Primality test: deterministic for n < 2⁶⁴, otherwise 64 fixed-seed
/// Miller–Rabin rounds. Deterministic across runs either way.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = to_u64(n) {
        return is_prime_u64(small);
    }
    // n >= 2^64 here: strip tiny factors cheaply first.
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67] {
        if (n % q).is_zero() {
            return false;
        }
    }
    let mut rng = ChaCha20Rng::from_seed(RNG_SEED);
    let two = BigUint::from(2u32);
    let n_minus_2 = n - &two;
    for _ in 0..WIDE_ROUNDS {
        // Uniform base in [2, n-2].
        let base = sample_below(&mut rng, &n_minus_2) + &two;
        if !miller_rabin_round(n, &base) {
            return false;
        }
    }
    true
}

fn sample_below(rng: &mut ChaCha20Rng, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let bytes = ((bits + 7) / 8) as usize;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill(&mut buf[..]);
        let mut candidate = BigUint::from_bytes_be(&buf);
        let excess = candidate.bits().saturating_sub(bits);
        candidate >>= excess;
        if &candidate < bound {
            return candidate;
        }
    }
}

fn miller_rabin_round(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

pub(crate) fn to_u64(n: &BigUint) -> Option<u64> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &a in SMALL_BASES.iter() {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}
