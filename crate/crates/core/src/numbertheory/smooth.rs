//! Smoothness and powersmoothness tests with bounded effort.

use super::factor::{factor_with_config, FactorConfig};
use super::primality::is_probable_prime;
use num_bigint::BigUint;
use num_traits::{One, Zero};

const TRIAL_CAP: u64 = 1_000_000;

/// True iff every prime factor of n is ≤ bound.
///
/// Trial division runs up to min(bound, 10⁶) and a surviving cofactor is
/// primality tested; only when the bound exceeds the trial range does a rho
/// stage split composite cofactors, whose prime factors are then compared
/// to the bound exactly. Answers are always exact.
pub fn is_smooth(n: &BigUint, bound: &BigUint) -> bool {
    smoothness_profile(n, bound).is_some()
}

/// True iff every prime-power divisor ℓᵉ‖n satisfies ℓᵉ ≤ bound.
pub fn is_powersmooth(n: &BigUint, bound: &BigUint) -> bool {
    match smoothness_profile(n, bound) {
        None => false,
        Some(pairs) => pairs.iter().all(|(p, e)| &p.pow(*e) <= bound),
    }
}

/// Factors n as far as needed to decide bound-smoothness; `Some(factors)`
/// iff every prime factor is within the bound.
fn smoothness_profile(n: &BigUint, bound: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "smoothness is only defined for n >= 1");
    if n.is_one() {
        return Some(Vec::new());
    }
    let bound_small = bound.to_u64_digits();
    let trial_bound = match bound_small.len() {
        0 => return None, // bound = 0: nothing > 1 qualifies
        1 => bound_small[0].min(TRIAL_CAP),
        _ => TRIAL_CAP,
    };

    let mut pairs: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut q = 2u64;
    while q <= trial_bound {
        let qb = BigUint::from(q);
        if &qb * &qb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &qb).is_zero() {
            rest /= &qb;
            e += 1;
        }
        if e > 0 {
            pairs.push((qb, e));
        }
        q = if q == 2 { 3 } else { q + 2 };
    }
    if rest.is_one() {
        return Some(pairs);
    }
    if is_probable_prime(&rest) {
        if &rest > bound {
            return None;
        }
        pairs.push((rest, 1));
        return Some(pairs);
    }
    // Composite cofactor: all of its prime factors exceed the trial range,
    // so if the bound lies inside that range the answer is already no.
    if bound <= &BigUint::from(trial_bound) {
        return None;
    }
    let split = factor_with_config(&rest, &[], &FactorConfig::default()).ok()?;
    for e in &split.factors {
        if &e.prime > bound {
            return None;
        }
        pairs.push((e.prime.clone(), e.exponent));
    }
    Some(pairs)
}
