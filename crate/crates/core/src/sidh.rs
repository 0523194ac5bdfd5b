//! Toy SIDH protocol used as the attack target: instance construction, key
//! generation, public keys, shared secrets, and a brute-force baseline
//! attacker that enumerates every cyclic A-subgroup.

use crate::fieldcurve::{
    curve_order_check, isogeny_from_kernel_point, torsion_basis, weil_pairing, Curve,
    FieldCurveError, Fp2, Fp2Field, IsogenyChain, Point,
};
use crate::numbertheory::{factor, is_probable_prime, Factorization, NtError};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_PRIME_CAP: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum SidhError {
    #[error("p must be a prime = 3 mod 4, got {p}")]
    BadPrime { p: BigUint },
    #[error("A·B·f must equal p+1 in classic mode (got {product}, expected {expected})")]
    BadCofactor { product: BigUint, expected: BigUint },
    #[error("A and B must be coprime")]
    NotCoprime,
    #[error("instance is construction-only (forged mode): torsion bases unavailable")]
    ForgedInstance,
    #[error("the starting curve failed the supersingularity check")]
    NotSupersingular,
    #[error("no cyclic subgroup reproduces the public key")]
    NotFound,
    #[error(transparent)]
    Curve(#[from] FieldCurveError),
    #[error(transparent)]
    NumberTheory(#[from] NtError),
}

/// Which guarantees the instance carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceMode {
    /// A·B·f = p+1: all torsion is F_p²-rational and the attack applies.
    Classic,
    /// Constructed parameters with A·B ∤ p+1: arithmetic only, the attack
    /// harness rejects these.
    Forged,
}

/// Public parameters of an attackable SIDH instance over E₀: y² = x³ + x.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SidhInstance {
    pub schema: String,
    pub mode: InstanceMode,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub p: BigUint,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub a_degree: BigUint,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub b_degree: BigUint,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub cofactor: BigUint,
    pub curve: Curve,
    pub basis_a: Option<(Point, Point)>,
    pub basis_b: Option<(Point, Point)>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicKey {
    pub schema: String,
    pub curve: Curve,
    pub img_p: Point,
    pub img_q: Point,
}

/// A secret: the cyclic subgroup ⟨[s]P_A + [t]Q_A⟩ in canonical projective
/// form (s : t), s, t mod A with gcd(s, t, A) = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretKey {
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub s: BigUint,
    #[serde(with = "crate::jsonint::biguint_dec")]
    pub t: BigUint,
}

impl SidhInstance {
    /// Classic mode: p = A·B·f - 1 with all validation, torsion bases
    /// derived deterministically from the seed.
    pub fn classic(
        p: BigUint,
        a_degree: BigUint,
        b_degree: BigUint,
        cofactor: BigUint,
        seed: u64,
    ) -> Result<SidhInstance, SidhError> {
        if &p % 4u32 != BigUint::from(3u32) || !is_probable_prime(&p) {
            return Err(SidhError::BadPrime { p });
        }
        let expected = &p + BigUint::one();
        let product = &a_degree * &b_degree * &cofactor;
        if product != expected {
            return Err(SidhError::BadCofactor { product, expected });
        }
        if !a_degree.gcd(&b_degree).is_one() {
            return Err(SidhError::NotCoprime);
        }
        let f = Fp2Field::new(p.clone());
        let curve = Curve { a: f.one(), b: f.zero() };
        let p1_fact = factor(&expected, &[])?;
        if !curve_order_check(&f, &curve, &p1_fact) {
            return Err(SidhError::NotSupersingular);
        }
        let a_fact = factor(&a_degree, &[])?;
        let b_fact = factor(&b_degree, &[])?;
        let basis_a = torsion_basis(&f, &curve, &a_degree, &a_fact, &p1_fact, seed ^ 0xA)?;
        let basis_b = torsion_basis(&f, &curve, &b_degree, &b_fact, &p1_fact, seed ^ 0xB)?;
        Ok(SidhInstance {
            schema: "torq.instance/1".into(),
            mode: InstanceMode::Classic,
            p,
            a_degree,
            b_degree,
            cofactor,
            curve,
            basis_a: Some(basis_a),
            basis_b: Some(basis_b),
            seed,
        })
    }

    /// Forged mode: only the arithmetic invariants are checked; no bases.
    pub fn forged(p: BigUint, a_degree: BigUint, b_degree: BigUint) -> Result<SidhInstance, SidhError> {
        if &p % 4u32 != BigUint::from(3u32) || !is_probable_prime(&p) {
            return Err(SidhError::BadPrime { p });
        }
        if !a_degree.gcd(&b_degree).is_one() {
            return Err(SidhError::NotCoprime);
        }
        let f = Fp2Field::new(p.clone());
        let curve = Curve { a: f.one(), b: f.zero() };
        Ok(SidhInstance {
            schema: "torq.instance/1".into(),
            mode: InstanceMode::Forged,
            p,
            a_degree,
            b_degree,
            cofactor: BigUint::zero(),
            curve,
            basis_a: None,
            basis_b: None,
            seed: 0,
        })
    }

    pub fn field(&self) -> Fp2Field {
        Fp2Field::new(self.p.clone())
    }

    pub fn p_plus_1_fact(&self) -> Result<Factorization, SidhError> {
        Ok(factor(&(&self.p + BigUint::one()), &[])?)
    }

    pub fn basis_a(&self) -> Result<&(Point, Point), SidhError> {
        self.basis_a.as_ref().ok_or(SidhError::ForgedInstance)
    }

    pub fn basis_b(&self) -> Result<&(Point, Point), SidhError> {
        self.basis_b.as_ref().ok_or(SidhError::ForgedInstance)
    }

    /// The kernel generator [s]P_A + [t]Q_A of a secret.
    pub fn kernel_generator(&self, secret: &SecretKey) -> Result<Point, SidhError> {
        let f = self.field();
        let (pa, qa) = self.basis_a()?;
        Ok(self.curve.add(
            &f,
            &self.curve.mul_scalar(&f, &secret.s, pa),
            &self.curve.mul_scalar(&f, &secret.t, qa),
        ))
    }

    /// The secret isogeny φ of degree A for a secret key.
    pub fn secret_isogeny(&self, secret: &SecretKey) -> Result<IsogenyChain, SidhError> {
        let f = self.field();
        let gen = self.kernel_generator(secret)?;
        let a_fact = factor(&self.a_degree, &[])?;
        Ok(isogeny_from_kernel_point(
            &f,
            &self.curve,
            &gen,
            &self.a_degree,
            &a_fact,
            None,
            DEFAULT_PRIME_CAP,
        )?)
    }
}

/// Canonical representatives (s : t) of P¹(Z/n): cyclic subgroups
/// ⟨[s]P + [t]Q⟩ of order n inside (Z/n)².
pub fn cyclic_subgroup_reps(n: &BigUint, n_fact: &Factorization) -> Vec<SecretKey> {
    // Per prime power: (1 : t) for t mod ℓ^k, and (ℓs : 1) for s mod ℓ^(k-1);
    // CRT-combine across prime powers.
    let mut reps: Vec<(BigUint, BigUint, BigUint)> = vec![(BigUint::one(), BigUint::zero(), BigUint::one())];
    // tuples: (s mod m, t mod m, m)
    for entry in &n_fact.factors {
        let qk = entry.prime.pow(entry.exponent);
        let mut local: Vec<(BigUint, BigUint)> = Vec::new();
        let mut t = BigUint::zero();
        while t < qk {
            local.push((BigUint::one(), t.clone()));
            t += 1u32;
        }
        let bound = entry.prime.pow(entry.exponent - 1);
        let mut s = BigUint::zero();
        while s < bound {
            local.push(((&s * &entry.prime) % &qk, BigUint::one()));
            s += 1u32;
        }
        let mut next = Vec::with_capacity(reps.len() * local.len());
        for (s0, t0, m) in &reps {
            for (s1, t1) in &local {
                // CRT both coordinates from (mod m) and (mod qk).
                let s = crt_pair(s0, m, s1, &qk);
                let t = crt_pair(t0, m, t1, &qk);
                next.push((s, t, m * &qk));
            }
        }
        reps = next;
    }
    reps.into_iter().map(|(s, t, _)| SecretKey { s, t }).collect()
}

fn crt_pair(r0: &BigUint, m0: &BigUint, r1: &BigUint, m1: &BigUint) -> BigUint {
    if m0.is_one() {
        return r1.clone();
    }
    let m0_inv = crate::numbertheory::inv_mod(&(m0 % m1), m1).expect("coprime moduli");
    let diff = (r1 + m1 - (r0 % m1)) % m1;
    (r0 + m0 * ((diff * m0_inv) % m1)) % (m0 * m1)
}

/// Alice's key generation: the secret subgroup ⟨P_A + [x]Q_A⟩ for x drawn
/// from the seed (plus the extra class ⟨Q_A⟩ with probability 1/(A+1)).
pub fn keygen(instance: &SidhInstance, seed: u64) -> Result<(SecretKey, PublicKey), SidhError> {
    use rand::Rng, ;
    let mut rng = <rand_chacha::ChaCha20Rng as rand::SeedableRng>::from_seed(seed_bytes(
        b"torq.sidh.keygen.v1.....",
        seed,
    ));
    let a = &instance.a_degree;
    // Draw uniformly from A+1 classes: x in [0, A) for (1 : x), or ⟨Q_A⟩.
    let draw = sample_below(&mut rng, &(a + BigUint::one()));
    let secret = if draw == *a {
        SecretKey { s: BigUint::zero(), t: BigUint::one() }
    } else {
        SecretKey { s: BigUint::one(), t: draw }
    };
    let pk = public_key(instance, &secret)?;
    Ok((secret, pk))
}

fn sample_below(rng: &mut rand_chacha::ChaCha20Rng, bound: &BigUint) -> BigUint {
    use rand::Rng;
    let bits = bound.bits();
    let bytes = ((bits + 7) / 8) as usize;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill(&mut buf[..]);
        let mut v = BigUint::from_bytes_be(&buf);
        v >>= v.bits().saturating_sub(bits);
        if &v < bound {
            return v;
        }
    }
}

fn seed_bytes(tag: &[u8; 24], seed: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..24].copy_from_slice(tag);
    out[24..].copy_from_slice(&seed.to_le_bytes());
    out
}

/// The public key for a given secret: (E_A, φ(P_B), φ(Q_B)).
pub fn public_key(instance: &SidhInstance, secret: &SecretKey) -> Result<PublicKey, SidhError> {
    let f = instance.field();
    let phi = instance.secret_isogeny(secret)?;
    let (pb, qb) = instance.basis_b()?;
    Ok(PublicKey {
        schema: "torq.pubkey/1".into(),
        curve: phi.codomain.clone(),
        img_p: phi.evaluate(&f, pb),
        img_q: phi.evaluate(&f, qb),
    })
}

/// Bob's side of the exchange, for tests and the demo: his secret subgroup
/// lives in E₀[B].
pub fn keygen_b(instance: &SidhInstance, seed: u64) -> Result<(SecretKey, PublicKey), SidhError> {
    let mut rng = <rand_chacha::ChaCha20Rng as rand::SeedableRng>::from_seed(seed_bytes(
        b"torq.sidh.keygen.b.v1...",
        seed,
    ));
    let b = &instance.b_degree;
    let draw = sample_below(&mut rng, &(b + BigUint::one()));
    let secret = if draw == *b {
        SecretKey { s: BigUint::zero(), t: BigUint::one() }
    } else {
        SecretKey { s: BigUint::one(), t: draw }
    };
    let f = instance.field();
    let (pb, qb) = instance.basis_b()?;
    let gen = instance.curve.add(
        &f,
        &instance.curve.mul_scalar(&f, &secret.s, pb),
        &instance.curve.mul_scalar(&f, &secret.t, qb),
    );
    let b_fact = factor(b, &[])?;
    let phi = isogeny_from_kernel_point(
        &f,
        &instance.curve,
        &gen,
        b,
        &b_fact,
        None,
        DEFAULT_PRIME_CAP,
    )?;
    let (pa, qa) = instance.basis_a()?;
    Ok((
        secret,
        PublicKey {
            schema: "torq.pubkey/1".into(),
            curve: phi.codomain.clone(),
            img_p: phi.evaluate(&f, pa),
            img_q: phi.evaluate(&f, qa),
        },
    ))
}

/// Shared secret: the j-invariant of E_peer / ⟨[s]imgP + [t]imgQ⟩, where
/// (s, t) is the caller's secret and (imgP, imgQ) the peer's published
/// images of the caller's basis.
pub fn shared_secret(
    instance: &SidhInstance,
    own_secret: &SecretKey,
    own_degree: &BigUint,
    peer_pubkey: &PublicKey,
) -> Result<Fp2, SidhError> {
    let f = instance.field();
    let gen = peer_pubkey.curve.add(
        &f,
        &peer_pubkey
            .curve
            .mul_scalar(&f, &own_secret.s, &peer_pubkey.img_p),
        &peer_pubkey
            .curve
            .mul_scalar(&f, &own_secret.t, &peer_pubkey.img_q),
    );
    let fact = factor(own_degree, &[])?;
    let chain = isogeny_from_kernel_point(
        &f,
        &peer_pubkey.curve,
        &gen,
        own_degree,
        &fact,
        None,
        DEFAULT_PRIME_CAP,
    )?;
    Ok(chain.codomain.j_invariant(&f))
}

/// Exhaustive baseline: tries every cyclic A-subgroup and returns the secret
/// whose public key reproduces the target exactly.
pub fn brute_force_recover(
    instance: &SidhInstance,
    pubkey: &PublicKey,
    mode: crate::exec::ExecMode,
) -> Result<SecretKey, SidhError> {
    let a_fact = factor(&instance.a_degree, &[])?;
    let reps = cyclic_subgroup_reps(&instance.a_degree, &a_fact);
    let hit = crate::exec::find_first_map(mode, reps.len() as u64, |i| {
        let secret = &reps[i as usize];
        match public_key(instance, secret) {
            Ok(pk) if &pk == pubkey => Some(secret.clone()),
            _ => None,
        }
    });
    hit.ok_or(SidhError::NotFound)
}

/// Pairing invariant of an honest public key: e_B(imgP, imgQ) = e_B(P_B, Q_B)^A.
pub fn pubkey_pairing_check(instance: &SidhInstance, pubkey: &PublicKey) -> Result<bool, SidhError> {
    let f = instance.field();
    let b = &instance.b_degree;
    let b_fact = factor(b, &[])?;
    let (pb, qb) = instance.basis_b()?;
    let lhs = weil_pairing(&f, &pubkey.curve, &pubkey.img_p, &pubkey.img_q, b, &b_fact)?;
    let base = weil_pairing(&f, &instance.curve, pb, qb, b, &b_fact)?;
    let rhs = f.pow(&base, &instance.a_degree);
    Ok(lhs == rhs)
}

/// Subgroup equality for two kernel generators of the same order.
pub fn same_subgroup(
    f: &Fp2Field,
    curve: &Curve,
    g1: &Point,
    g2: &Point,
    order: &BigUint,
) -> bool {
    // ⟨g1⟩ = ⟨g2⟩ iff g2 ∈ ⟨g1⟩ and both have the same order; scan multiples.
    let mut acc = g1.clone();
    let mut k = BigUint::one();
    while k < *order {
        if &acc == g2 {
            return true;
        }
        acc = curve.add(f, &acc, g1);
        k += 1u32;
    }
    false
}
