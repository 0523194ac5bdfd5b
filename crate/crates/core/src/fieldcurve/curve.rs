//! Short Weierstrass curves y² = x³ + ax + b over F_p², affine points with
//! an identity marker, scalar arithmetic, point orders, torsion bases, and
//! the supersingularity gate #E = (p+1)².

use super::fp2::{Fp2, Fp2Field};
use super::FieldCurveError;
use crate::numbertheory::Factorization;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub a: Fp2,
    pub b: Fp2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Point {
    Infinity,
    Affine { x: Fp2, y: Fp2 },
}

impl Point {
    pub fn affine(x: Fp2, y: Fp2) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&Fp2, &Fp2)> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }
}

impl Curve {
    /// j = 1728 · 4a³ / (4a³ + 27b²).
    pub fn j_invariant(&self, f: &Fp2Field) -> Fp2 {
        let a3 = f.mul(&f.square(&self.a), &self.a);
        let four_a3 = f.mul_small(&a3, 4);
        let b2 = f.square(&self.b);
        let disc = f.add(&four_a3, &f.mul_small(&b2, 27));
        let num = f.mul_small(&four_a3, 1728);
        f.div(&num, &disc).expect("nonsingular curve")
    }

    pub fn is_on_curve(&self, f: &Fp2Field, pt: &Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                let lhs = f.square(y);
                let rhs = f.add(&f.add(&f.mul(&f.square(x), x), &f.mul(&self.a, x)), &self.b);
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, f: &Fp2Field, pt: &Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: f.neg(y) },
        }
    }

    pub fn add(&self, f: &Fp2Field, p: &Point, q: &Point) -> Point {
        let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
            (None, _) => return q.clone(),
            (_, None) => return p.clone(),
            (Some(a), Some(b)) => (a, b),
        };
        let lambda = if x1 == x2 {
            if y1 != y2 || y1.is_zero_el() {
                return Point::Infinity;
            }
            // Tangent: (3x² + a) / 2y.
            let num = f.add(&f.mul_small(&f.square(x1), 3), &self.a);
            let den = f.add(y1, y1);
            f.div(&num, &den).unwrap()
        } else {
            let num = f.sub(y2, y1);
            let den = f.sub(x2, x1);
            f.div(&num, &den).unwrap()
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        Point::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, f: &Fp2Field, p: &Point) -> Point {
        self.add(f, p, p)
    }

    pub fn sub(&self, f: &Fp2Field, p: &Point, q: &Point) -> Point {
        self.add(f, p, &self.negate(f, q))
    }

    pub fn mul_scalar(&self, f: &Fp2Field, k: &BigUint, p: &Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        for idx in 0..k.bits() {
            if k.bit(idx) {
                acc = self.add(f, &acc, &base);
            }
            base = self.double(f, &base);
        }
        acc
    }

    /// Order of `pt` given a factored multiple of it (typically p+1).
    pub fn point_order(&self, f: &Fp2Field, pt: &Point, multiple: &Factorization) -> BigUint {
        let mut order = multiple.value.clone();
        debug_assert!(self.mul_scalar(f, &order, pt).is_infinity());
        for entry in &multiple.factors {
            for _ in 0..entry.exponent {
                let candidate = &order / &entry.prime;
                if self.mul_scalar(f, &candidate, pt).is_infinity() {
                    order = candidate;
                } else {
                    break;
                }
            }
        }
        order
    }

    /// Deterministic point sampling by x-coordinate draw.
    pub fn random_point(&self, f: &Fp2Field, rng: &mut ChaCha20Rng) -> Point {
        loop {
            let x = Fp2 {
                c0: sample_residue(rng, &f.p),
                c1: sample_residue(rng, &f.p),
            };
            let rhs = f.add(&f.add(&f.mul(&f.square(&x), &x), &f.mul(&self.a, &x)), &self.b);
            if let Some(y) = f.sqrt(&rhs) {
                // Flip the sign off one random bit so both halves are hit.
                let y = if rng.gen::<bool>() { f.neg(&y) } else { y };
                return Point::Affine { x, y };
            }
        }
    }
}

fn sample_residue(rng: &mut ChaCha20Rng, p: &BigUint) -> BigUint {
    let bits = p.bits();
    let bytes = ((bits + 7) / 8) as usize;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill(&mut buf[..]);
        let mut v = BigUint::from_bytes_be(&buf);
        v >>= v.bits().saturating_sub(bits);
        if &v < p {
            return v;
        }
    }
}

/// True iff #E(F_p²) = (p+1)²: checks [p+1]P = O for 20 seeded points and
/// demands one witness of exact order p+1. `p_plus_1` is the factorization
/// of p+1.
pub fn curve_order_check(f: &Fp2Field, curve: &Curve, p_plus_1: &Factorization) -> bool {
    assert_eq!(p_plus_1.value, &f.p + BigUint::one());
    let mut rng = ChaCha20Rng::from_seed(*b"torq.order.check.seed.v1........");
    let n = &p_plus_1.value;
    let mut witness = false;
    for _ in 0..20 {
        let pt = curve.random_point(f, &mut rng);
        if !curve.mul_scalar(f, n, &pt).is_infinity() {
            return false;
        }
        if !witness && curve.point_order(f, &pt, p_plus_1) == *n {
            witness = true;
        }
    }
    // The exponent divides p+1 everywhere; insist some point realizes it.
    let mut extra_tries = 0;
    while !witness && extra_tries < 40 {
        let pt = curve.random_point(f, &mut rng);
        if curve.point_order(f, &pt, p_plus_1) == *n {
            witness = true;
        }
        extra_tries += 1;
    }
    witness
}

/// A basis (P, Q) of E[N]: both of exact order N with Weil pairing of full
/// multiplicative order N. Deterministic for a given seed.
pub fn torsion_basis(
    f: &Fp2Field,
    curve: &Curve,
    n: &BigUint,
    n_fact: &Factorization,
    p_plus_1: &Factorization,
    seed: u64,
) -> Result<(Point, Point), FieldCurveError> {
    if n.is_one() {
        return Ok((Point::Infinity, Point::Infinity));
    }
    let p1 = &p_plus_1.value;
    if !(p1 % n).is_zero() {
        return Err(FieldCurveError::TorsionUnavailable { n: n.clone() });
    }
    let cofactor = p1 / n;
    let mut rng = ChaCha20Rng::from_seed(seed_bytes(b"torq.torsion.basis.v1...", seed));

    let sample_order_n = |rng: &mut ChaCha20Rng| -> Point {
        loop {
            let raw = curve.random_point(f, rng);
            let cand = curve.mul_scalar(f, &cofactor, &raw);
            // Exact order N: [N/ℓ]·cand must be nonzero for every prime ℓ|N.
            let ord_ok = n_fact.primes().all(|ell| {
                !curve.mul_scalar(f, &(n / ell), &cand).is_infinity()
            });
            if ord_ok {
                return cand;
            }
        }
    };

    let p_basis = sample_order_n(&mut rng);
    loop {
        let q_basis = sample_order_n(&mut rng);
        let zeta = super::pairing::weil_pairing(f, curve, &p_basis, &q_basis, n, n_fact)?;
        // Independence: the pairing must have full order N.
        let full_order = n_fact.primes().all(|ell| {
            !f.pow(&zeta, &(n / ell)).is_one_el()
        });
        if full_order {
            return Ok((p_basis, q_basis));
        }
    }
}

fn seed_bytes(tag: &[u8; 24], seed: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..24].copy_from_slice(tag);
    out[24..].copy_from_slice(&seed.to_le_bytes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbertheory::factor;

    fn setup(p: u64) -> (Fp2Field, Curve, Factorization) {
        let f = Fp2Field::new(BigUint::from(p));
        let e0 = Curve { a: f.one(), b: f.zero() };
        let p1 = factor(&BigUint::from(p + 1), &[]).unwrap();
        (f, e0, p1)
    }

    #[test]
    fn group_law_basics() {
        let (f, e0, p1) = setup(59);
        let mut rng = ChaCha20Rng::from_seed([1u8; 32]);
        for _ in 0..10 {
            let p = e0.random_point(&f, &mut rng);
            let q = e0.random_point(&f, &mut rng);
            assert!(e0.is_on_curve(&f, &p));
            let sum = e0.add(&f, &p, &q);
            assert!(e0.is_on_curve(&f, &sum));
            // Commutativity.
            assert_eq!(sum, e0.add(&f, &q, &p));
            // Inverse.
            assert!(e0.add(&f, &p, &e0.negate(&f, &p)).is_infinity());
        }
        // [p+1] kills everything on a supersingular curve.
        let p = e0.random_point(&f, &mut rng);
        assert!(e0.mul_scalar(&f, &p1.value, &p).is_infinity());
    }

    #[test]
    fn supersingular_gate() {
        let (f, e0, p1) = setup(59);
        assert!(curve_order_check(&f, &e0, &p1));
        let (f2, _, p1_2) = setup(3119);
        let e0_2 = Curve { a: f2.one(), b: f2.zero() };
        assert!(curve_order_check(&f2, &e0_2, &p1_2));
        // Ordinary curve y² = x³ + 2x + 3 over p = 59 has a different order.
        let ordinary = Curve { a: f.from_u64(2), b: f.from_u64(3) };
        assert!(!curve_order_check(&f, &ordinary, &p1));
    }

    #[test]
    fn torsion_basis_small() {
        let (f, e0, p1) = setup(59);
        let n = BigUint::from(5u32);
        let nf = factor(&n, &[]).unwrap();
        let (p, q) = torsion_basis(&f, &e0, &n, &nf, &p1, 7).unwrap();
        assert_eq!(e0.point_order(&f, &p, &p1), n);
        assert_eq!(e0.point_order(&f, &q, &p1), n);
        // N = 1 gives the identity pair.
        let one = BigUint::one();
        let onef = Factorization::one();
        let (p0, q0) = torsion_basis(&f, &e0, &one, &onef, &p1, 7).unwrap();
        assert!(p0.is_infinity() && q0.is_infinity());
    }

    #[test]
    fn torsion_unavailable_when_n_does_not_divide() {
        let (f, e0, p1) = setup(59);
        let n = BigUint::from(7u32);
        let nf = factor(&n, &[]).unwrap();
        assert!(matches!(
            torsion_basis(&f, &e0, &n, &nf, &p1, 0),
            Err(FieldCurveError::TorsionUnavailable { .. })
        ));
    }

    #[test]
    fn deterministic_given_seed() {
        let (f, e0, p1) = setup(3119);
        let n = BigUint::from(65u32);
        let nf = factor(&n, &[]).unwrap();
        let b1 = torsion_basis(&f, &e0, &n, &nf, &p1, 42).unwrap();
        let b2 = torsion_basis(&f, &e0, &n, &nf, &p1, 42).unwrap();
        assert_eq!(b1, b2);
        let b3 = torsion_basis(&f, &e0, &n, &nf, &p1, 43).unwrap();
        assert_ne!(b1, b3);
    }
}
