//! Special endomorphisms of E₀: y² = x³ + x — the automorphism
//! ι: (x, y) ↦ (-x, i·y), Frobenius π: (x, y) ↦ (xᵖ, yᵖ), integer
//! combinations θ = a·ιπ + b·π + c·ι, and the 2×2 action matrix of
//! τ = φθφ̂ + [d] on the B-torsion computed from public data only.

use crate::fieldcurve::{bidim_dlog, Curve, FieldCurveError, Fp2Field, Point};
use crate::numbertheory::Factorization;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EndoError {
    /// ι is only defined on the fixed model y² = x³ + x.
    #[error("point is not on the curve y^2 = x^3 + x")]
    WrongCurve,
    #[error(transparent)]
    Curve(#[from] FieldCurveError),
}

/// Coefficients of θ = a·ιπ + b·π + c·ι (trace zero, degree pa² + pb² + c²).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCoefficients {
    #[serde(with = "crate::jsonint::bigint_dec")]
    pub a: BigInt,
    #[serde(with = "crate::jsonint::bigint_dec")]
    pub b: BigInt,
    #[serde(with = "crate::jsonint::bigint_dec")]
    pub c: BigInt,
}

impl ThetaCoefficients {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        ThetaCoefficients { a: a.into(), b: b.into(), c: c.into() }
    }

    /// deg θ = p·a² + p·b² + c².
    pub fn degree(&self, p: &BigUint) -> BigUint {
        let p = BigInt::from(p.clone());
        (&p * &self.a * &self.a + &p * &self.b * &self.b + &self.c * &self.c)
            .magnitude()
            .clone()
    }
}

fn check_e0(f: &Fp2Field, curve: &Curve) -> Result<(), EndoError> {
    if curve.a != f.one() || !curve.b.is_zero_el() {
        return Err(EndoError::WrongCurve);
    }
    Ok(())
}

/// ι(x, y) = (-x, i·y); ι² = [-1].
pub fn eval_iota(f: &Fp2Field, curve: &Curve, pt: &Point) -> Result<Point, EndoError> {
    check_e0(f, curve)?;
    Ok(match pt.coords() {
        None => Point::Infinity,
        Some((x, y)) => Point::Affine { x: f.neg(x), y: f.mul(&f.i(), y) },
    })
}

/// π(x, y) = (xᵖ, yᵖ); on E₀ over F_p², π² = [-p].
pub fn eval_frobenius(f: &Fp2Field, pt: &Point) -> Point {
    match pt.coords() {
        None => Point::Infinity,
        Some((x, y)) => Point::Affine { x: f.frobenius(x), y: f.frobenius(y) },
    }
}

/// [a]ιπ(P) + [b]π(P) + [c]ι(P).
pub fn eval_theta(
    f: &Fp2Field,
    curve: &Curve,
    coeffs: &ThetaCoefficients,
    pt: &Point,
) -> Result<Point, EndoError> {
    check_e0(f, curve)?;
    let pi = eval_frobenius(f, pt);
    let iota_pi = eval_iota(f, curve, &pi)?;
    let iota = eval_iota(f, curve, pt)?;
    let term = |k: &BigInt, q: &Point| -> Point {
        let scaled = curve.mul_scalar(f, k.magnitude(), q);
        if k.is_negative() {
            curve.negate(f, &scaled)
        } else {
            scaled
        }
    };
    let mut acc = term(&coeffs.a, &iota_pi);
    acc = curve.add(f, &acc, &term(&coeffs.b, &pi));
    acc = curve.add(f, &acc, &term(&coeffs.c, &iota));
    Ok(acc)
}

/// The matrix of τ = φθφ̂ + [d] on the basis (φ(P_B), φ(Q_B)), mod B.
///
/// Computed without any knowledge of φ beyond its degree A′: on E₀,
/// τ(φ(S)) = φ([A′]θ(S) + [d]S), so the matrix of τ in the image basis is
/// the matrix of [A′]θ + [d] in the basis (P_B, Q_B), found with two
/// two-dimensional discrete logs on E₀[B].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauMatrix {
    /// Column-major: τ(P) = m[0][0]·P + m[1][0]·Q, τ(Q) = m[0][1]·P + m[1][1]·Q.
    pub m: [[BigUint; 2]; 2],
    pub modulus: BigUint,
}

impl Serialize for TauMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let shadow = TauMatrixWire {
            m: [
                [self.m[0][0].to_string(), self.m[0][1].to_string()],
                [self.m[1][0].to_string(), self.m[1][1].to_string()],
            ],
            modulus: self.modulus.to_string(),
        };
        shadow.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TauMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let shadow = TauMatrixWire::deserialize(d)?;
        let parse = |s: &String| -> Result<BigUint, D::Error> {
            s.parse().map_err(|_| D::Error::custom("expected decimal integer"))
        };
        Ok(TauMatrix {
            m: [
                [parse(&shadow.m[0][0])?, parse(&shadow.m[0][1])?],
                [parse(&shadow.m[1][0])?, parse(&shadow.m[1][1])?],
            ],
            modulus: parse(&shadow.modulus)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TauMatrixWire {
    m: [[String; 2]; 2],
    modulus: String,
}

impl TauMatrix {
    pub fn apply(&self, u: &BigUint, v: &BigUint) -> (BigUint, BigUint) {
        let b = &self.modulus;
        (
            (&self.m[0][0] * u + &self.m[0][1] * v) % b,
            (&self.m[1][0] * u + &self.m[1][1] * v) % b,
        )
    }

    pub fn det(&self) -> BigUint {
        let b = &self.modulus;
        let main = &self.m[0][0] * &self.m[1][1] % b;
        let off = &self.m[0][1] * &self.m[1][0] % b;
        (main + b - off) % b
    }

    /// Rank over F_ℓ for a prime ℓ dividing the modulus.
    pub fn rank_mod(&self, ell: &BigUint) -> u32 {
        let all_zero = self.m.iter().flatten().all(|x| (x % ell).is_zero());
        if all_zero {
            0
        } else if (self.det() % ell).is_zero() {
            1
        } else {
            2
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn tau_matrix(
    f: &Fp2Field,
    e0: &Curve,
    basis: (&Point, &Point),
    theta: &ThetaCoefficients,
    a_prime: &BigUint,
    d: &BigUint,
    b: &BigUint,
    b_fact: &Factorization,
) -> Result<TauMatrix, EndoError> {
    let (p_b, q_b) = basis;
    let mut columns = Vec::with_capacity(2);
    for s in [p_b, q_b] {
        let theta_s = eval_theta(f, e0, theta, s)?;
        let v = e0.add(
            f,
            &e0.mul_scalar(f, a_prime, &theta_s),
            &e0.mul_scalar(f, d, s),
        );
        let (u, w) = bidim_dlog(f, e0, &v, p_b, q_b, b, b_fact)?;
        columns.push((u, w));
    }
    Ok(TauMatrix {
        m: [
            [columns[0].0.clone(), columns[1].0.clone()],
            [columns[0].1.clone(), columns[1].1.clone()],
        ],
        modulus: b.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcurve::torsion_basis;
    use crate::numbertheory::factor;
    use num_bigint::BigUint;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn setup(p: u64) -> (Fp2Field, Curve, Factorization) {
        let f = Fp2Field::new(BigUint::from(p));
        let e0 = Curve { a: f.one(), b: f.zero() };
        let p1 = factor(&BigUint::from(p + 1), &[]).unwrap();
        (f, e0, p1)
    }

    #[test]
    fn iota_squares_to_minus_one() {
        let (f, e0, _) = setup(59);
        assert!(eval_iota(&f, &e0, &Point::Infinity).unwrap().is_infinity());
        let mut rng = ChaCha20Rng::from_seed([2u8; 32]);
        for _ in 0..5 {
            let p = e0.random_point(&f, &mut rng);
            let twice = eval_iota(&f, &e0, &eval_iota(&f, &e0, &p).unwrap()).unwrap();
            assert_eq!(twice, e0.negate(&f, &p));
            let q = e0.random_point(&f, &mut rng);
            let lhs = eval_iota(&f, &e0, &e0.add(&f, &p, &q)).unwrap();
            let rhs = e0.add(
                &f,
                &eval_iota(&f, &e0, &p).unwrap(),
                &eval_iota(&f, &e0, &q).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
        let wrong = Curve { a: f.from_u64(2), b: f.one() };
        assert!(matches!(
            eval_iota(&f, &wrong, &Point::Infinity),
            Err(EndoError::WrongCurve)
        ));
    }

    #[test]
    fn frobenius_properties() {
        let (f, e0, _) = setup(59);
        let mut rng = ChaCha20Rng::from_seed([4u8; 32]);
        let p_scalar = BigUint::from(59u32);
        for _ in 0..5 {
            let p = e0.random_point(&f, &mut rng);
            // π² = [-p] on E0.
            let pi2 = eval_frobenius(&f, &eval_frobenius(&f, &p));
            let minus_p = e0.negate(&f, &e0.mul_scalar(&f, &p_scalar, &p));
            assert_eq!(pi2, minus_p);
            // Galois equivariance.
            let q = e0.random_point(&f, &mut rng);
            assert_eq!(
                eval_frobenius(&f, &e0.add(&f, &p, &q)),
                e0.add(&f, &eval_frobenius(&f, &p), &eval_frobenius(&f, &q))
            );
        }
        // F_p-rational points are fixed.
        let mut rng2 = ChaCha20Rng::from_seed([5u8; 32]);
        loop {
            let pt = e0.random_point(&f, &mut rng2);
            if let Some((x, y)) = pt.coords() {
                if x.c1.is_zero() && y.c1.is_zero() {
                    assert_eq!(eval_frobenius(&f, &pt), pt);
                    break;
                }
            }
        }
    }

    #[test]
    fn iota_pi_anticommute() {
        let (f, e0, _) = setup(59);
        let mut rng = ChaCha20Rng::from_seed([6u8; 32]);
        for _ in 0..5 {
            let p = e0.random_point(&f, &mut rng);
            let lhs = eval_iota(&f, &e0, &eval_frobenius(&f, &p)).unwrap();
            let rhs = e0.negate(&f, &eval_frobenius(&f, &eval_iota(&f, &e0, &p).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn theta_squares_to_minus_degree() {
        let (f, e0, _) = setup(59);
        let mut rng = ChaCha20Rng::from_seed([8u8; 32]);
        let coeffs = ThetaCoefficients::new(1, 1, 2);
        let deg = coeffs.degree(&f.p);
        assert_eq!(deg, BigUint::from(59u32 + 59 + 4));
        for _ in 0..5 {
            let p = e0.random_point(&f, &mut rng);
            let theta_p = eval_theta(&f, &e0, &coeffs, &p).unwrap();
            let theta2 = eval_theta(&f, &e0, &coeffs, &theta_p).unwrap();
            let expected = e0.negate(&f, &e0.mul_scalar(&f, &deg, &p));
            assert_eq!(theta2, expected, "θ² = [-deg θ]");
        }
        let p = e0.random_point(&f, &mut rng);
        let iota_only = ThetaCoefficients::new(0, 0, 1);
        assert_eq!(
            eval_theta(&f, &e0, &iota_only, &p).unwrap(),
            eval_iota(&f, &e0, &p).unwrap()
        );
        let zero = ThetaCoefficients::new(0, 0, 0);
        assert!(eval_theta(&f, &e0, &zero, &p).unwrap().is_infinity());
    }

    #[test]
    fn tau_matrix_identity_and_rank() {
        let (f, e0, p1) = setup(59);
        let b = BigUint::from(5u32);
        let bf = factor(&b, &[]).unwrap();
        let (pb, qb) = torsion_basis(&f, &e0, &b, &bf, &p1, 1).unwrap();

        // θ = 0, d = 1 → identity matrix.
        let zero = ThetaCoefficients::new(0, 0, 0);
        let m = tau_matrix(
            &f,
            &e0,
            (&pb, &qb),
            &zero,
            &BigUint::from(3u32),
            &BigUint::one(),
            &b,
            &bf,
        )
        .unwrap();
        assert_eq!(m.m[0][0], BigUint::one());
        assert_eq!(m.m[1][1], BigUint::one());
        assert!(m.m[0][1].is_zero() && m.m[1][0].is_zero());

        // The toy solution (a,b,c,d,e) = (0,0,1,4,1) at A' = 3, B = 5:
        // deg τ = 25 = B²·1, so ker τ ∩ E[5] has order 5 and the matrix is
        // singular of rank 1.
        let iota_only = ThetaCoefficients::new(0, 0, 1);
        let m = tau_matrix(
            &f,
            &e0,
            (&pb, &qb),
            &iota_only,
            &BigUint::from(3u32),
            &BigUint::from(4u32),
            &b,
            &bf,
        )
        .unwrap();
        assert_eq!(m.rank_mod(&b), 1);
        assert!(m.det().is_zero());
    }

    #[test]
    fn tau_matrix_swap_basis_conjugates() {
        let (f, e0, p1) = setup(59);
        let b = BigUint::from(5u32);
        let bf = factor(&b, &[]).unwrap();
        let (pb, qb) = torsion_basis(&f, &e0, &b, &bf, &p1, 1).unwrap();
        let coeffs = ThetaCoefficients::new(0, 0, 1);
        let a_prime = BigUint::from(3u32);
        let d = BigUint::from(4u32);
        let m = tau_matrix(&f, &e0, (&pb, &qb), &coeffs, &a_prime, &d, &b, &bf).unwrap();
        let m_swapped = tau_matrix(&f, &e0, (&qb, &pb), &coeffs, &a_prime, &d, &b, &bf).unwrap();
        // Swapping the basis conjugates by the swap matrix.
        assert_eq!(m_swapped.m[0][0], m.m[1][1]);
        assert_eq!(m_swapped.m[1][1], m.m[0][0]);
        assert_eq!(m_swapped.m[0][1], m.m[1][0]);
        assert_eq!(m_swapped.m[1][0], m.m[0][1]);
    }
}
