//! Arithmetic in F_p², supersingular short Weierstrass curves, Vélu
//! isogenies of smooth degree, Weil pairings, and torsion bases.

mod curve;
mod fp2;
mod isogeny;
mod pairing;

pub use curve::{curve_order_check, torsion_basis, Curve, Point};
pub use fp2::{Fp2, Fp2Field};
pub use isogeny::{
    isogeny_from_kernel_point, isogeny_from_subgroup, isomorphisms, IsogenyChain, Isomorphism,
    PrimeStep, Segment,
};
pub use pairing::{bidim_dlog, dlog_unity, weil_pairing};

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldCurveError {
    /// N does not divide p+1, so E[N] is not F_p²-rational here.
    #[error("torsion E[{n}] unavailable: {n} does not divide p+1")]
    TorsionUnavailable { n: BigUint },
    /// The kernel point does not have the promised exact order.
    #[error("kernel point does not have exact order {expected}")]
    BadKernelOrder { expected: BigUint },
    /// A prime factor of the isogeny degree exceeds the configured cap.
    #[error("prime isogeny degree exceeds the configured cap")]
    PrimeDegreeTooLarge,
    /// The point is not in the span of the basis (corrupted basis).
    #[error("point lies outside the span of the given torsion basis")]
    NotInSpan,
    /// Weil pairing evaluation degenerated for every offset tried.
    #[error("weil pairing evaluation degenerated for every offset")]
    PairingDegenerate,
    /// Could not recover the codomain curve by interpolation.
    #[error("velu codomain interpolation failed")]
    VeluInterpolationFailed,
    /// Could not pin the dual isogeny onto the original model.
    #[error("failed to pin dual isogeny onto the domain model")]
    DualPinFailed,
}
