//! Cryptanalysis workbench for torsion-point attacks on SIDH-style key
//! exchange, built to run end-to-end at desk scale.
//!
//! The crate is organized around the attack pipeline:
//!
//! * [`numbertheory`] — arbitrary-precision primitives: primality, factoring
//!   with verified hints, modular square roots, Cornacchia, smoothness,
//!   Gaussian integers.
//! * [`fieldcurve`] — arithmetic in F_p and F_p², supersingular curves in
//!   short Weierstrass form, Vélu isogenies, Weil pairings, torsion bases.
//! * [`endo`] — the special endomorphisms ι, π of y² = x³ + x and the action
//!   matrix of τ = φθφ̂ + [d] on the B-torsion.
//! * [`sidh`] — a toy SIDH protocol used as the attack target, plus a
//!   brute-force baseline attacker.
//! * [`attack`] — norm-equation precomputation, online isogeny recovery, and
//!   the meet-in-the-middle search.
//! * [`quat`] — quaternion algebra B_{p,∞}, orders, and maximal-order
//!   saturation for constructing insecure starting curves.
//! * [`forge`] — generators of insecure primes and Pythagorean (A, B) pairs.
//! * [`estimator`] — exact-rational feasibility and cost models with CSV
//!   emitters for the trade-off curves.

pub mod attack;
pub mod endo;
pub mod estimator;
pub mod exec;
pub mod fieldcurve;
pub mod forge;
pub mod jsonint;
pub mod numbertheory;
pub mod quat;
pub mod refdata;
pub mod sidh;
