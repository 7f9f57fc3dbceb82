//! Simulation and verification toolkit for Lévy white noise and second-order
//! elliptic SPDEs on rectangular grids.
//!
//! The crate provides, in rough dependency order:
//!
//! - [`levy`]: characteristic triplets (a, γ, ν) and scalar integrals
//!   against the jump measure (Lévy exponent, tail moments, small-jump
//!   variance).
//! - [`grid`] / [`noise`]: lattice specs and exact-in-law per-cell noise
//!   increments with reproducible counter-based RNG streams.
//! - [`kernel`]: kernel envelopes G_R, distribution functions d_f, the
//!   h_R transform, and truncated L^p norms with certified tail remainders.
//! - [`admissibility`]: quadrature checks (with holds / fails /
//!   inconclusive verdicts) of the integrability conditions that make
//!   ⟨L̇, G(φ)⟩ a well-defined generalized process.
//! - [`agmon`]: reverse-Hölder diagnostics, the critical-radius maximum
//!   function, lattice Agmon distances and ball volumes.
//! - [`elliptic`]: finite-volume discretizations of
//!   −div(A∇u) + b·∇u + Vu, sparse solvers, and discrete Green columns.
//! - [`solutions`]: generalized-solution samples ⟨L̇, E(φ)⟩ and mild
//!   fields ⟨L̇, E(x, ·)⟩ with pathwise identity checks.
//! - [`stats`]: empirical characteristic functions, two-sample KS
//!   stationarity tests, Hill tail indices, and moment stabilization
//!   diagnostics.

pub mod grid;
pub mod levy;
pub mod noise;
pub mod quad;
pub mod special;
