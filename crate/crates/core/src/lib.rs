//! Norm attainment and rank-two operators on finite-dimensional normed spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`spaces`]: finite-dimensional real normed spaces described by an `ℓ_p`
//!   exponent, a symmetric vertex list or a symmetric facet list, together with
//!   dual norms, support functionals, distances and two-dimensional quotients.
//! * [`operators`]: operator norms with exact attainment witnesses and the
//!   rotation normal form of operators into the Euclidean plane.
//! * [`mates`]: decision procedures for mates, i.e. functionals `g` with
//!   `‖f + t g‖ ≤ √(1 + t²)` for every real `t`.
//! * [`construct`]: the quotient/compression pipeline producing a norm
//!   attaining surjection onto an arbitrary two-dimensional space.
//! * [`gallery`]: column models on `ℓ₁` whose norm attainment is decided
//!   structurally rather than by truncation.
//! * [`lomonosov`]: maximum-modulus tools for the convex set spanned by the
//!   points `φ_z = (z, z², …)` of complex `c₀`.
//! * [`acceptance`]: the end-to-end property checks shared by the test suite
//!   and the `selftest` command.

pub mod acceptance;
pub mod config;
pub mod construct;
pub mod error;
pub mod gallery;
pub mod geometry2d;
pub mod linalg;
pub mod lomonosov;
pub(crate) mod lp;
pub mod mates;
pub mod operators;
pub mod report;
pub mod sample;
pub mod spaces;

pub use error::{Error, ErrorKind, Result};
pub use spaces::{Functional, Space};
