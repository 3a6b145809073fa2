//! Jets of finitely presented local and graded algebras in exact arithmetic.
//!
//! The crate builds the Artinian quotients `R/m^n` of a presented ring,
//! decides isomorphism of such quotients with verifiable witnesses, turns
//! order-by-order verdicts into certified intervals for the deformation
//! distance `d(R, S) = inf { 2^-n : R/m^n ~ S/m^n }`, and evaluates Hilbert,
//! Hilbert-Samuel, slope and Betti invariants.

pub mod error;
pub mod exactcore;
pub mod poly;
pub mod presentation;
pub mod artin;
pub mod iso;
pub mod metric;
pub mod hilbert;
pub mod slopes;
pub mod resolution;

pub use error::{Error, Result};
