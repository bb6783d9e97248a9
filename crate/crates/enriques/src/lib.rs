//! Exact computer algebra for the modular and Jacobi-form generating series,
//! lattice invariants and enumerative invariants (Gromov-Witten, stable pairs,
//! Donaldson-Thomas, Vafa-Witten) of the Enriques surface and the Enriques
//! Calabi-Yau threefold.
//!
//! All arithmetic is exact over the rationals. Series carry an explicit
//! truncation and never silently extend their precision.

pub mod error;
pub mod hecke;
pub mod invariants;
pub mod lattice;
pub mod rational;
pub mod modular;
pub mod series;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
