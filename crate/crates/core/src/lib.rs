//! Zero-uncertainty states of a finite-dimensional system with a quantum
//! memory.
//!
//! Alice measures one of several orthonormal bases; Bob holds a memory and
//! tries to predict her outcome. A joint state is a zero-uncertainty state
//! (ZUS) when Bob can always succeed. This crate decides that property and
//! relates it to maximal entanglement through the transition graph of the
//! basis set. It also bounds the entanglement a ZUS needs and checks the
//! spectra of the associated verification operators.
//!
//! Modules, bottom-up:
//!
//! - [`numlin`]: dense complex linear algebra.
//! - [`bases`]: basis sets and their transition graphs.
//! - [`states`]: bipartite states and maximal-entanglement classification.
//! - [`zus`]: the zero-uncertainty decision and entanglement bounds.
//! - [`game`]: guessing games and entropic relations.
//! - [`verify`]: verification operators and steering assemblages.

pub mod bases;
mod error;
pub mod game;
pub mod numlin;
pub mod sample;
pub mod states;
mod tol;
pub mod verify;
pub mod zus;

pub use error::{Error, Result};
pub use tol::Tolerances;
