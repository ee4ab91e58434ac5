//! Exact r-fold-form tensor calculus on pseudo-Riemannian jets, plus a
//! spectral potential solver on the flat torus.

pub mod error;
pub mod geometry;
pub mod identities;
pub mod jet;
pub mod operators;
pub mod tensor;
pub mod torus;

pub use error::{Error, Result};
